#pragma once

#include <filesystem>
#include <string>

#include "mccub/cubature.hpp"
#include "mccub/experiment.hpp"
#include "mccub/moments.hpp"

namespace mccub {

// Shortest decimal that round-trips binary64 ("%.17g").
std::string format_double(double v);

// Cubature file: a "mccub cubature 1" header, key-value metadata lines
// (dimension, basis descriptor, provenance, residual, seed/stream), then n
// lines of s node coordinates followed by the weight, all at 17 significant
// digits. read_cubature validates every structural invariant on load.
std::string serialize_cubature(const Cubature& cub);
void write_cubature(const std::filesystem::path& path, const Cubature& cub);
Cubature read_cubature(const std::filesystem::path& path);

void write_moments(const std::filesystem::path& path, const MomentVector& mv);

std::string serialize_record(const ExperimentRecord& rec);
void write_record(const std::filesystem::path& path, const ExperimentRecord& rec);

} // namespace mccub
