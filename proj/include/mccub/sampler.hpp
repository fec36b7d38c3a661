#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "mccub/matrix.hpp"
#include "mccub/rng.hpp"

namespace mccub {

enum class SampleSource { uniform_cube, gaussian, file };

// N x s batch of i.i.d. points. Built-in sources are counter-based: entry
// (i, j) is produced at counter i*s + j (Gaussian uses two counters per
// entry), so a longer batch from the same (seed, stream) extends a shorter
// one exactly.
struct SampleBatch {
    Matrix points;
    SampleSource source = SampleSource::file;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::string path;

    std::size_t count() const { return points.rows(); }
    int dim() const { return static_cast<int>(points.cols()); }
};

std::uint64_t sampler_key(std::uint64_t seed, std::uint64_t stream);

SampleBatch sample_uniform_cube(int s, std::size_t n, std::uint64_t seed,
                                std::uint64_t stream);
SampleBatch sample_gaussian(int s, std::size_t n, std::uint64_t seed,
                            std::uint64_t stream);

// CSV, one point per line, s comma-separated decimals. '#' comments and
// blank lines are skipped. Malformed lines are reported with their number.
SampleBatch load_samples(const std::filesystem::path& path, int s);

} // namespace mccub
