#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "mccub/basis.hpp"
#include "mccub/sampler.hpp"

namespace mccub {

enum class MomentProvenance { analytic, user_supplied, empirical };

// Target vector b = E[phi(X)]. First component is exactly 1 in every case;
// empirical and loaded vectors are snapped so the LP's normalization row is
// exact.
struct MomentVector {
    std::vector<double> values;
    MomentProvenance provenance = MomentProvenance::analytic;
    std::size_t sample_count = 0; // empirical only
    std::uint64_t seed = 0;       // empirical only
    std::uint64_t stream = 0;

    std::size_t size() const { return values.size(); }
};

// E[x^alpha] for X uniform on [0,1)^s: product of 1/(alpha_i + 1).
double uniform_cube_moment(const MultiIndex& alpha);

// Exact moments of a monomial basis under the uniform measure on the cube.
MomentVector analytic_moment_vector(const TestFunctionBasis& basis);

// (1/N) sum phi(X_i); first component computed as exactly 1.
MomentVector empirical_moments(const SampleBatch& samples, const TestFunctionBasis& basis);

// Same but over a pre-lifted d x N matrix (tabulated bases).
MomentVector empirical_moments_lifted(const Matrix& lifted);

// Plain text, one decimal per line, '#' comments allowed. Must have exactly
// basis.size() entries and a first entry within 1e-9 of 1.
MomentVector load_moment_vector(const std::filesystem::path& path,
                                const TestFunctionBasis& basis);

} // namespace mccub
