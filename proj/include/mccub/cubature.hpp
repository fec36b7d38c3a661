#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "mccub/basis.hpp"
#include "mccub/lp.hpp"
#include "mccub/moments.hpp"
#include "mccub/sampler.hpp"

namespace mccub {

struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PoolExhaustedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnstableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CubatureProvenance { exact_construction, subsampled, product };

// Nodes x_1..x_n with positive weights summing to 1; reproduces the target
// moments of its basis within the recorded residual.
struct Cubature {
    Matrix nodes; // n x s
    std::vector<double> weights;
    TestFunctionBasis basis;
    std::vector<double> target; // empty for provenance product
    double residual = 0.0;
    CubatureProvenance provenance = CubatureProvenance::subsampled;
    std::size_t pool_used = 0; // exact_construction
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    int product_fold = 1;

    std::size_t node_count() const { return nodes.rows(); }
    int dim() const { return static_cast<int>(nodes.cols()); }

    // Moments of the cubature itself: sum_j w_j phi_i(x_j).
    std::vector<double> moments(const TestFunctionBasis& b) const;
};

struct ConstructionConfig {
    std::size_t initial_pool = 0; // 0 -> basis size d
    double growth_factor = 2.0;
    std::size_t max_pool = 1'000'000;
    double lp_tolerance = 1e-9;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    SampleSource sampler = SampleSource::uniform_cube;
};

// Solves the exact cubature problem: grows an i.i.d. candidate pool
// (doubling, reusing earlier draws via the stream prefix property) until the
// target enters the convex hull of the lifted samples, then extracts a
// <= d-node rule. Throws PoolExhaustedError / UnstableError.
Cubature construct_exact(const TestFunctionBasis& basis, const MomentVector& target,
                         const ConstructionConfig& config);

// Caratheodory-Tchakaloff subsampling over a fixed point set: feasible iff
// the target lies in the convex hull of the lifted points. Throws
// InfeasibleError / UnstableError.
Cubature subsample(const Matrix& points, const TestFunctionBasis& basis,
                   const MomentVector& target, double tol = 1e-9);

// Same with caller-supplied lifted values (tabulated bases).
Cubature subsample_lifted(const Matrix& points, const Matrix& lifted,
                          const TestFunctionBasis& basis, const MomentVector& target,
                          double tol = 1e-9);

// Compresses the empirical measure of a sample batch: always feasible since
// the target is a convex combination of the lifted samples.
Cubature compress_empirical(const SampleBatch& samples, const TestFunctionBasis& basis,
                            double tol = 1e-9);

// k-fold tensor product: n^k concatenated nodes with product weights. The
// target is left unset; pair with a product-space basis before verifying or
// reducing. Guarded by a node-count cap.
Cubature product_cubature(const Cubature& base, int k, std::size_t max_nodes = 1'000'000);

struct VerificationReport {
    std::vector<double> component_residual;
    double max_residual = 0.0;
    bool weights_positive = false;
    double weight_sum = 0.0;
    bool normalized = false; // |sum w - 1| <= 1e-12
    std::size_t node_count = 0;
    std::size_t basis_size = 0;
    std::uint64_t fisher_lower = 0; // dim P_{floor(m/2)}, monomial bases
    bool within_tchakaloff = false; // n <= d
    bool within_fisher = false;     // n >= fisher_lower

    bool pass(double tol) const {
        return weights_positive && normalized && max_residual <= tol && within_tchakaloff;
    }
};

// Reports, never throws (beyond dimension mismatches).
VerificationReport verify(const Cubature& cub, const TestFunctionBasis& basis,
                          const MomentVector& target);

// sum_j w_j values[j] with values[j] = f(x_j) supplied by the caller.
double integrate(const Cubature& cub, std::span<const double> values);

} // namespace mccub
