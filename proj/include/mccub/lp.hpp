#pragma once

#include <cstddef>
#include <vector>

#include "mccub/matrix.hpp"

namespace mccub {

// Feasibility problem A z = b, z >= 0 (the LP with trivial objective).
// Column j of A is the lifted point phi(x_j).
struct LpInstance {
    Matrix a;              // d rows x n columns
    std::vector<double> b; // length d
    double tol = 1e-9;     // relative feasibility tolerance
};

struct LpOptions {
    double pivot_floor = 1e-11; // degeneracy floor for eligible pivots
    double prune = 1e-12;       // weights below this are dropped
    long max_iterations = 0;    // 0 -> 50 * (n + d)
    int bland_after = 0;        // consecutive degenerate pivots; 0 -> 10 * d
};

enum class LpStatus { feasible, infeasible, numerically_unstable };

// Vertex of {z >= 0 : A z = b} or infeasibility evidence. On feasible,
// support indexes at most d columns with linearly independent A-columns and
// strictly positive weights; residual is the max-norm of A z - b. On
// infeasible, residual holds the Phase-I optimum (bounded away from 0).
struct BfsResult {
    LpStatus status = LpStatus::numerically_unstable;
    std::vector<std::size_t> support;
    std::vector<double> weights;
    double residual = 0.0;
    long iterations = 0;
};

// Phase-I simplex with one artificial variable per row. Dantzig pivoting,
// switching to Bland's rule after a run of degenerate pivots. Artificials
// left basic at zero are pivoted out; rows with no legal pivot are redundant
// (rank-deficient A) and dropped from the basis extraction.
BfsResult find_bfs(const LpInstance& instance, const LpOptions& options = {});

// Cheaper hull check: stops as soon as the Phase-I objective reaches the
// feasibility threshold, without extracting a clean vertex.
BfsResult membership(const LpInstance& instance, const LpOptions& options = {});

// true iff find_bfs would report feasible. numerically_unstable maps to
// false; callers that need to distinguish use membership().
bool membership_test(const LpInstance& instance, const LpOptions& options = {});

} // namespace mccub
