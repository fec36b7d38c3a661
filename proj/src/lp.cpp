#include "mccub/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mccub {

namespace {

class PhaseOneSolver {
public:
    PhaseOneSolver(const LpInstance& inst, const LpOptions& opt)
        : inst_(inst), opt_(opt), d_(inst.a.rows()), n_(inst.a.cols()) {
        validate();
        scale_ = 1.0;
        for (double v : inst_.b) scale_ = std::max(scale_, std::abs(v));
        feas_tol_ = inst_.tol * scale_;

        // one artificial per row; flip rows so rhs >= 0 and the artificial
        // identity basis is feasible
        tableau_ = Matrix(d_, n_ + d_);
        rhs_.resize(d_);
        basis_.resize(d_);
        double amax = 1.0;
        for (std::size_t i = 0; i < d_; ++i) {
            const double sgn = inst_.b[i] < 0.0 ? -1.0 : 1.0;
            for (std::size_t j = 0; j < n_; ++j) {
                tableau_(i, j) = sgn * inst_.a(i, j);
                amax = std::max(amax, std::abs(tableau_(i, j)));
            }
            tableau_(i, n_ + i) = 1.0;
            rhs_[i] = std::abs(inst_.b[i]);
            basis_[i] = n_ + i;
        }
        cost_eps_ = 1e-9 * amax;

        // reduced costs for minimizing the artificial sum
        cost_.assign(n_ + d_, 0.0);
        for (std::size_t j = 0; j < n_; ++j) {
            double c = 0.0;
            for (std::size_t i = 0; i < d_; ++i) c -= tableau_(i, j);
            cost_[j] = c;
        }

        is_basic_.assign(n_ + d_, false);
        for (auto b : basis_) is_basic_[b] = true;
        disabled_.assign(n_, false);

        max_iters_ = opt_.max_iterations > 0
                         ? opt_.max_iterations
                         : 50 * static_cast<long>(n_ + d_);
        bland_after_ = opt_.bland_after > 0 ? opt_.bland_after
                                            : 10 * static_cast<int>(d_);
    }

    BfsResult run(bool extract) {
        BfsResult result;
        const bool optimal = iterate(extract ? -1.0 : feas_tol_, result);
        result.iterations = iterations_;
        if (!optimal) { // iteration cap
            result.status = LpStatus::numerically_unstable;
            result.residual = objective();
            return result;
        }
        const double obj = objective();
        if (obj > feas_tol_) {
            result.status = LpStatus::infeasible;
            result.residual = obj;
            return result;
        }
        if (!extract) {
            result.status = LpStatus::feasible;
            result.residual = obj;
            return result;
        }
        extract_vertex(result);
        return result;
    }

private:
    void validate() const {
        if (d_ < 1 || n_ < 1) throw std::invalid_argument("lp: empty instance");
        if (inst_.b.size() != d_) throw std::invalid_argument("lp: dimension mismatch");
        for (std::size_t i = 0; i < d_; ++i) {
            if (!std::isfinite(inst_.b[i])) throw std::invalid_argument("lp: non-finite b");
            for (std::size_t j = 0; j < n_; ++j)
                if (!std::isfinite(inst_.a(i, j)))
                    throw std::invalid_argument("lp: non-finite A");
        }
    }

    double objective() const {
        double obj = 0.0;
        for (std::size_t i = 0; i < d_; ++i)
            if (basis_[i] >= n_) obj += std::max(rhs_[i], 0.0);
        return obj;
    }

    // Returns false if the iteration cap was hit. early_stop < 0 disables
    // the membership shortcut.
    bool iterate(double early_stop, BfsResult&) {
        bool bland = false;
        int degenerate_run = 0;
        while (true) {
            if (early_stop >= 0.0 && objective() <= early_stop) return true;

            const std::size_t enter = pick_entering(bland);
            if (enter == kNone) return true; // optimal

            const std::size_t leave = pick_leaving(enter, bland);
            if (leave == kNone) {
                // phase-I objective is bounded below; no positive entry is
                // a numerical artifact, retire the column
                disabled_[enter] = true;
                continue;
            }

            if (++iterations_ > max_iters_) return false;

            const bool degenerate = rhs_[leave] <= 1e-13 * scale_;
            degenerate_run = degenerate ? degenerate_run + 1 : 0;
            if (degenerate_run >= bland_after_) bland = true;

            pivot(leave, enter);
        }
    }

    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    std::size_t pick_entering(bool bland) const {
        std::size_t best = kNone;
        double best_cost = -cost_eps_;
        for (std::size_t j = 0; j < n_; ++j) {
            if (is_basic_[j] || disabled_[j]) continue;
            if (cost_[j] >= -cost_eps_) continue;
            if (bland) return j;
            if (cost_[j] < best_cost) {
                best_cost = cost_[j];
                best = j;
            }
        }
        return best;
    }

    std::size_t pick_leaving(std::size_t enter, bool bland) const {
        std::size_t best = kNone;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < d_; ++i) {
            const double t = tableau_(i, enter);
            if (t <= opt_.pivot_floor) continue;
            const double ratio = std::max(rhs_[i], 0.0) / t;
            if (best == kNone || ratio < best_ratio - 1e-15 * (1.0 + best_ratio)) {
                best_ratio = ratio;
                best = i;
            } else if (ratio <= best_ratio + 1e-15 * (1.0 + best_ratio)) {
                // tie: Bland wants the smallest basis index; otherwise
                // prefer kicking out artificials, then the larger pivot
                if (bland) {
                    if (basis_[i] < basis_[best]) best = i;
                } else if ((basis_[i] >= n_) != (basis_[best] >= n_)) {
                    if (basis_[i] >= n_) best = i;
                } else if (t > tableau_(best, enter)) {
                    best = i;
                }
            }
        }
        return best;
    }

    void pivot(std::size_t row, std::size_t col) {
        const double p = tableau_(row, col);
        for (std::size_t j = 0; j < n_ + d_; ++j) tableau_(row, j) /= p;
        rhs_[row] /= p;
        tableau_(row, col) = 1.0;

        for (std::size_t i = 0; i < d_; ++i) {
            if (i == row) continue;
            const double f = tableau_(i, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n_ + d_; ++j)
                tableau_(i, j) -= f * tableau_(row, j);
            tableau_(i, col) = 0.0;
            rhs_[i] -= f * rhs_[row];
            if (rhs_[i] < 0.0 && rhs_[i] > -1e-12 * scale_) rhs_[i] = 0.0;
        }
        const double cf = cost_[col];
        if (cf != 0.0) {
            for (std::size_t j = 0; j < n_ + d_; ++j) cost_[j] -= cf * tableau_(row, j);
            cost_[col] = 0.0;
        }

        is_basic_[basis_[row]] = false;
        basis_[row] = col;
        is_basic_[col] = true;
    }

    void extract_vertex(BfsResult& result) {
        // drive artificials out of the basis; rows with no legal pivot are
        // redundant (A is rank-deficient there)
        std::vector<bool> redundant(d_, false);
        for (std::size_t i = 0; i < d_; ++i) {
            if (basis_[i] < n_) continue;
            std::size_t col = kNone;
            for (std::size_t j = 0; j < n_; ++j) {
                if (is_basic_[j]) continue;
                if (std::abs(tableau_(i, j)) > opt_.pivot_floor) {
                    col = j;
                    break;
                }
            }
            if (col == kNone) {
                redundant[i] = true;
                continue;
            }
            pivot(i, col);
        }

        std::vector<double> z(n_, 0.0);
        for (std::size_t i = 0; i < d_; ++i) {
            if (redundant[i] || basis_[i] >= n_) continue;
            z[basis_[i]] = std::max(rhs_[i], 0.0);
        }
        for (std::size_t j = 0; j < n_; ++j) {
            if (z[j] > opt_.prune) {
                result.support.push_back(j);
                result.weights.push_back(z[j]);
            }
        }
        result.residual =
            residual_max_norm(inst_.a, result.support, result.weights, inst_.b);
        result.status = result.residual <= feas_tol_ ? LpStatus::feasible
                                                     : LpStatus::numerically_unstable;
    }

    const LpInstance& inst_;
    const LpOptions& opt_;
    std::size_t d_, n_;
    double scale_ = 1.0, feas_tol_ = 0.0, cost_eps_ = 1e-9;
    Matrix tableau_;
    std::vector<double> rhs_, cost_;
    std::vector<std::size_t> basis_;
    std::vector<bool> is_basic_;
    std::vector<bool> disabled_;
    long iterations_ = 0, max_iters_ = 0;
    int bland_after_ = 0;
};

} // namespace

BfsResult find_bfs(const LpInstance& instance, const LpOptions& options) {
    return PhaseOneSolver(instance, options).run(true);
}

BfsResult membership(const LpInstance& instance, const LpOptions& options) {
    return PhaseOneSolver(instance, options).run(false);
}

bool membership_test(const LpInstance& instance, const LpOptions& options) {
    return membership(instance, options).status == LpStatus::feasible;
}

} // namespace mccub
