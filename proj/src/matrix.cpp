#include "mccub/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace mccub {

std::size_t matrix_rank(Matrix a, double tol) {
    const std::size_t m = a.rows(), n = a.cols();
    double scale = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            scale = std::max(scale, std::abs(a(i, j)));
    if (scale == 0.0) return 0;
    const double thresh = tol * scale;

    std::size_t rank = 0;
    std::size_t col = 0;
    for (; col < n && rank < m; ++col) {
        std::size_t piv = rank;
        for (std::size_t i = rank + 1; i < m; ++i)
            if (std::abs(a(i, col)) > std::abs(a(piv, col))) piv = i;
        if (std::abs(a(piv, col)) <= thresh) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(rank, j));
        for (std::size_t i = rank + 1; i < m; ++i) {
            const double f = a(i, col) / a(rank, col);
            for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(rank, j);
        }
        ++rank;
    }
    return rank;
}

double residual_max_norm(const Matrix& a, std::span<const std::size_t> support,
                         std::span<const double> weights, std::span<const double> b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < support.size(); ++k)
            acc += weights[k] * a(i, support[k]);
        worst = std::max(worst, std::abs(acc - b[i]));
    }
    return worst;
}

} // namespace mccub
