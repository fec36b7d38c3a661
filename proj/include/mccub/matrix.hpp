#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mccub {

// Dense row-major matrix of doubles. Small helper, not a linear algebra
// library; the solver works on its own tableau storage.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, value) {}

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }
    std::span<double> row(std::size_t i) {
        return {data_.data() + i * cols_, cols_};
    }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

// Rank via Gaussian elimination with partial pivoting. tol is relative to
// the largest absolute entry.
std::size_t matrix_rank(Matrix a, double tol = 1e-10);

// max-norm of A*x - b, with x given as (support, weights) pairs over columns.
double residual_max_norm(const Matrix& a, std::span<const std::size_t> support,
                         std::span<const double> weights, std::span<const double> b);

} // namespace mccub
