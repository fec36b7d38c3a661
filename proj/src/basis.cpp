#include "mccub/basis.hpp"

#include <numeric>
#include <stdexcept>

namespace mccub {

int MultiIndex::total_degree() const {
    return std::accumulate(exponents.begin(), exponents.end(), 0);
}

std::uint64_t basis_dim(int s, int m) {
    if (s < 1) throw std::invalid_argument("basis_dim: s must be >= 1");
    if (m < 0) throw std::invalid_argument("basis_dim: m must be >= 0");
    // C(s+m, min(s,m)) with overflow-checked multiply
    const std::uint64_t n = static_cast<std::uint64_t>(s) + static_cast<std::uint64_t>(m);
    const std::uint64_t k = std::min<std::uint64_t>(s, m);
    std::uint64_t c = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        const std::uint64_t num = n - k + i;
        // c * num / i is always integral when done in this order
        if (c > UINT64_MAX / num) throw std::overflow_error("basis_dim: overflow");
        c = c * num / i;
    }
    return c;
}

double pow_int(double x, int e) {
    double r = 1.0;
    double base = x;
    for (int n = e; n > 0; n >>= 1) {
        if (n & 1) r *= base;
        base *= base;
    }
    return r;
}

namespace {

void enumerate_degree(int s, int degree, std::vector<int>& cur,
                      std::vector<MultiIndex>& out) {
    if (static_cast<int>(cur.size()) == s - 1) {
        cur.push_back(degree);
        out.push_back(MultiIndex{cur});
        cur.pop_back();
        return;
    }
    // descending lex: larger leading exponent first
    for (int e = degree; e >= 0; --e) {
        cur.push_back(e);
        enumerate_degree(s, degree - e, cur, out);
        cur.pop_back();
    }
}

} // namespace

TestFunctionBasis TestFunctionBasis::monomials(int input_dim, int max_degree,
                                               std::uint64_t size_cap) {
    if (input_dim < 1) throw std::invalid_argument("monomials: input_dim must be >= 1");
    if (max_degree < 0) throw std::invalid_argument("monomials: max_degree must be >= 0");
    const std::uint64_t d = basis_dim(input_dim, max_degree);
    if (d > size_cap) throw std::length_error("monomials: basis size exceeds cap");

    TestFunctionBasis b;
    b.kind_ = BasisKind::monomial;
    b.input_dim_ = input_dim;
    b.max_degree_ = max_degree;
    b.members_.reserve(d);
    std::vector<int> cur;
    for (int t = 0; t <= max_degree; ++t)
        enumerate_degree(input_dim, t, cur, b.members_);
    b.size_ = b.members_.size();
    return b;
}

TestFunctionBasis TestFunctionBasis::tabulated(int input_dim, std::vector<std::string> names) {
    if (input_dim < 1) throw std::invalid_argument("tabulated: input_dim must be >= 1");
    if (names.empty()) throw std::invalid_argument("tabulated: empty member list");
    TestFunctionBasis b;
    b.kind_ = BasisKind::tabulated;
    b.input_dim_ = input_dim;
    b.max_degree_ = -1;
    b.names_ = std::move(names);
    b.size_ = b.names_.size();
    return b;
}

void TestFunctionBasis::evaluate(std::span<const double> point, std::span<double> out) const {
    if (kind_ != BasisKind::monomial)
        throw std::logic_error("evaluate: tabulated bases have no pointwise evaluation");
    if (static_cast<int>(point.size()) != input_dim_)
        throw std::invalid_argument("evaluate: point dimension mismatch");
    if (out.size() != size_) throw std::invalid_argument("evaluate: output length mismatch");

    // power table per coordinate, then one product per member
    const int s = input_dim_, m = max_degree_;
    std::vector<double> powers(static_cast<std::size_t>(s) * (m + 1));
    for (int i = 0; i < s; ++i) {
        powers[static_cast<std::size_t>(i) * (m + 1)] = 1.0;
        for (int e = 1; e <= m; ++e)
            powers[static_cast<std::size_t>(i) * (m + 1) + e] =
                powers[static_cast<std::size_t>(i) * (m + 1) + e - 1] * point[i];
    }
    for (std::size_t k = 0; k < size_; ++k) {
        double v = 1.0;
        const auto& exp = members_[k].exponents;
        for (int i = 0; i < s; ++i)
            v *= powers[static_cast<std::size_t>(i) * (m + 1) + exp[i]];
        out[k] = v;
    }
}

std::vector<double> TestFunctionBasis::evaluate(std::span<const double> point) const {
    std::vector<double> out(size_);
    evaluate(point, out);
    return out;
}

double TestFunctionBasis::evaluate_member(std::size_t i, std::span<const double> point) const {
    if (kind_ != BasisKind::monomial)
        throw std::logic_error("evaluate_member: tabulated bases have no pointwise evaluation");
    if (static_cast<int>(point.size()) != input_dim_)
        throw std::invalid_argument("evaluate_member: point dimension mismatch");
    double v = 1.0;
    const auto& exp = members_.at(i).exponents;
    for (int c = 0; c < input_dim_; ++c) v *= pow_int(point[c], exp[c]);
    return v;
}

namespace {

void lift_columns(const TestFunctionBasis& basis, const Matrix& points, Matrix& out,
                  std::size_t begin, std::size_t end) {
    const std::size_t d = basis.size();
    std::vector<double> col(d);
    for (std::size_t j = begin; j < end; ++j) {
        basis.evaluate(points.row(j), col);
        for (std::size_t i = 0; i < d; ++i) out(i, j) = col[i];
    }
}

} // namespace

Matrix lift_matrix_serial(const TestFunctionBasis& basis, const Matrix& points) {
    if (static_cast<int>(points.cols()) != basis.input_dim())
        throw std::invalid_argument("lift_matrix: point dimension mismatch");
    Matrix out(basis.size(), points.rows());
    lift_columns(basis, points, out, 0, points.rows());
    return out;
}

Matrix lift_matrix(const TestFunctionBasis& basis, const Matrix& points) {
    if (static_cast<int>(points.cols()) != basis.input_dim())
        throw std::invalid_argument("lift_matrix: point dimension mismatch");
    Matrix out(basis.size(), points.rows());
    const std::int64_t n = static_cast<std::int64_t>(points.rows());
#pragma omp parallel
    {
        std::vector<double> col(basis.size());
#pragma omp for schedule(static)
        for (std::int64_t j = 0; j < n; ++j) {
            basis.evaluate(points.row(static_cast<std::size_t>(j)), col);
            for (std::size_t i = 0; i < basis.size(); ++i)
                out(i, static_cast<std::size_t>(j)) = col[i];
        }
    }
    return out;
}

} // namespace mccub
