#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mccub/matrix.hpp"

namespace mccub {

// Exponent vector of one monomial test function.
struct MultiIndex {
    std::vector<int> exponents;

    int total_degree() const;
    bool operator==(const MultiIndex&) const = default;
};

// C(s+m, s), the number of s-variate monomials of total degree <= m.
// Throws std::overflow_error if the count does not fit in uint64.
std::uint64_t basis_dim(int s, int m);

// x^e by squaring; exact for e = 0 regardless of x.
double pow_int(double x, int e);

enum class BasisKind { monomial, tabulated };

// Ordered family of test functions, first member identically 1.
// Monomial bases enumerate all multi-indices of total degree <= m in graded
// lexicographic order (degree-major, then descending lex on exponents).
// Tabulated bases carry descriptors only; their values arrive as pre-lifted
// matrices, so evaluate() is unavailable for them.
class TestFunctionBasis {
public:
    static constexpr std::uint64_t kDefaultSizeCap = 10'000'000;

    static TestFunctionBasis monomials(int input_dim, int max_degree,
                                       std::uint64_t size_cap = kDefaultSizeCap);
    static TestFunctionBasis tabulated(int input_dim, std::vector<std::string> names);

    BasisKind kind() const { return kind_; }
    int input_dim() const { return input_dim_; }
    int max_degree() const { return max_degree_; } // monomial only
    std::size_t size() const { return size_; }
    const std::vector<MultiIndex>& members() const { return members_; }
    const std::vector<std::string>& member_names() const { return names_; }

    // Writes phi(point) into out (length size()). Monomial kind only.
    void evaluate(std::span<const double> point, std::span<double> out) const;
    std::vector<double> evaluate(std::span<const double> point) const;

    // Single-member evaluation by per-coordinate squaring exponentiation.
    double evaluate_member(std::size_t i, std::span<const double> point) const;

    bool operator==(const TestFunctionBasis&) const = default;

private:
    BasisKind kind_ = BasisKind::monomial;
    int input_dim_ = 0;
    int max_degree_ = 0;
    std::size_t size_ = 0;
    std::vector<MultiIndex> members_;
    std::vector<std::string> names_;
};

// d x n matrix whose column j is phi(points.row(j)). The parallel version
// splits points across OpenMP threads; the serial one is the reference.
Matrix lift_matrix(const TestFunctionBasis& basis, const Matrix& points);
Matrix lift_matrix_serial(const TestFunctionBasis& basis, const Matrix& points);

} // namespace mccub
