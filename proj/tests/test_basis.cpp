#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mccub/basis.hpp"

using namespace mccub;

namespace {

// independent count of s-tuples with sum <= m, by direct recursion
long brute_count(int s, int m) {
    if (s == 0) return 1;
    long total = 0;
    for (int e = 0; e <= m; ++e) total += brute_count(s - 1, m - e);
    return total;
}

} // namespace

TEST_CASE("basis_dim matches the binomial closed form") {
    CHECK(basis_dim(1, 3) == 4);
    CHECK(basis_dim(2, 2) == 6);
    CHECK(basis_dim(4, 4) == 70);
    CHECK(basis_dim(5, 5) == 252);
    CHECK(basis_dim(3, 0) == 1);
    CHECK(basis_dim(7, 0) == 1);
}

TEST_CASE("basis_dim rejects bad input and overflow") {
    CHECK_THROWS_AS(basis_dim(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(basis_dim(1, -1), std::invalid_argument);
    CHECK_THROWS_AS(basis_dim(40, 1000), std::overflow_error);
}

TEST_CASE("enumeration size agrees with basis_dim and a brute-force count") {
    for (int s = 1; s <= 6; ++s) {
        for (int m = 0; m <= 6; ++m) {
            const auto basis = TestFunctionBasis::monomials(s, m);
            CHECK(basis.size() == basis_dim(s, m));
            CHECK(basis.size() == static_cast<std::size_t>(brute_count(s, m)));
        }
    }
}

TEST_CASE("graded-lex order: constant first, degrees ascend, deterministic") {
    const auto basis = TestFunctionBasis::monomials(3, 4);
    const auto& mem = basis.members();
    CHECK(mem.front().total_degree() == 0);
    for (std::size_t i = 1; i < mem.size(); ++i) {
        CHECK(mem[i - 1].total_degree() <= mem[i].total_degree());
        CHECK_FALSE(mem[i - 1] == mem[i]);
    }
    const auto again = TestFunctionBasis::monomials(3, 4);
    CHECK(again.members() == mem);
}

TEST_CASE("known enumerations") {
    const auto b1 = TestFunctionBasis::monomials(1, 3);
    REQUIRE(b1.size() == 4);
    for (int e = 0; e < 4; ++e) CHECK(b1.members()[e].exponents == std::vector<int>{e});

    const auto b0 = TestFunctionBasis::monomials(3, 0);
    REQUIRE(b0.size() == 1);
    CHECK(b0.members()[0].exponents == std::vector<int>({0, 0, 0}));
}

TEST_CASE("evaluate: monomial values") {
    const auto b = TestFunctionBasis::monomials(1, 2);
    const double p[] = {0.5};
    const auto v = b.evaluate(p);
    REQUIRE(v.size() == 3);
    CHECK(v[0] == 1.0);
    CHECK(v[1] == doctest::Approx(0.5));
    CHECK(v[2] == doctest::Approx(0.25));
}

TEST_CASE("evaluate: all nonconstant monomials vanish at the origin") {
    const auto b = TestFunctionBasis::monomials(2, 2);
    const double p[] = {0.0, 0.0};
    const auto v = b.evaluate(p);
    REQUIRE(v.size() == 6);
    CHECK(v[0] == 1.0);
    for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] == 0.0);
}

TEST_CASE("table evaluation agrees with per-member squaring exponentiation") {
    const auto b = TestFunctionBasis::monomials(3, 5);
    const double p[] = {0.3, -1.7, 2.25};
    const auto v = b.evaluate(p);
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double direct = b.evaluate_member(i, p);
        CHECK(v[i] == doctest::Approx(direct).epsilon(1e-14));
    }
}

TEST_CASE("evaluate rejects dimension mismatch") {
    const auto b = TestFunctionBasis::monomials(2, 2);
    const double p[] = {0.5};
    CHECK_THROWS_AS(b.evaluate(std::span<const double>(p, 1)), std::invalid_argument);
}

TEST_CASE("size cap is enforced") {
    CHECK_THROWS_AS(TestFunctionBasis::monomials(10, 10, 100), std::length_error);
}

TEST_CASE("tabulated bases carry descriptors but cannot evaluate") {
    const auto b = TestFunctionBasis::tabulated(2, {"one", "f", "g"});
    CHECK(b.size() == 3);
    const double p[] = {0.1, 0.2};
    CHECK_THROWS_AS(b.evaluate(p), std::logic_error);
}

TEST_CASE("lift kernels: parallel matches serial reference") {
    const auto b = TestFunctionBasis::monomials(3, 4);
    Matrix pts(37, 3);
    for (std::size_t i = 0; i < pts.rows(); ++i)
        for (std::size_t j = 0; j < 3; ++j)
            pts(i, j) = std::sin(1.0 + 3.7 * static_cast<double>(i) + 0.9 * static_cast<double>(j));
    const Matrix a = lift_matrix(b, pts);
    const Matrix ref = lift_matrix_serial(b, pts);
    REQUIRE(a.rows() == ref.rows());
    REQUIRE(a.cols() == ref.cols());
    CHECK(a == ref); // bitwise: same evaluation path per point
}
