#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mccub/cubature.hpp"
#include "mccub/io.hpp"

using namespace mccub;

namespace {

Cubature simpson() {
    const auto basis = TestFunctionBasis::monomials(1, 3);
    Matrix pts(3, 1);
    pts(0, 0) = 0.0;
    pts(1, 0) = 0.5;
    pts(2, 0) = 1.0;
    return subsample(pts, basis, analytic_moment_vector(basis));
}

} // namespace

TEST_CASE("subsample recovers Simpson's rule") {
    const auto cub = simpson();
    REQUIRE(cub.node_count() == 3);
    CHECK(cub.weights[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(cub.weights[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(cub.weights[2] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(cub.residual <= 1e-12);
    double sum = 0.0;
    for (double w : cub.weights) sum += w;
    CHECK(std::abs(sum - 1.0) <= 1e-12);
}

TEST_CASE("subsample on a single matching point returns weight 1") {
    const auto basis = TestFunctionBasis::monomials(2, 2);
    Matrix pts(1, 2);
    pts(0, 0) = 0.3;
    pts(0, 1) = 0.7;
    MomentVector target;
    target.values = basis.evaluate(pts.row(0));
    const auto cub = subsample(pts, basis, target);
    REQUIRE(cub.node_count() == 1);
    CHECK(cub.weights[0] == doctest::Approx(1.0));
    CHECK(cub.nodes(0, 0) == 0.3);
    CHECK(cub.nodes(0, 1) == 0.7);
}

TEST_CASE("two points cannot match the x^2 moment") {
    const auto basis = TestFunctionBasis::monomials(1, 2);
    Matrix pts(2, 1);
    pts(0, 0) = 0.0;
    pts(1, 0) = 1.0;
    CHECK_THROWS_AS(subsample(pts, basis, analytic_moment_vector(basis)), InfeasibleError);
}

TEST_CASE("construct_exact: degree-3 rule on the unit interval") {
    const auto basis = TestFunctionBasis::monomials(1, 3);
    const auto target = analytic_moment_vector(basis);
    ConstructionConfig cfg;
    cfg.seed = 42;
    const auto cub = construct_exact(basis, target, cfg);
    CHECK(cub.node_count() <= 4);
    CHECK(cub.pool_used >= 1);
    for (int k = 0; k <= 3; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < cub.node_count(); ++j)
            acc += cub.weights[j] * pow_int(cub.nodes(j, 0), k);
        CHECK(std::abs(acc - 1.0 / (k + 1)) <= 1e-9);
    }
}

TEST_CASE("construct_exact: nodes are drawn samples, runs are deterministic") {
    const auto basis = TestFunctionBasis::monomials(2, 2);
    const auto target = analytic_moment_vector(basis);
    ConstructionConfig cfg;
    cfg.seed = 7;
    cfg.stream = 3;
    const auto a = construct_exact(basis, target, cfg);
    const auto b = construct_exact(basis, target, cfg);
    CHECK(a.pool_used == b.pool_used);
    CHECK(a.nodes == b.nodes);
    CHECK(a.weights == b.weights);

    // node provenance: every node is bitwise one of the drawn samples
    const auto pool = sample_uniform_cube(2, a.pool_used, cfg.seed, cfg.stream);
    for (std::size_t j = 0; j < a.node_count(); ++j) {
        bool found = false;
        for (std::size_t i = 0; i < pool.count() && !found; ++i)
            found = a.nodes(j, 0) == pool.points(i, 0) && a.nodes(j, 1) == pool.points(i, 1);
        CHECK(found);
    }
}

TEST_CASE("construct_exact respects the pool cap") {
    // degree-2 moments of the uniform measure are never matched by 1 sample,
    // and the cap stops the search
    const auto basis = TestFunctionBasis::monomials(1, 2);
    const auto target = analytic_moment_vector(basis);
    ConstructionConfig cfg;
    cfg.seed = 5;
    cfg.initial_pool = 1;
    cfg.max_pool = 2;
    CHECK_THROWS_AS(construct_exact(basis, target, cfg), PoolExhaustedError);
}

TEST_CASE("compress_empirical: n <= d and exact on the empirical moments") {
    const int s = 2, m = 2;
    const auto basis = TestFunctionBasis::monomials(s, m);
    const auto batch = sample_uniform_cube(s, 1000, 99, 0);
    const auto cub = compress_empirical(batch, basis);
    CHECK(cub.node_count() <= 6);
    CHECK(cub.residual <= 1e-9);

    const auto emp = empirical_moments(batch, basis);
    const auto got = cub.moments(basis);
    for (std::size_t i = 0; i < basis.size(); ++i)
        CHECK(std::abs(got[i] - emp.values[i]) <= 1e-9);
}

TEST_CASE("compressed measure integrates basis-span functions like the raw mean") {
    const int s = 2, m = 2;
    const auto basis = TestFunctionBasis::monomials(s, m);
    const auto batch = sample_uniform_cube(s, 500, 123, 1);
    const auto cub = compress_empirical(batch, basis);

    // f = 2 + 3 x - y^2 + 0.5 x y lies in the basis span
    auto f = [](double x, double y) { return 2.0 + 3.0 * x - y * y + 0.5 * x * y; };
    double plain = 0.0;
    for (std::size_t i = 0; i < batch.count(); ++i)
        plain += f(batch.points(i, 0), batch.points(i, 1));
    plain /= static_cast<double>(batch.count());

    std::vector<double> values(cub.node_count());
    for (std::size_t j = 0; j < cub.node_count(); ++j)
        values[j] = f(cub.nodes(j, 0), cub.nodes(j, 1));
    CHECK(integrate(cub, values) == doctest::Approx(plain).epsilon(1e-9));
}

TEST_CASE("product cubature: 2-fold Simpson") {
    const auto cub = product_cubature(simpson(), 2);
    REQUIRE(cub.node_count() == 9);
    CHECK(cub.dim() == 2);
    CHECK(cub.provenance == CubatureProvenance::product);

    double sum = 0.0;
    for (double w : cub.weights) sum += w;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));

    // corner (0,0) carries (1/6)^2, center (1/2,1/2) carries (2/3)^2
    for (std::size_t j = 0; j < 9; ++j) {
        if (cub.nodes(j, 0) == 0.0 && cub.nodes(j, 1) == 0.0)
            CHECK(cub.weights[j] == doctest::Approx(1.0 / 36.0).epsilon(1e-12));
        if (cub.nodes(j, 0) == 0.5 && cub.nodes(j, 1) == 0.5)
            CHECK(cub.weights[j] == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
    }
}

TEST_CASE("product cubature reduces against the product-space basis") {
    const auto prod = product_cubature(simpson(), 2);
    const auto basis = TestFunctionBasis::monomials(2, 3); // d = 10
    const auto target = analytic_moment_vector(basis);
    const auto reduced = subsample(prod.nodes, basis, target);
    CHECK(reduced.node_count() <= 10);
    const auto got = reduced.moments(basis);
    for (std::size_t i = 0; i < basis.size(); ++i)
        CHECK(std::abs(got[i] - target.values[i]) <= 1e-9);
}

TEST_CASE("product cubature size guard") {
    CHECK_THROWS_AS(product_cubature(simpson(), 20), std::length_error);
}

TEST_CASE("verify: Simpson passes, corruption is flagged") {
    const auto basis = TestFunctionBasis::monomials(1, 3);
    const auto target = analytic_moment_vector(basis);
    auto cub = simpson();

    auto rep = verify(cub, basis, target);
    CHECK(rep.max_residual <= 1e-14);
    CHECK(rep.weights_positive);
    CHECK(rep.normalized);
    CHECK(rep.within_tchakaloff);
    CHECK(rep.fisher_lower == 2); // dim P_1 on the line
    CHECK(rep.within_fisher);
    CHECK(rep.pass(1e-9));

    auto tampered = cub;
    tampered.weights[1] = -tampered.weights[1];
    rep = verify(tampered, basis, target);
    CHECK_FALSE(rep.weights_positive);
    CHECK_FALSE(rep.pass(1e-9));

    // wrong-degree target: residual blows up on the extra components
    const auto basis4 = TestFunctionBasis::monomials(1, 4);
    Cubature wrong = cub;
    wrong.basis = basis4;
    const auto rep4 = verify(wrong, basis4, analytic_moment_vector(basis4));
    CHECK(rep4.max_residual > 1e-3); // x^4 is not integrated exactly
}

TEST_CASE("integrate: Simpson values") {
    const auto cub = simpson();
    // nodes are ordered 0, 1/2, 1
    CHECK(integrate(cub, std::vector<double>{1.0, 1.0, 1.0}) == doctest::Approx(1.0));
    CHECK(integrate(cub, std::vector<double>{0.0, 1.0 / 8.0, 1.0}) ==
          doctest::Approx(0.25).epsilon(1e-12));
    CHECK(integrate(cub, std::vector<double>{0.0, 1.0 / 16.0, 1.0}) ==
          doctest::Approx(5.0 / 24.0).epsilon(1e-12)); // degree-4 non-exactness
    CHECK_THROWS_AS(integrate(cub, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("subsample_lifted serves tabulated bases") {
    // tabulated values of (1, x, x^2, x^3) at {0, 1/2, 1}
    const auto basis = TestFunctionBasis::tabulated(1, {"one", "x", "x2", "x3"});
    Matrix pts(3, 1);
    pts(0, 0) = 0.0;
    pts(1, 0) = 0.5;
    pts(2, 0) = 1.0;
    Matrix lifted(4, 3);
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 4; ++i) lifted(i, j) = pow_int(pts(j, 0), i);
    MomentVector target;
    target.values = {1.0, 0.5, 1.0 / 3.0, 0.25};
    const auto cub = subsample_lifted(pts, lifted, basis, target);
    REQUIRE(cub.node_count() == 3);
    CHECK(cub.weights[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}
