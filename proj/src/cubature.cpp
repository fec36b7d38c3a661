#include "mccub/cubature.hpp"

#include <algorithm>
#include <cmath>

namespace mccub {

std::vector<double> Cubature::moments(const TestFunctionBasis& b) const {
    const std::size_t d = b.size();
    std::vector<double> acc(d, 0.0), phi(d);
    for (std::size_t j = 0; j < node_count(); ++j) {
        b.evaluate(nodes.row(j), phi);
        for (std::size_t i = 0; i < d; ++i) acc[i] += weights[j] * phi[i];
    }
    return acc;
}

namespace {

// Assembles a cubature from a BFS over lifted columns, normalizing the
// weight sum to exactly 1 (the constant row then holds to rounding).
Cubature from_bfs(const Matrix& points, const Matrix& lifted, const TestFunctionBasis& basis,
                  const MomentVector& target, const BfsResult& bfs,
                  CubatureProvenance provenance) {
    Cubature cub;
    cub.basis = basis;
    cub.target = target.values;
    cub.provenance = provenance;

    const std::size_t n = bfs.support.size();
    const int s = static_cast<int>(points.cols());
    cub.nodes = Matrix(n, s);
    cub.weights.resize(n);
    double sum = 0.0;
    for (double w : bfs.weights) sum += w;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = bfs.support[k];
        for (int c = 0; c < s; ++c) cub.nodes(k, c) = points(j, c);
        cub.weights[k] = bfs.weights[k] / sum;
    }
    cub.residual = residual_max_norm(lifted, bfs.support, cub.weights, target.values);
    return cub;
}

void check_target(const TestFunctionBasis& basis, const MomentVector& target) {
    if (target.size() != basis.size())
        throw std::invalid_argument("target length does not match basis size");
    if (target.values[0] != 1.0)
        throw std::invalid_argument("target[0] must be exactly 1");
}

} // namespace

Cubature construct_exact(const TestFunctionBasis& basis, const MomentVector& target,
                         const ConstructionConfig& config) {
    check_target(basis, target);
    if (basis.kind() != BasisKind::monomial)
        throw std::invalid_argument("construct_exact: fresh sampling needs a monomial basis");
    if (config.sampler == SampleSource::file)
        throw std::invalid_argument("construct_exact: built-in samplers only");
    if (config.growth_factor <= 1.0)
        throw std::invalid_argument("construct_exact: growth_factor must exceed 1");

    const std::size_t d = basis.size();
    const int s = basis.input_dim();
    std::size_t pool = std::min(std::max<std::size_t>(config.initial_pool ? config.initial_pool : d, 1),
                                config.max_pool);

    auto draw = [&](std::size_t n) {
        return config.sampler == SampleSource::uniform_cube
                   ? sample_uniform_cube(s, n, config.seed, config.stream)
                   : sample_gaussian(s, n, config.seed, config.stream);
    };

    while (true) {
        const SampleBatch batch = draw(pool);
        const Matrix lifted = lift_matrix(basis, batch.points);
        LpInstance inst{lifted, target.values, config.lp_tolerance};
        const BfsResult probe = membership(inst);
        if (probe.status == LpStatus::numerically_unstable)
            throw UnstableError("construct_exact: LP unstable at pool size " +
                                std::to_string(pool));
        if (probe.status == LpStatus::feasible) {
            const BfsResult bfs = find_bfs(inst);
            if (bfs.status != LpStatus::feasible)
                throw UnstableError("construct_exact: BFS extraction failed at pool size " +
                                    std::to_string(pool));
            Cubature cub = from_bfs(batch.points, lifted, basis, target, bfs,
                                    CubatureProvenance::exact_construction);
            cub.pool_used = pool;
            cub.seed = config.seed;
            cub.stream = config.stream;
            return cub;
        }
        if (pool >= config.max_pool)
            throw PoolExhaustedError("construct_exact: no hull membership within " +
                                     std::to_string(config.max_pool) + " samples");
        pool = std::min<std::size_t>(
            static_cast<std::size_t>(std::ceil(static_cast<double>(pool) * config.growth_factor)),
            config.max_pool);
    }
}

Cubature subsample_lifted(const Matrix& points, const Matrix& lifted,
                          const TestFunctionBasis& basis, const MomentVector& target,
                          double tol) {
    check_target(basis, target);
    if (lifted.rows() != basis.size())
        throw std::invalid_argument("subsample: lifted row count does not match basis size");
    if (lifted.cols() != points.rows())
        throw std::invalid_argument("subsample: lifted column count does not match point count");

    LpInstance inst{lifted, target.values, tol};
    const BfsResult bfs = find_bfs(inst);
    if (bfs.status == LpStatus::infeasible)
        throw InfeasibleError("subsample: target lies outside the convex hull "
                              "(phase-I optimum " + std::to_string(bfs.residual) + ")");
    if (bfs.status == LpStatus::numerically_unstable)
        throw UnstableError("subsample: LP numerically unstable");
    return from_bfs(points, lifted, basis, target, bfs, CubatureProvenance::subsampled);
}

Cubature subsample(const Matrix& points, const TestFunctionBasis& basis,
                   const MomentVector& target, double tol) {
    return subsample_lifted(points, lift_matrix(basis, points), basis, target, tol);
}

Cubature compress_empirical(const SampleBatch& samples, const TestFunctionBasis& basis,
                            double tol) {
    const Matrix lifted = lift_matrix(basis, samples.points);
    MomentVector target = empirical_moments_lifted(lifted);
    target.seed = samples.seed;
    target.stream = samples.stream;
    Cubature cub = subsample_lifted(samples.points, lifted, basis, target, tol);
    cub.seed = samples.seed;
    cub.stream = samples.stream;
    return cub;
}

Cubature product_cubature(const Cubature& base, int k, std::size_t max_nodes) {
    if (k < 1) throw std::invalid_argument("product_cubature: k must be >= 1");
    const std::size_t n = base.node_count();
    const int s = base.dim();

    std::size_t total = 1;
    for (int i = 0; i < k; ++i) {
        if (n != 0 && total > max_nodes / n)
            throw std::length_error("product_cubature: n^k exceeds the node cap");
        total *= n;
    }

    Cubature prod;
    prod.provenance = CubatureProvenance::product;
    prod.product_fold = k;
    prod.basis = base.basis;
    prod.nodes = Matrix(total, static_cast<std::size_t>(s) * k);
    prod.weights.resize(total);

    std::vector<std::size_t> idx(k, 0);
    for (std::size_t r = 0; r < total; ++r) {
        double w = 1.0;
        for (int f = 0; f < k; ++f) {
            const std::size_t j = idx[f];
            w *= base.weights[j];
            for (int c = 0; c < s; ++c)
                prod.nodes(r, static_cast<std::size_t>(f) * s + c) = base.nodes(j, c);
        }
        prod.weights[r] = w;
        for (int f = k - 1; f >= 0; --f) {
            if (++idx[f] < n) break;
            idx[f] = 0;
        }
    }
    return prod;
}

VerificationReport verify(const Cubature& cub, const TestFunctionBasis& basis,
                          const MomentVector& target) {
    if (target.size() != basis.size())
        throw std::invalid_argument("verify: target length does not match basis size");
    if (cub.dim() != basis.input_dim())
        throw std::invalid_argument("verify: node dimension does not match basis");

    VerificationReport rep;
    rep.node_count = cub.node_count();
    rep.basis_size = basis.size();

    const std::vector<double> got = cub.moments(basis);
    rep.component_residual.resize(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        rep.component_residual[i] = std::abs(got[i] - target.values[i]);
        rep.max_residual = std::max(rep.max_residual, rep.component_residual[i]);
    }

    rep.weights_positive = !cub.weights.empty();
    for (double w : cub.weights) {
        rep.weight_sum += w;
        if (w <= 0.0) rep.weights_positive = false;
    }
    rep.normalized = std::abs(rep.weight_sum - 1.0) <= 1e-12;
    rep.within_tchakaloff = rep.node_count <= rep.basis_size;

    if (basis.kind() == BasisKind::monomial) {
        rep.fisher_lower = basis_dim(basis.input_dim(), basis.max_degree() / 2);
        rep.within_fisher = rep.node_count >= rep.fisher_lower;
    } else {
        rep.fisher_lower = 1;
        rep.within_fisher = rep.node_count >= 1;
    }
    return rep;
}

double integrate(const Cubature& cub, std::span<const double> values) {
    if (values.size() != cub.node_count())
        throw std::invalid_argument("integrate: value count does not match node count");
    double acc = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) acc += cub.weights[j] * values[j];
    return acc;
}

} // namespace mccub
