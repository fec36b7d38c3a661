#include "mccub/moments.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

namespace mccub {

double uniform_cube_moment(const MultiIndex& alpha) {
    double v = 1.0;
    for (int e : alpha.exponents) v /= static_cast<double>(e + 1);
    return v;
}

MomentVector analytic_moment_vector(const TestFunctionBasis& basis) {
    if (basis.kind() != BasisKind::monomial)
        throw std::invalid_argument("analytic_moment_vector: monomial bases only");
    MomentVector mv;
    mv.provenance = MomentProvenance::analytic;
    mv.values.reserve(basis.size());
    for (const auto& alpha : basis.members())
        mv.values.push_back(uniform_cube_moment(alpha));
    return mv;
}

MomentVector empirical_moments(const SampleBatch& samples, const TestFunctionBasis& basis) {
    if (samples.count() == 0) throw std::invalid_argument("empirical_moments: empty sample set");
    if (samples.dim() != basis.input_dim())
        throw std::invalid_argument("empirical_moments: sample dimension mismatch");

    const std::size_t d = basis.size();
    const std::size_t n = samples.count();
    MomentVector mv;
    mv.provenance = MomentProvenance::empirical;
    mv.sample_count = n;
    mv.seed = samples.seed;
    mv.stream = samples.stream;
    mv.values.assign(d, 0.0);

    std::vector<double> phi(d);
    for (std::size_t i = 0; i < n; ++i) {
        basis.evaluate(samples.points.row(i), phi);
        for (std::size_t k = 0; k < d; ++k) mv.values[k] += phi[k];
    }
    for (std::size_t k = 0; k < d; ++k) mv.values[k] /= static_cast<double>(n);
    mv.values[0] = 1.0; // the constant member, computed exactly
    return mv;
}

MomentVector empirical_moments_lifted(const Matrix& lifted) {
    if (lifted.cols() == 0) throw std::invalid_argument("empirical_moments: empty sample set");
    MomentVector mv;
    mv.provenance = MomentProvenance::empirical;
    mv.sample_count = lifted.cols();
    mv.values.assign(lifted.rows(), 0.0);
    for (std::size_t i = 0; i < lifted.rows(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < lifted.cols(); ++j) acc += lifted(i, j);
        mv.values[i] = acc / static_cast<double>(lifted.cols());
    }
    mv.values[0] = 1.0;
    return mv;
}

MomentVector load_moment_vector(const std::filesystem::path& path,
                                const TestFunctionBasis& basis) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_moment_vector: cannot open " + path.string());

    MomentVector mv;
    mv.provenance = MomentProvenance::user_supplied;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        try {
            mv.values.push_back(std::stod(line));
        } catch (const std::exception&) {
            throw std::runtime_error("load_moment_vector: " + path.string() + ":" +
                                     std::to_string(lineno) + ": bad value");
        }
    }
    if (mv.values.size() != basis.size())
        throw std::runtime_error("load_moment_vector: expected " + std::to_string(basis.size()) +
                                 " entries, got " + std::to_string(mv.values.size()));
    if (std::abs(mv.values[0] - 1.0) > 1e-9)
        throw std::runtime_error("load_moment_vector: first entry must equal 1 (constant member)");
    mv.values[0] = 1.0;
    return mv;
}

} // namespace mccub
