#include "mccub/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mccub/cubature.hpp"
#include "mccub/moments.hpp"
#include "mccub/rng.hpp"
#include "mccub/sampler.hpp"

namespace mccub {

int probe(int s, int m, long n, const ExperimentConfig& config, int probe_index,
          ProbeLog* log) {
    if (n < 1) throw std::invalid_argument("probe: n must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();

    const TestFunctionBasis basis = TestFunctionBasis::monomials(s, m);
    const MomentVector target = analytic_moment_vector(basis);
    const std::uint64_t seed_base = CounterRng::derive_key(
        {config.master_seed, static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(m),
         static_cast<std::uint64_t>(probe_index)});

    int successes = 0;
    int unstable = 0;
#ifdef _OPENMP
    if (config.jobs > 0) omp_set_num_threads(config.jobs);
#endif
#pragma omp parallel for schedule(dynamic) reduction(+ : successes, unstable)
    for (int trial = 0; trial < config.trials; ++trial) {
        const std::uint64_t stream = hash_combine(seed_base, static_cast<std::uint64_t>(trial));
        const SampleBatch batch =
            sample_uniform_cube(s, static_cast<std::size_t>(n), config.master_seed, stream);
        const Matrix lifted = lift_matrix_serial(basis, batch.points);
        const BfsResult r = membership({lifted, target.values, config.lp_tolerance});
        if (r.status == LpStatus::feasible) ++successes;
        if (r.status == LpStatus::numerically_unstable) ++unstable; // counts as failure
    }

    if (log) {
        log->n = n;
        log->successes = successes;
        log->seed_base = seed_base;
        log->unstable = unstable;
        log->seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    return successes;
}

ExperimentRecord estimate_n(int s, int m, const ExperimentConfig& config) {
    ExperimentRecord rec;
    rec.s = s;
    rec.m = m;
    rec.d = basis_dim(s, m);
    rec.trials = config.trials;
    rec.success_threshold = config.success_threshold;
    rec.master_seed = config.master_seed;
    rec.search_lo = config.search_lo > 0 ? config.search_lo : static_cast<long>(rec.d);
    rec.search_hi = config.search_hi;
    if (rec.search_lo > rec.search_hi)
        throw std::invalid_argument("estimate_n: empty search interval");

    int probe_index = 0;
    auto run_probe = [&](long n) {
        ProbeLog log;
        const int ok = probe(s, m, n, config, probe_index++, &log);
        rec.probes.push_back(log);
        return ok >= config.success_threshold;
    };

    // invariant: hi always met the threshold, everything below lo is untested
    long lo = rec.search_lo, hi = rec.search_hi;
    if (!run_probe(hi)) {
        rec.exceeded_hi = true;
        rec.estimated_n = hi;
        return rec;
    }
    while (lo < hi) {
        const long mid = lo + (hi - lo) / 2;
        if (run_probe(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    rec.estimated_n = hi;
    return rec;
}

std::string render_table(const std::vector<ExperimentRecord>& records) {
    std::vector<int> ss, ms;
    for (const auto& r : records) {
        if (std::find(ss.begin(), ss.end(), r.s) == ss.end()) ss.push_back(r.s);
        if (std::find(ms.begin(), ms.end(), r.m) == ms.end()) ms.push_back(r.m);
    }
    std::sort(ss.begin(), ss.end());
    std::sort(ms.begin(), ms.end());

    std::ostringstream out;
    out << "s\\m";
    for (int m : ms) out << "\t" << m;
    out << "\n";
    for (int s : ss) {
        out << s;
        for (int m : ms) {
            out << "\t";
            bool found = false;
            for (const auto& r : records) {
                if (r.s != s || r.m != m) continue;
                if (r.exceeded_hi)
                    out << ">" << r.search_hi << " (" << r.d << ")";
                else
                    out << r.estimated_n << " (" << r.d << ")";
                found = true;
                break;
            }
            if (!found) out << "-";
        }
        out << "\n";
    }
    return out.str();
}

std::vector<McErrorRow> mc_error_study(int s, int m, const std::vector<long>& n_list,
                                       int reps, std::uint64_t seed) {
    if (reps < 30) throw std::invalid_argument("mc_error_study: reps must be >= 30");
    const TestFunctionBasis basis = TestFunctionBasis::monomials(s, m);
    const MomentVector exact = analytic_moment_vector(basis);
    const std::size_t d = basis.size();

    std::vector<McErrorRow> rows;
    for (long n : n_list) {
        McErrorRow row;
        row.n = n;
        Matrix errors(reps, d); // signed error per rep and component

        const std::int64_t r64 = reps;
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t rep = 0; rep < r64; ++rep) {
            const std::uint64_t stream = CounterRng::derive_key(
                {seed, 0x4D43455252ULL /* salt */, static_cast<std::uint64_t>(n),
                 static_cast<std::uint64_t>(rep)});
            const SampleBatch batch =
                sample_uniform_cube(s, static_cast<std::size_t>(n), seed, stream);
            const Cubature cub = compress_empirical(batch, basis);
            const std::vector<double> got = cub.moments(basis);
            for (std::size_t i = 0; i < d; ++i)
                errors(static_cast<std::size_t>(rep), i) = got[i] - exact.values[i];
        }

        row.rmse.assign(d, 0.0);
        row.mean_error.assign(d, 0.0);
        row.standard_error.assign(d, 0.0);
        for (std::size_t i = 0; i < d; ++i) {
            double sq = 0.0, mean = 0.0;
            for (int rep = 0; rep < reps; ++rep) {
                const double e = errors(rep, i);
                sq += e * e;
                mean += e;
            }
            mean /= reps;
            row.rmse[i] = std::sqrt(sq / reps);
            row.mean_error[i] = mean;
            double var = 0.0;
            for (int rep = 0; rep < reps; ++rep) {
                const double c = errors(rep, i) - mean;
                var += c * c;
            }
            var /= (reps - 1);
            row.standard_error[i] = std::sqrt(var / reps);
        }
        double agg = 0.0;
        for (std::size_t i = 1; i < d; ++i) agg += row.rmse[i] * row.rmse[i];
        row.aggregate_rmse = d > 1 ? std::sqrt(agg / (d - 1)) : 0.0;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace mccub
