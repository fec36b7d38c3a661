#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mccub/basis.hpp"
#include "mccub/lp.hpp"

namespace mccub {

struct ExperimentConfig {
    int trials = 20;
    int success_threshold = 10;
    long search_lo = 0; // 0 -> d_{s,m}
    long search_hi = 10000;
    double lp_tolerance = 1e-9;
    std::uint64_t master_seed = 0;
    int jobs = 0; // OpenMP threads for trials; 0 -> runtime default
};

struct ProbeLog {
    long n = 0;
    int successes = 0;
    std::uint64_t seed_base = 0; // trial streams derive from this
    int unstable = 0;            // LP runs counted as failures
    double seconds = 0.0;        // not serialized; records stay reproducible
};

struct ExperimentRecord {
    int s = 0, m = 0;
    std::uint64_t d = 0;
    int trials = 0;
    int success_threshold = 0;
    long search_lo = 0, search_hi = 0;
    long estimated_n = 0;
    bool exceeded_hi = false; // search_hi itself failed the threshold
    std::vector<ProbeLog> probes;
    std::uint64_t master_seed = 0;
};

// Success count over `trials` independent n-sample hull checks against the
// analytic uniform-cube moments. Trials run in parallel; trial i at probe
// `probe_index` draws its stream from (master_seed, s, m, probe_index, i).
int probe(int s, int m, long n, const ExperimentConfig& config, int probe_index,
          ProbeLog* log = nullptr);

// Smallest n in [search_lo, search_hi] whose success count meets the
// threshold, by binary search. The upper bound is probed first so the
// returned n always satisfied the threshold; if search_hi itself fails the
// record reports exceeded_hi.
ExperimentRecord estimate_n(int s, int m, const ExperimentConfig& config);

// "A (B)" grid over the given (s, m) cells, Table-style.
std::string render_table(const std::vector<ExperimentRecord>& records);

struct McErrorRow {
    long n = 0;
    std::vector<double> rmse;    // per basis component
    double aggregate_rmse = 0.0; // over nonconstant components
    std::vector<double> mean_error;
    std::vector<double> standard_error;
};

// Monte Carlo error of compressed empirical measures against the analytic
// moments, at each sample count in n_list.
std::vector<McErrorRow> mc_error_study(int s, int m, const std::vector<long>& n_list,
                                       int reps, std::uint64_t seed);

} // namespace mccub
