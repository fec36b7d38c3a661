// Command-line front end: wires samplers, bases, moments, construction,
// compression, verification and the sampling-cost experiment into
// reproducible invocations. Every run that writes outputs also writes a
// manifest (resolved key=value config) that can be replayed via --config.

#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "mccub/cubature.hpp"
#include "mccub/experiment.hpp"
#include "mccub/io.hpp"

namespace fs = std::filesystem;
using namespace mccub;

namespace {

// stable exit-code table; scripts depend on these
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitPoolExhausted = 4;
constexpr int kExitUnstable = 5;
constexpr int kExitVerifyFailed = 6;

std::uint64_t resolve_seed(std::int64_t seed_opt) {
    if (seed_opt >= 0) return static_cast<std::uint64_t>(seed_opt);
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

void write_manifest(const fs::path& path, const std::string& section,
                    const std::vector<std::pair<std::string, std::string>>& kv) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest " + path.string());
    out << "[" << section << "]\n";
    for (const auto& [k, v] : kv) {
        if (v.empty()) continue;
        const bool quote = v.find_first_of(", \t") != std::string::npos;
        out << k << "=" << (quote ? "\"" + v + "\"" : v) << "\n";
    }
}

std::vector<double> load_values(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        try {
            values.push_back(std::stod(line));
        } catch (const std::exception&) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": bad value");
        }
    }
    return values;
}

struct GridSpec {
    std::vector<std::pair<int, int>> cells;
};

// "1..3x1..3", "2x1..5", "3x4"
GridSpec parse_grid(const std::string& text) {
    auto parse_range = [](const std::string& part) {
        const auto dots = part.find("..");
        int lo, hi;
        if (dots == std::string::npos) {
            lo = hi = std::stoi(part);
        } else {
            lo = std::stoi(part.substr(0, dots));
            hi = std::stoi(part.substr(dots + 2));
        }
        if (lo < 1 || hi < lo) throw CLI::ValidationError("grid", "bad range '" + part + "'");
        return std::pair{lo, hi};
    };
    const auto x = text.find('x');
    if (x == std::string::npos)
        throw CLI::ValidationError("grid", "expected SxM, e.g. 1..3x1..3");
    const auto [slo, shi] = parse_range(text.substr(0, x));
    const auto [mlo, mhi] = parse_range(text.substr(x + 1));
    GridSpec grid;
    for (int s = slo; s <= shi; ++s)
        for (int m = mlo; m <= mhi; ++m) grid.cells.emplace_back(s, m);
    return grid;
}

MomentVector target_for(const TestFunctionBasis& basis, const std::string& measure,
                        const std::string& moments_file) {
    if (!moments_file.empty()) return load_moment_vector(moments_file, basis);
    if (measure == "uniform") return analytic_moment_vector(basis);
    throw CLI::ValidationError("--moments",
                               "measure '" + measure + "' has no analytic moments; "
                               "supply a moment file");
}

void print_report(const VerificationReport& rep, double tol) {
    std::printf("nodes            %zu (basis size %zu)\n", rep.node_count, rep.basis_size);
    std::printf("max residual     %.3e (tol %.1e)  %s\n", rep.max_residual, tol,
                rep.max_residual <= tol ? "ok" : "FAIL");
    std::printf("weights > 0      %s\n", rep.weights_positive ? "ok" : "FAIL");
    std::printf("sum weights      %.17g  %s\n", rep.weight_sum,
                rep.normalized ? "ok" : "FAIL");
    std::printf("n <= d           %s\n", rep.within_tchakaloff ? "ok" : "FAIL");
    std::printf("n >= fisher (%" PRIu64 ") %s\n", rep.fisher_lower,
                rep.within_fisher ? "ok" : "FAIL");
}

int run_construct(int s, int m, const std::string& measure, const std::string& moments_file,
                  std::int64_t seed_opt, std::uint64_t stream, double tol,
                  std::size_t initial_pool, double growth, std::size_t max_pool,
                  const std::string& out) {
    const auto basis = TestFunctionBasis::monomials(s, m);
    const auto target = target_for(basis, measure, moments_file);

    ConstructionConfig cfg;
    cfg.seed = resolve_seed(seed_opt);
    cfg.stream = stream;
    cfg.lp_tolerance = tol;
    cfg.initial_pool = initial_pool;
    cfg.growth_factor = growth;
    cfg.max_pool = max_pool;
    cfg.sampler = measure == "gaussian" ? SampleSource::gaussian : SampleSource::uniform_cube;

    const Cubature cub = construct_exact(basis, target, cfg);
    write_cubature(out, cub);
    write_manifest(out + ".manifest", "construct",
                   {{"dim", std::to_string(s)},
                    {"degree", std::to_string(m)},
                    {"measure", measure},
                    {"moments", moments_file},
                    {"seed", std::to_string(cfg.seed)},
                    {"stream", std::to_string(stream)},
                    {"tol", format_double(tol)},
                    {"initial-pool", std::to_string(initial_pool)},
                    {"growth", format_double(growth)},
                    {"max-pool", std::to_string(max_pool)},
                    {"out", out}});
    std::printf("n=%zu N_used=%zu residual=%.3e seed=%" PRIu64 "\n", cub.node_count(),
                cub.pool_used, cub.residual, cfg.seed);
    return kExitOk;
}

int run_compress(int s, int m, const std::string& samples_file, const std::string& measure,
                 std::size_t count, std::int64_t seed_opt, std::uint64_t stream, double tol,
                 const std::string& out) {
    const auto basis = TestFunctionBasis::monomials(s, m);
    std::uint64_t seed = 0;
    SampleBatch batch;
    if (!samples_file.empty()) {
        batch = load_samples(samples_file, s);
    } else {
        seed = resolve_seed(seed_opt);
        if (count < 1) throw CLI::ValidationError("--count", "required with built-in samplers");
        batch = measure == "gaussian" ? sample_gaussian(s, count, seed, stream)
                                      : sample_uniform_cube(s, count, seed, stream);
    }

    const Cubature cub = compress_empirical(batch, basis, tol);
    write_cubature(out, cub);
    write_manifest(out + ".manifest", "compress",
                   {{"dim", std::to_string(s)},
                    {"degree", std::to_string(m)},
                    {"samples", samples_file},
                    {"measure", measure},
                    {"count", std::to_string(count)},
                    {"seed", std::to_string(seed)},
                    {"stream", std::to_string(stream)},
                    {"tol", format_double(tol)},
                    {"out", out}});

    // empirical vs compressed moments must agree to tolerance
    const auto emp = empirical_moments(batch, basis);
    const auto got = cub.moments(basis);
    double worst = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i)
        worst = std::max(worst, std::abs(got[i] - emp.values[i]));
    std::printf("n=%zu of N=%zu moment_gap=%.3e\n", cub.node_count(), batch.count(), worst);
    if (worst > tol) {
        std::fprintf(stderr, "compressed moments drifted beyond tolerance\n");
        return kExitUnstable;
    }
    return kExitOk;
}

int run_verify(const std::string& cubature_file, const std::string& measure,
               const std::string& moments_file, int degree, double tol) {
    const Cubature cub = read_cubature(cubature_file);
    TestFunctionBasis basis = cub.basis;
    if (cub.provenance == CubatureProvenance::product) {
        if (degree < 0)
            throw CLI::ValidationError("--degree",
                                       "product files need a product-space degree");
        basis = TestFunctionBasis::monomials(cub.dim(), degree);
    }
    const auto target = target_for(basis, measure, moments_file);
    const auto rep = verify(cub, basis, target);
    print_report(rep, tol);
    // product rules legitimately carry n^k > d nodes until reduced
    const bool ok = cub.provenance == CubatureProvenance::product
                        ? rep.weights_positive && rep.normalized && rep.max_residual <= tol
                        : rep.pass(tol);
    return ok ? kExitOk : kExitVerifyFailed;
}

int run_product(const std::string& in, int k, bool reduce, int degree,
                std::size_t max_nodes, double tol, const std::string& out) {
    const Cubature base = read_cubature(in);
    Cubature prod = product_cubature(base, k, max_nodes);
    if (reduce) {
        if (degree < 0) throw CLI::ValidationError("--degree", "required with --reduce");
        const auto basis = TestFunctionBasis::monomials(prod.dim(), degree);
        // target: moments of the product rule itself, so reduction works for
        // any base measure; the sum-weights row is exactly 1
        MomentVector target;
        target.values = prod.moments(basis);
        target.values[0] = 1.0;
        target.provenance = MomentProvenance::user_supplied;
        prod = subsample(prod.nodes, basis, target, tol);
    }
    write_cubature(out, prod);
    write_manifest(out + ".manifest", "product",
                   {{"in", in},
                                       {"k", std::to_string(k)},
                                       {"reduce", reduce ? "true" : "false"},
                                       {"degree", std::to_string(degree)},
                                       {"max-nodes", std::to_string(max_nodes)},
                                       {"tol", format_double(tol)},
                                       {"out", out}});
    std::printf("n=%zu\n", prod.node_count());
    return kExitOk;
}

int run_integrate(const std::string& cubature_file, const std::string& values_file) {
    const Cubature cub = read_cubature(cubature_file);
    const auto values = load_values(values_file);
    std::printf("%.17g\n", integrate(cub, values));
    return kExitOk;
}

int run_experiment(const std::string& grid_text, const std::string& cell_text,
                   std::int64_t seed_opt, int trials, int threshold, long lo, long hi,
                   int jobs, const std::string& out_dir, bool csv, bool mc_error, int s,
                   int m, int reps, const std::string& n_list_text) {
    ExperimentConfig cfg;
    cfg.master_seed = resolve_seed(seed_opt);
    cfg.trials = trials;
    cfg.success_threshold = threshold;
    cfg.search_lo = lo;
    cfg.search_hi = hi;
    cfg.jobs = jobs;

    fs::create_directories(out_dir);
    write_manifest(fs::path(out_dir) / "manifest.txt", "experiment",
                   {{"grid", grid_text},
                    {"cell", cell_text},
                    {"seed", std::to_string(cfg.master_seed)},
                    {"trials", std::to_string(trials)},
                    {"threshold", std::to_string(threshold)},
                    {"lo", std::to_string(lo)},
                    {"hi", std::to_string(hi)},
                    {"jobs", std::to_string(jobs)},
                    {"out-dir", out_dir},
                    {"csv", csv ? "true" : "false"},
                    {"mc-error", mc_error ? "true" : "false"},
                    {"dim", std::to_string(s)},
                    {"degree", std::to_string(m)},
                    {"reps", std::to_string(reps)},
                    {"n-list", n_list_text}});

    if (mc_error) {
        std::vector<long> n_list;
        std::stringstream ss(n_list_text);
        std::string part;
        while (std::getline(ss, part, ',')) n_list.push_back(std::stol(part));
        const auto rows = mc_error_study(s, m, n_list, reps, cfg.master_seed);
        std::ofstream out(fs::path(out_dir) / "mc_error.txt", std::ios::binary);
        out << "# N aggregate_rmse\n";
        std::printf("N\taggregate_rmse\n");
        for (const auto& row : rows) {
            out << row.n << " " << format_double(row.aggregate_rmse) << "\n";
            std::printf("%ld\t%.6e\n", row.n, row.aggregate_rmse);
        }
        return kExitOk;
    }

    GridSpec grid;
    if (!cell_text.empty()) {
        const auto comma = cell_text.find(',');
        if (comma == std::string::npos)
            throw CLI::ValidationError("--cell", "expected s,m");
        grid.cells.emplace_back(std::stoi(cell_text.substr(0, comma)),
                                std::stoi(cell_text.substr(comma + 1)));
    } else if (!grid_text.empty()) {
        grid = parse_grid(grid_text);
    } else {
        throw CLI::ValidationError("experiment", "need --grid or --cell (or --mc-error)");
    }

    std::vector<ExperimentRecord> records;
    bool any_failed = false;
    for (const auto& [cs, cm] : grid.cells) {
        try {
            auto rec = estimate_n(cs, cm, cfg);
            write_record(fs::path(out_dir) / ("record_" + std::to_string(cs) + "_" +
                                              std::to_string(cm) + ".txt"),
                         rec);
            std::fprintf(stderr, "(%d,%d): estimated N = %ld (d = %" PRIu64 ")\n", cs, cm,
                         rec.estimated_n, rec.d);
            records.push_back(std::move(rec));
        } catch (const std::exception& e) {
            std::fprintf(stderr, "(%d,%d): failed: %s\n", cs, cm, e.what());
            any_failed = true;
        }
    }

    const std::string table = render_table(records);
    {
        std::ofstream out(fs::path(out_dir) / "table.txt", std::ios::binary);
        out << table;
    }
    std::fputs(table.c_str(), stdout);
    if (csv) {
        std::ofstream out(fs::path(out_dir) / "table.csv", std::ios::binary);
        out << "s,m,d,estimated_N,exceeded_hi\n";
        for (const auto& r : records)
            out << r.s << "," << r.m << "," << r.d << "," << r.estimated_n << ","
                << (r.exceeded_hi ? 1 : 0) << "\n";
    }
    return any_failed ? kExitError : kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo cubature construction and measure compression"};
    app.require_subcommand(1);
    app.fallthrough(); // lets --config follow the subcommand name
    app.set_config("--config", "", "replay a run from its manifest");

    // construct
    auto* construct = app.add_subcommand("construct", "solve the exact cubature problem");
    construct->configurable();
    int c_s = 0, c_m = 0;
    std::string c_measure = "uniform", c_moments, c_out;
    std::int64_t c_seed = -1;
    std::uint64_t c_stream = 0;
    double c_tol = 1e-9, c_growth = 2.0;
    std::size_t c_init = 0, c_max = 1'000'000;
    construct->add_option("--dim", c_s, "input dimension s")->required();
    construct->add_option("--degree", c_m, "max total degree m")->required();
    construct->add_option("--measure", c_measure, "uniform|gaussian")
        ->check(CLI::IsMember({"uniform", "gaussian"}));
    construct->add_option("--moments", c_moments, "moment file (default: analytic)");
    construct->add_option("--seed", c_seed, "RNG seed (default: entropy, recorded)");
    construct->add_option("--stream", c_stream, "RNG stream id");
    construct->add_option("--tol", c_tol, "LP feasibility tolerance");
    construct->add_option("--initial-pool", c_init, "starting pool size (0 = basis size)");
    construct->add_option("--growth", c_growth, "pool growth factor");
    construct->add_option("--max-pool", c_max, "pool cap");
    construct->add_option("--out", c_out, "output cubature file")->required();

    // compress
    auto* compress = app.add_subcommand("compress", "compress an empirical measure");
    compress->configurable();
    int p_s = 0, p_m = 0;
    std::string p_samples, p_measure = "uniform", p_out;
    std::size_t p_count = 0;
    std::int64_t p_seed = -1;
    std::uint64_t p_stream = 0;
    double p_tol = 1e-9;
    compress->add_option("--dim", p_s, "input dimension s")->required();
    compress->add_option("--degree", p_m, "max total degree m")->required();
    compress->add_option("--samples", p_samples, "CSV sample file");
    compress->add_option("--measure", p_measure, "uniform|gaussian built-in sampler")
        ->check(CLI::IsMember({"uniform", "gaussian"}));
    compress->add_option("--count", p_count, "sample count for built-in samplers");
    compress->add_option("--seed", p_seed, "RNG seed");
    compress->add_option("--stream", p_stream, "RNG stream id");
    compress->add_option("--tol", p_tol, "LP feasibility tolerance");
    compress->add_option("--out", p_out, "output cubature file")->required();

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "check a cubature file");
    std::string v_file, v_measure = "uniform", v_moments;
    int v_degree = -1;
    double v_tol = 1e-9;
    verify_cmd->add_option("--cubature", v_file, "cubature file")->required();
    verify_cmd->add_option("--measure", v_measure, "uniform (analytic moments)");
    verify_cmd->add_option("--moments", v_moments, "moment file");
    verify_cmd->add_option("--degree", v_degree, "product-space degree (product files)");
    verify_cmd->add_option("--tol", v_tol, "residual tolerance");

    // product
    auto* product = app.add_subcommand("product", "k-fold product cubature");
    product->configurable();
    std::string r_in, r_out;
    int r_k = 2, r_degree = -1;
    bool r_reduce = false;
    std::size_t r_max_nodes = 1'000'000;
    double r_tol = 1e-9;
    product->add_option("--in", r_in, "base cubature file")->required();
    product->add_option("--k", r_k, "number of factors")->required();
    product->add_flag("--reduce", r_reduce, "subsample against a product-space basis");
    product->add_option("--degree", r_degree, "product-space degree for --reduce");
    product->add_option("--max-nodes", r_max_nodes, "n^k guard");
    product->add_option("--tol", r_tol, "LP feasibility tolerance");
    product->add_option("--out", r_out, "output cubature file")->required();

    // integrate
    auto* integrate_cmd = app.add_subcommand("integrate", "weighted sum of node values");
    std::string i_file, i_values;
    integrate_cmd->add_option("--cubature", i_file, "cubature file")->required();
    integrate_cmd->add_option("--values", i_values, "f(x_j) values, one per line")->required();

    // experiment
    auto* experiment = app.add_subcommand("experiment", "sampling-cost experiment");
    experiment->configurable();
    std::string e_grid, e_cell, e_dir = "experiment-out", e_nlist = "250,1000";
    std::int64_t e_seed = -1;
    int e_trials = 20, e_threshold = 10, e_jobs = 0, e_s = 2, e_m = 2, e_reps = 200;
    long e_lo = 0, e_hi = 10000;
    bool e_csv = false, e_mc = false;
    experiment->add_option("--grid", e_grid, "cells, e.g. 1..3x1..3");
    experiment->add_option("--cell", e_cell, "single cell s,m");
    experiment->add_option("--seed", e_seed, "master seed");
    experiment->add_option("--trials", e_trials, "trials per probe");
    experiment->add_option("--threshold", e_threshold, "successes needed per probe");
    experiment->add_option("--lo", e_lo, "search lower bound (0 = d_{s,m})");
    experiment->add_option("--hi", e_hi, "search upper bound");
    experiment->add_option("--jobs", e_jobs, "parallel trials (0 = runtime default)");
    experiment->add_option("--out-dir", e_dir, "output directory");
    experiment->add_flag("--csv", e_csv, "also emit table.csv");
    experiment->add_flag("--mc-error", e_mc, "run the Monte Carlo error study instead");
    experiment->add_option("--dim", e_s, "dimension for --mc-error");
    experiment->add_option("--degree", e_m, "degree for --mc-error");
    experiment->add_option("--reps", e_reps, "repetitions for --mc-error");
    experiment->add_option("--n-list", e_nlist, "sample counts for --mc-error");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*construct)
            return run_construct(c_s, c_m, c_measure, c_moments, c_seed, c_stream, c_tol,
                                 c_init, c_growth, c_max, c_out);
        if (*compress)
            return run_compress(p_s, p_m, p_samples, p_measure, p_count, p_seed, p_stream,
                                p_tol, p_out);
        if (*verify_cmd) return run_verify(v_file, v_measure, v_moments, v_degree, v_tol);
        if (*product)
            return run_product(r_in, r_k, r_reduce, r_degree, r_max_nodes, r_tol, r_out);
        if (*integrate_cmd) return run_integrate(i_file, i_values);
        if (*experiment)
            return run_experiment(e_grid, e_cell, e_seed, e_trials, e_threshold, e_lo, e_hi,
                                  e_jobs, e_dir, e_csv, e_mc, e_s, e_m, e_reps, e_nlist);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const InfeasibleError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    } catch (const PoolExhaustedError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitPoolExhausted;
    } catch (const UnstableError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUnstable;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitError;
    }
    return kExitUsage;
}
