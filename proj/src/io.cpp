#include "mccub/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mccub {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

const char* provenance_name(CubatureProvenance p) {
    switch (p) {
    case CubatureProvenance::exact_construction: return "exact_construction";
    case CubatureProvenance::subsampled: return "subsampled";
    case CubatureProvenance::product: return "product";
    }
    return "?";
}

[[noreturn]] void bad(const std::string& what) {
    throw std::runtime_error("cubature file: " + what);
}

} // namespace

std::string serialize_cubature(const Cubature& cub) {
    std::ostringstream out;
    out << "mccub cubature 1\n";
    out << "s " << cub.dim() << "\n";
    out << "n " << cub.node_count() << "\n";
    if (cub.basis.kind() == BasisKind::monomial) {
        out << "basis monomial " << cub.basis.input_dim() << " " << cub.basis.max_degree()
            << "\n";
    } else {
        out << "basis tabulated " << cub.basis.input_dim();
        for (const auto& name : cub.basis.member_names()) out << " " << name;
        out << "\n";
    }
    out << "provenance " << provenance_name(cub.provenance) << "\n";
    if (cub.provenance == CubatureProvenance::exact_construction)
        out << "pool_used " << cub.pool_used << "\n";
    if (cub.provenance == CubatureProvenance::product)
        out << "fold " << cub.product_fold << "\n";
    out << "seed " << cub.seed << "\n";
    out << "stream " << cub.stream << "\n";
    out << "residual " << format_double(cub.residual) << "\n";
    if (cub.target.empty()) {
        out << "target none\n";
    } else {
        out << "target";
        for (double v : cub.target) out << " " << format_double(v);
        out << "\n";
    }
    out << "nodes\n";
    for (std::size_t j = 0; j < cub.node_count(); ++j) {
        for (int c = 0; c < cub.dim(); ++c) {
            if (c) out << " ";
            out << format_double(cub.nodes(j, c));
        }
        out << " " << format_double(cub.weights[j]) << "\n";
    }
    return out.str();
}

void write_cubature(const std::filesystem::path& path, const Cubature& cub) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << serialize_cubature(cub);
}

Cubature read_cubature(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line) || line != "mccub cubature 1")
        bad("unrecognized header in " + path.string());

    Cubature cub;
    int s = -1;
    long n = -1;
    bool have_basis = false, have_target = false;
    while (std::getline(in, line) && line != "nodes") {
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "s") {
            ls >> s;
        } else if (key == "n") {
            ls >> n;
        } else if (key == "basis") {
            std::string kind;
            ls >> kind;
            if (kind == "monomial") {
                int bs = 0, bm = 0;
                ls >> bs >> bm;
                cub.basis = TestFunctionBasis::monomials(bs, bm);
            } else if (kind == "tabulated") {
                int bs = 0;
                ls >> bs;
                std::vector<std::string> names;
                std::string name;
                while (ls >> name) names.push_back(name);
                cub.basis = TestFunctionBasis::tabulated(bs, std::move(names));
            } else {
                bad("unknown basis kind '" + kind + "'");
            }
            have_basis = true;
        } else if (key == "provenance") {
            std::string p;
            ls >> p;
            if (p == "exact_construction")
                cub.provenance = CubatureProvenance::exact_construction;
            else if (p == "subsampled")
                cub.provenance = CubatureProvenance::subsampled;
            else if (p == "product")
                cub.provenance = CubatureProvenance::product;
            else
                bad("unknown provenance '" + p + "'");
        } else if (key == "pool_used") {
            ls >> cub.pool_used;
        } else if (key == "fold") {
            ls >> cub.product_fold;
        } else if (key == "seed") {
            ls >> cub.seed;
        } else if (key == "stream") {
            ls >> cub.stream;
        } else if (key == "residual") {
            ls >> cub.residual;
        } else if (key == "target") {
            std::string first;
            ls >> first;
            if (first != "none") {
                cub.target.push_back(std::stod(first));
                double v;
                while (ls >> v) cub.target.push_back(v);
                have_target = true;
            }
            ls.clear(); // the value loop stops on eof
        } else {
            bad("unknown key '" + key + "'");
        }
        if (ls.fail()) bad("malformed line '" + line + "'");
    }
    if (s < 1 || n < 0) bad("missing dimensions");
    if (!have_basis) bad("missing basis descriptor");

    cub.nodes = Matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(s));
    cub.weights.resize(static_cast<std::size_t>(n));
    for (long j = 0; j < n; ++j) {
        if (!std::getline(in, line)) bad("truncated node list");
        std::istringstream ls(line);
        for (int c = 0; c < s; ++c)
            if (!(ls >> cub.nodes(static_cast<std::size_t>(j), c))) bad("malformed node line");
        if (!(ls >> cub.weights[static_cast<std::size_t>(j)])) bad("missing weight");
    }

    // structural invariants
    double sum = 0.0;
    for (double w : cub.weights) {
        if (!(w > 0.0)) bad("non-positive weight");
        sum += w;
    }
    if (n > 0 && std::abs(sum - 1.0) > 1e-12) bad("weights do not sum to 1");
    if (cub.provenance != CubatureProvenance::product) {
        if (static_cast<std::size_t>(n) > cub.basis.size())
            bad("node count exceeds basis size");
        if (have_target) {
            if (cub.target.size() != cub.basis.size()) bad("target length mismatch");
            if (cub.target[0] != 1.0) bad("target[0] must be 1");
        }
        if (s != cub.basis.input_dim()) bad("node dimension does not match basis");
    }
    return cub;
}

void write_moments(const std::filesystem::path& path, const MomentVector& mv) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "# moment vector, one value per line\n";
    for (double v : mv.values) out << format_double(v) << "\n";
}

std::string serialize_record(const ExperimentRecord& rec) {
    std::ostringstream out;
    out << "mccub experiment-record 1\n";
    out << "s " << rec.s << "\n";
    out << "m " << rec.m << "\n";
    out << "d " << rec.d << "\n";
    out << "trials " << rec.trials << "\n";
    out << "threshold " << rec.success_threshold << "\n";
    out << "lo " << rec.search_lo << "\n";
    out << "hi " << rec.search_hi << "\n";
    out << "master_seed " << rec.master_seed << "\n";
    out << "estimated_N " << rec.estimated_n << "\n";
    out << "exceeded_hi " << (rec.exceeded_hi ? 1 : 0) << "\n";
    out << "probes " << rec.probes.size() << "\n";
    for (const auto& p : rec.probes)
        out << "probe " << p.n << " " << p.successes << " " << p.seed_base << " "
            << p.unstable << "\n";
    return out.str();
}

void write_record(const std::filesystem::path& path, const ExperimentRecord& rec) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << serialize_record(rec);
}

} // namespace mccub
