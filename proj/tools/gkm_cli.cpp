#include "gkm/gkm.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace gkm;

enum Exit { ok = 0, domain = 1, mismatch = 2, io = 3 };

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Job {
    std::string matrix_path;
    std::string lambda_text;
    std::string mu_text;
    std::size_t depth = 3;
    std::size_t height_bound = unbounded;
    std::string output;
    std::string dot_path;
    bool no_zero_diag = false;
    bool parallel = false;
    unsigned seed = 0;
};

MatrixFile load_matrix(const Job& job) {
    if (job.matrix_path.empty()) throw std::invalid_argument("a matrix file is required (-m)");
    std::ifstream in(job.matrix_path);
    if (!in) throw IoError("cannot read '" + job.matrix_path + "'");
    return parse_matrix_file(in);
}

std::vector<Rational> parse_pairings(const std::string& text, std::size_t rank, const std::string& what) {
    std::istringstream in(text);
    std::vector<Rational> out;
    std::string tok;
    while (in >> tok) out.push_back(rational_from(tok));
    if (out.size() != rank)
        throw std::invalid_argument(what + " needs " + std::to_string(rank) + " pairings, got " + std::to_string(out.size()));
    return out;
}

ContextPtr build_context(const Job& job) {
    MatrixFile mf = load_matrix(job);
    auto bases = mf.bases;
    const std::size_t n = mf.entries.size();
    if (!job.lambda_text.empty()) bases.push_back({"lambda", parse_pairings(job.lambda_text, n, "lambda"), true});
    if (!job.mu_text.empty()) bases.push_back({"mu", parse_pairings(job.mu_text, n, "mu"), true});
    return make_context(validate_matrix(mf.entries, !job.no_zero_diag), std::move(bases));
}

Weight named(const WeightContext& ctx, const std::string& name) {
    if (!ctx.has_base(name)) throw std::invalid_argument("missing weight '" + name + "' (pass -l / -u or declare it in the file)");
    Weight w = ctx.base_weight(name);
    if (!is_P_plus(ctx, w)) throw std::domain_error("'" + name + "' is not dominant integral");
    return w;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out || !(out << text) || !out.flush()) throw IoError("cannot write '" + path + "'");
}

std::string indices(const std::vector<std::size_t>& v) {
    if (v.empty()) return "none";
    std::string s;
    for (auto i : v) s += (s.empty() ? "" : " ") + std::to_string(i + 1);
    return s;
}

std::string cmd_validate(const Job& job) {
    MatrixFile mf = load_matrix(job);
    auto ctx = make_context(validate_matrix(mf.entries, !job.no_zero_diag), mf.bases);
    std::ostringstream os;
    os << "valid Borcherds-Cartan matrix, rank " << ctx->rank() << "\n";
    os << "real indices: " << indices(ctx->matrix().real_indices()) << "\n";
    os << "imaginary indices: " << indices(ctx->matrix().imaginary_indices()) << "\n";
    for (auto& b : ctx->bases()) {
        os << "base " << b.name << ":";
        for (auto& p : b.pairings) os << " " << p.get_str();
        os << (b.integral ? "" : " (non-integral)") << "\n";
    }
    return os.str();
}

std::string cmd_orbit(const Job& job) {
    auto cp = build_context(job);
    const Weight lambda = named(*cp, "lambda");
    std::ostringstream os;
    for (auto& w : orbit(*cp, lambda, job.depth))
        os << depth_below(lambda, w).get_str() << " : " << format_weight(*cp, w) << "\n";
    return os.str();
}

std::string cmd_enumerate(const Job& job, bool dot_only) {
    auto cp = build_context(job);
    const WeightContext& ctx = *cp;
    auto g = enumerate(ctx, named(ctx, "lambda"), job.depth, job.parallel);
    std::function<std::string(const GLSPath&)> label = [&](const GLSPath& p) { return format_breaks(p); };
    const std::string dot = export_dot(g, label);
    if (dot_only) return dot;
    if (!job.dot_path.empty()) write_file(job.dot_path, dot);
    std::ostringstream os;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const auto& nd = g.nodes[k];
        os << "n" << k << " depth " << nd.depth << (nd.frontier ? " frontier" : "") << " " << format_gls(ctx, nd.element)
           << "\n";
    }
    OrbitSearch search(ctx, job.height_bound);
    std::size_t verified = 0;
    for (auto& nd : g.nodes) verified += verify_gls(ctx, nd.element, search).ok;
    os << "nodes: " << g.size() << " edges: " << g.edge_count() << " verified: " << verified << "/" << g.size() << "\n";
    return os.str();
}

std::string cmd_char(const Job& job) {
    auto cp = build_context(job);
    auto g = enumerate(*cp, named(*cp, "lambda"), job.depth, job.parallel);
    return format_character(*cp, char_of_graph(g));
}

int cmd_compare_char(const Job& job, std::string& out) {
    auto cp = build_context(job);
    auto rep = compare_characters(*cp, named(*cp, "lambda"), job.depth, job.parallel);
    out = rep.text() + "\n";
    return rep.equal ? ok : mismatch;
}

int cmd_tensor_iso(const Job& job, std::string& out) {
    auto cp = build_context(job);
    const WeightContext& ctx = *cp;
    const Weight lambda = named(ctx, "lambda"), mu = named(ctx, "mu");
    auto tg = tensor_graph(ctx, lambda, mu, job.depth, job.parallel);
    auto pg = enumerate(ctx, lambda + mu, job.depth, job.parallel);
    auto res = hw_crystal_isomorphic_explain(tg, pg);
    std::ostringstream os;
    os << "tensor nodes: " << tg.size() << " shape-sum nodes: " << pg.size() << "\n";
    os << (res ? "isomorphic" : "not isomorphic: " + res.reason) << "\n";
    out = os.str();
    return res ? ok : mismatch;
}

std::string cmd_binf(const Job& job) {
    auto cp = build_context(job);
    const WeightContext& ctx = *cp;
    auto g = bj_graph(ctx, GeneratorSequence::cyclic(ctx.rank()), job.depth);
    std::ostringstream os;
    for (std::size_t k = 0; k < g.size(); ++k) {
        os << "n" << k << " [";
        for (std::size_t j = 0; j < g.nodes[k].element.size(); ++j) os << (j ? " " : "") << g.nodes[k].element[j];
        os << "] wt=" << format_weight(ctx, g.nodes[k].wt) << "\n";
    }
    os << "nodes: " << g.size() << "\n";
    return os.str();
}

int cmd_suite(const Job& job, std::string& out) {
    std::ostringstream os;
    SuiteOptions opt;
    opt.depth = job.depth;
    opt.seed = job.seed;
    bool good = run_suite(os, opt);
    os << (good ? "suite passed" : "suite FAILED") << "\n";
    out = os.str();
    return good ? ok : mismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Path-model crystals for Borcherds-Cartan matrices"};
    app.require_subcommand(1);
    Job job;
    auto common = [&](CLI::App* c, bool weights) {
        c->add_option("-m,--matrix", job.matrix_path, "matrix file");
        if (weights) {
            c->add_option("-l,--lambda", job.lambda_text, "pairings of lambda, space separated");
            c->add_option("-u,--mu", job.mu_text, "pairings of mu, space separated");
        }
        c->add_option("-d,--depth", job.depth, "truncation depth");
        c->add_option("--height-bound", job.height_bound, "largest root height used by chain searches");
        c->add_option("-o,--output", job.output, "write the result here instead of stdout");
        c->add_flag("--no-zero-diag", job.no_zero_diag, "reject a_ii = 0");
        c->add_flag("--parallel", job.parallel, "expand BFS levels in parallel");
        c->add_option("--seed", job.seed, "seed for sampled checks");
    };
    auto* validate = app.add_subcommand("validate", "check a matrix file");
    common(validate, false);
    auto* orbit_cmd = app.add_subcommand("orbit", "orbit of lambda under the monoid");
    common(orbit_cmd, true);
    auto* enumerate_cmd = app.add_subcommand("enumerate", "GLS crystal of lambda");
    common(enumerate_cmd, true);
    enumerate_cmd->add_option("--export-dot", job.dot_path, "also write the crystal graph as DOT");
    auto* dot_cmd = app.add_subcommand("export-dot", "GLS crystal of lambda as DOT");
    common(dot_cmd, true);
    auto* char_cmd = app.add_subcommand("char", "truncated character of the crystal");
    common(char_cmd, true);
    auto* cmp_cmd = app.add_subcommand("compare-char", "crystal character against the character formula");
    common(cmp_cmd, true);
    auto* iso_cmd = app.add_subcommand("tensor-iso", "tensor closure of lambda, mu against the crystal of lambda+mu");
    common(iso_cmd, true);
    auto* binf_cmd = app.add_subcommand("binf", "truncated B_J(infinity) for the cyclic sequence");
    common(binf_cmd, false);
    auto* suite_cmd = app.add_subcommand("suite", "invariant checks on the bundled matrices");
    common(suite_cmd, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : domain;
    }

    try {
        std::string out;
        int code = ok;
        if (*validate) out = cmd_validate(job);
        else if (*orbit_cmd) out = cmd_orbit(job);
        else if (*enumerate_cmd) out = cmd_enumerate(job, false);
        else if (*dot_cmd) out = cmd_enumerate(job, true);
        else if (*char_cmd) out = cmd_char(job);
        else if (*cmp_cmd) code = cmd_compare_char(job, out);
        else if (*iso_cmd) code = cmd_tensor_iso(job, out);
        else if (*binf_cmd) out = cmd_binf(job);
        else if (*suite_cmd) code = cmd_suite(job, out);
        if (job.output.empty()) std::cout << out;
        else write_file(job.output, out);
        return code;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return io;
    } catch (const MatrixError& e) {
        std::cerr << "error: " << e.label() << ": " << e.what() << "\n";
        return domain;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return domain;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return domain;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return domain;
    }
}
