// ramlab command-line front-end: reproducible experiment runner and query
// interface over the library modules. All floating-point output is fixed at
// 12 decimals and rationals are emitted as "num/den" strings, so identical
// invocations produce byte-identical output (trial runtimes excepted).
//
// Exit codes: 0 success, 1 invalid input or unknown command, 2 resource-guard
// violation (see RAMLAB_GUARD_LIMIT).
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ramlab/common.hpp"
#include "ramlab/core_graphs.hpp"
#include "ramlab/expansion_metrics.hpp"
#include "ramlab/free_words.hpp"
#include "ramlab/growth_stats.hpp"
#include "ramlab/moebius.hpp"
#include "ramlab/primitivity.hpp"
#include "ramlab/random_covers.hpp"
#include "ramlab/spectral.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using namespace ramlab;

// ---- deterministic JSON assembly -------------------------------------------
// nlohmann::json is used for *parsing* inputs; output JSON is assembled by
// hand so that float formatting stays pinned at 12 decimals.

std::string jesc(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (const char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    return out;
}

std::string jnum(double x) { return fmt12(x); }

std::string jopt(const std::optional<double>& x) {
    return x ? jnum(*x) : std::string("null");
}

std::string jarr(const std::vector<double>& xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += jnum(xs[i]);
    }
    return out + "]";
}

std::string core_graph_json(const CoreGraph& g) {
    std::string out = "{\"num_vertices\":" + std::to_string(g.num_vertices) +
                      ",\"basepoint\":" + std::to_string(g.basepoint) +
                      ",\"edges\":[";
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (e) out += ',';
        out += '[' + std::to_string(g.edges[e].origin) + ',' +
               std::to_string(g.edges[e].terminus) + ',' +
               std::to_string(g.edges[e].label) + ']';
    }
    return out + "]}";
}

// ---- shared input plumbing --------------------------------------------------

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << text;
}

// Base graphs are named inline ("bouquet:2", "cycle:5", "complete:4",
// "parallel:4", "single") or loaded from a JSON file path.
BaseGraph parse_base_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    int arg = 0;
    if (colon != std::string::npos) {
        try {
            arg = std::stoi(spec.substr(colon + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("base spec: bad numeric argument in '" + spec + "'");
        }
    }
    if (head == "bouquet") return BaseGraph::bouquet(arg);
    if (head == "cycle") return BaseGraph::cycle(arg);
    if (head == "complete") return BaseGraph::complete(arg);
    if (head == "parallel") return BaseGraph::parallel_edges(arg);
    if (head == "single") return BaseGraph::single_edge();
    if (std::ifstream(spec).good()) return base_graph_from_json(read_file(spec));
    throw std::invalid_argument(
        "base spec: expected bouquet:K, cycle:N, complete:M, parallel:C, single, "
        "or a JSON file path; got '" + spec + "'");
}

// A graph file holds either a cover ("sigma" present) or a plain multigraph.
struct LoadedGraph {
    MultiGraph graph;
    std::optional<CoverGraph> cover;
};

LoadedGraph load_graph_file(const std::string& path) {
    const std::string text = read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("graph file " + path + ": " + e.what());
    }
    LoadedGraph loaded;
    if (j.contains("sigma")) {
        loaded.cover = cover_from_json(text);
        loaded.graph = loaded.cover->to_multigraph();
    } else {
        loaded.graph = multigraph_from_json(text);
    }
    return loaded;
}

// ---- subcommand configuration ----------------------------------------------

struct Options {
    std::string model = "perm";
    std::string base_spec;
    std::string graph_path;
    std::string results_path;
    std::string output_path;
    std::string word;
    std::string mode = "reduced";
    std::uint64_t seed = 0;
    int n = 0;
    int d = 0;
    int k = 0;
    int t = 0;
    int trials = 0;
    int depth = 100;
    int vertex_guard = kDefaultPartitionVertexGuard;
    int subset_guard = kDefaultSubsetVertexGuard;
    std::vector<int> n_values;
    bool markov = false;
    bool no_crit = false;
    std::optional<double> c;
    std::optional<double> rho;
    std::optional<int> rank;
    std::optional<double> threshold;
};

// ---- sample ------------------------------------------------------------------

std::string run_sample(const Options& opt) {
    Rng rng(opt.seed);
    if (opt.model == "perm") {
        if (opt.n <= 0 || opt.d <= 0)
            throw std::invalid_argument("sample --model perm requires --n and --d");
        return cover_to_json(sample_permutation_model(opt.n, opt.d, rng)) + "\n";
    }
    if (opt.model == "matching") {
        if (opt.n <= 0 || opt.d <= 0)
            throw std::invalid_argument("sample --model matching requires --n and --d");
        return multigraph_to_json(sample_matching_model(opt.n, opt.d, rng)) + "\n";
    }
    if (opt.model == "cover") {
        if (opt.base_spec.empty() || opt.n <= 0)
            throw std::invalid_argument("sample --model cover requires --base and --n");
        return cover_to_json(sample_cover(parse_base_spec(opt.base_spec), opt.n, rng)) + "\n";
    }
    throw std::invalid_argument("sample: unknown model '" + opt.model + "'");
}

// ---- spectrum ----------------------------------------------------------------

std::string run_spectrum(const Options& opt) {
    const LoadedGraph loaded = load_graph_file(opt.graph_path);
    std::string out = "{\"version\":\"" + std::string(kVersion) + "\"";
    out += ",\"num_vertices\":" + std::to_string(loaded.graph.num_vertices);
    if (loaded.cover) {
        const SpectrumReport report = spectrum_report(*loaded.cover);
        out += ",\"eigenvalues\":" + jarr(report.eigenvalues);
        out += ",\"lambda_nontrivial\":" + jopt(report.lambda_nontrivial);
        out += ",\"new_eigenvalues\":" + jarr(report.new_eigenvalues);
        out += ",\"lambda_a_new\":" + jopt(report.lambda_a_new);
        out += ",\"lambda_m_new\":" + jopt(report.lambda_m_new);
    } else {
        const std::vector<double> values =
            symmetric_spectrum(operator_matrix(loaded.graph, OperatorKind::Adjacency));
        std::optional<double> nontrivial;
        if (loaded.graph.num_vertices > 1 && loaded.graph.is_regular())
            nontrivial = lambda_nontrivial(loaded.graph);
        out += ",\"eigenvalues\":" + jarr(values);
        out += ",\"lambda_nontrivial\":" + jopt(nontrivial);
        out += ",\"new_eigenvalues\":[],\"lambda_a_new\":null,\"lambda_m_new\":null";
    }
    return out + "}\n";
}

// ---- prim-rank / crit ---------------------------------------------------------

std::string pi_json(const PrimitivityReport& report) {
    return report.is_finite() ? std::to_string(*report.pi) : std::string("\"inf\"");
}

std::string crit_array_json(const PrimitivityReport& report) {
    std::string out = "[";
    for (std::size_t i = 0; i < report.crit.size(); ++i) {
        if (i) out += ',';
        out += core_graph_json(report.crit[i]);
    }
    return out + "]";
}

std::string run_prim_rank(const Options& opt, bool crit_only) {
    const ReducedWord w = parse_reduced(opt.word, opt.k);
    const PrimitivityReport report = primitivity_rank(w, opt.vertex_guard);
    std::string out = "{\"version\":\"" + std::string(kVersion) + "\"";
    out += ",\"word\":\"" + jesc(word_to_string(w)) + "\"";
    out += ",\"k\":" + std::to_string(w.alphabet_size);
    if (crit_only) {
        out += ",\"count\":" + std::to_string(report.crit.size());
    } else {
        out += ",\"pi\":" + pi_json(report);
    }
    out += ",\"crit\":" + crit_array_json(report);
    return out + "}\n";
}

// ---- moebius -------------------------------------------------------------------

std::string rational_matrix_json(const MoebiusTable& table,
                                 const std::vector<std::vector<std::vector<Rational>>>& m) {
    std::string out = "[";
    for (std::size_t ni = 0; ni < table.n_values.size(); ++ni) {
        if (ni) out += ',';
        out += '[';
        const std::size_t count = table.interval.nodes.size();
        for (std::size_t i = 0; i < count; ++i) {
            if (i) out += ',';
            out += '[';
            for (std::size_t j = 0; j < count; ++j) {
                if (j) out += ',';
                out += '"' + rational_string(m[ni][i][j]) + '"';
            }
            out += ']';
        }
        out += ']';
    }
    return out + "]";
}

std::string run_moebius(const Options& opt) {
    if (opt.n_values.empty())
        throw std::invalid_argument("moebius requires at least one --n value");
    const ReducedWord w = parse_reduced(opt.word, opt.k);
    const CoreGraph root = from_words(w.alphabet_size, {w});
    const QuotientInterval interval = interval_poset(root, opt.vertex_guard);
    const MoebiusTable table = moebius_invert(interval, opt.n_values);

    std::string out = "{\"version\":\"" + std::string(kVersion) + "\"";
    out += ",\"word\":\"" + jesc(word_to_string(w)) + "\"";
    out += ",\"nodes\":[";
    for (std::size_t i = 0; i < interval.nodes.size(); ++i) {
        if (i) out += ',';
        out += core_graph_json(interval.nodes[i]);
    }
    out += "],\"order\":[";
    for (std::size_t i = 0; i < interval.nodes.size(); ++i) {
        if (i) out += ',';
        out += '[';
        for (std::size_t j = 0; j < interval.nodes.size(); ++j) {
            if (j) out += ',';
            out += interval.leq[i][j] ? '1' : '0';
        }
        out += ']';
    }
    out += "],\"n_values\":[";
    for (std::size_t i = 0; i < table.n_values.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(table.n_values[i]);
    }
    out += ']';
    out += ",\"phi\":" + rational_matrix_json(table, table.phi);
    out += ",\"l\":" + rational_matrix_json(table, table.l);
    out += ",\"r\":" + rational_matrix_json(table, table.r);
    out += ",\"c\":" + rational_matrix_json(table, table.c);
    return out + "}\n";
}

// ---- classify ------------------------------------------------------------------

std::string run_classify(const Options& opt) {
    if (opt.k <= 0 || opt.t < 0)
        throw std::invalid_argument("classify requires --k >= 1 and --t >= 0");
    WordMode mode;
    if (opt.mode == "raw") {
        mode = WordMode::Raw;
    } else if (opt.mode == "reduced") {
        mode = WordMode::Reduced;
    } else {
        throw std::invalid_argument("classify: --mode must be raw or reduced");
    }
    return classify_words(opt.k, opt.t, mode, !opt.no_crit).to_csv();
}

// ---- verify-bound ----------------------------------------------------------------

std::string bound_spec_json(const BoundSpec& spec) {
    std::string out = "\"c\":" + jnum(spec.c) + ",\"terms\":" + jarr(spec.terms);
    out += ",\"max_term\":" + jnum(spec.max_term);
    out += ",\"argmax\":" + std::to_string(spec.argmax);
    return out;
}

std::string run_verify_bound(const Options& opt) {
    std::string out = "{\"version\":\"" + std::string(kVersion) + "\"";
    if (opt.rho || opt.rank) {
        if (!(opt.rho && opt.rank))
            throw std::invalid_argument("verify-bound: --rho and --rank must be given together");
        out += ",\"rank\":" + std::to_string(*opt.rank);
        out += ",\"rho\":" + jnum(*opt.rho);
        if (opt.c) {
            out += ',' + bound_spec_json(general_bound_evaluator(*opt.rank, *opt.rho, *opt.c));
        } else {
            // The max of an increasing term (c * rho) and decreasing terms is
            // unimodal in c; same ternary search the d-regular optimizer uses.
            double lo = 1.0 + 1e-12, hi = 3.0;
            for (int it = 0; it < 300; ++it) {
                const double m1 = lo + (hi - lo) / 3.0;
                const double m2 = hi - (hi - lo) / 3.0;
                if (general_bound_evaluator(*opt.rank, *opt.rho, m1).max_term <
                    general_bound_evaluator(*opt.rank, *opt.rho, m2).max_term)
                    hi = m2;
                else
                    lo = m1;
            }
            const double best = 0.5 * (lo + hi);
            out += ",\"c\":" + jnum(best);
            out += ",\"bound\":" +
                   jnum(general_bound_evaluator(*opt.rank, *opt.rho, best).max_term);
        }
    } else if (opt.d > 0) {
        out += ",\"d\":" + std::to_string(opt.d);
        if (opt.c) {
            out += ',' + bound_spec_json(bound_evaluator(opt.d, *opt.c));
        } else {
            const OptimizedBound best = optimize_bound(opt.d);
            out += ",\"c\":" + jnum(best.c);
            out += ",\"bound\":" + jnum(best.value);
        }
    } else {
        throw std::invalid_argument("verify-bound requires --d or (--rho and --rank)");
    }
    return out + "}\n";
}

// ---- rho ---------------------------------------------------------------------------

std::string run_rho(const Options& opt) {
    const BaseGraph base = parse_base_spec(opt.base_spec);
    const OperatorKind kind = opt.markov ? OperatorKind::Markov : OperatorKind::Adjacency;
    const RhoEstimate estimate = rho_universal_cover(base, opt.depth, kind);
    std::string out = "{\"version\":\"" + std::string(kVersion) + "\"";
    out += ",\"base\":\"" + jesc(opt.base_spec) + "\"";
    out += ",\"depth\":" + std::to_string(opt.depth);
    out += ",\"operator\":\"" + std::string(opt.markov ? "markov" : "adjacency") + "\"";
    out += ",\"estimate\":" + jnum(estimate.estimate);
    out += ",\"exact\":" + jopt(estimate.exact);
    return out + "}\n";
}

// ---- expansion ----------------------------------------------------------------------

std::string run_expansion(const Options& opt) {
    const LoadedGraph loaded = load_graph_file(opt.graph_path);
    const ExpansionReport report = inequality_suite(loaded.graph, opt.subset_guard);
    std::string out = "{\"version\":\"" + std::string(kVersion) + "\"";
    out += ",\"num_vertices\":" + std::to_string(loaded.graph.num_vertices);
    out += ",\"cheeger\":" + jnum(report.cheeger);
    out += ",\"conductance\":" + jnum(report.conductance);
    out += ",\"laplacian_nu2\":" + jnum(report.laplacian_nu2);
    out += ",\"markov_mu2\":" + jnum(report.markov_mu2);
    out += ",\"mixing_max_violation\":" + jnum(report.mixing_max_violation);
    return out + "}\n";
}

// ---- trial-sweep ----------------------------------------------------------------------

std::string run_trial_sweep(const Options& opt) {
    if (opt.trials <= 0) throw std::invalid_argument("trial-sweep requires --trials >= 1");
    std::optional<BaseGraph> base;
    if (opt.model == "cover") {
        if (opt.base_spec.empty())
            throw std::invalid_argument("trial-sweep --model cover requires --base");
        base = parse_base_spec(opt.base_spec);
    } else if (opt.model == "perm" || opt.model == "matching") {
        if (opt.n <= 0 || opt.d <= 0)
            throw std::invalid_argument("trial-sweep requires --n and --d for this model");
    } else {
        throw std::invalid_argument("trial-sweep: unknown model '" + opt.model + "'");
    }

    std::string out;
    for (int trial = 0; trial < opt.trials; ++trial) {
        const std::uint64_t seed = derive_seed(opt.seed, static_cast<std::uint64_t>(trial));
        Rng rng(seed);
        const auto start = std::chrono::steady_clock::now();
        double lambda_a = 0.0, lambda_m = 0.0;
        if (opt.model == "matching") {
            // Not a cover: the trivial eigenvalue d is the only old one, so the
            // largest non-trivial eigenvalue plays the role of lambda_new.
            const MultiGraph g = sample_matching_model(opt.n, opt.d, rng);
            lambda_a = lambda_nontrivial(g).value();
            lambda_m = lambda_a / opt.d;
        } else {
            const CoverGraph cover = opt.model == "perm"
                                         ? sample_permutation_model(opt.n, opt.d, rng)
                                         : sample_cover(*base, opt.n, rng);
            lambda_a = max_new_eigenvalue(cover, OperatorKind::Adjacency).value();
            lambda_m = max_new_eigenvalue(cover, OperatorKind::Markov).value();
        }
        const auto elapsed = std::chrono::steady_clock::now() - start;
        const long long ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
        out += "{\"seed\":" + std::to_string(seed);
        out += ",\"lambda_A_new\":" + jnum(lambda_a);
        out += ",\"lambda_M_new\":" + jnum(lambda_m);
        out += ",\"runtime_ms\":" + std::to_string(ms) + "}\n";
    }
    return out;
}

// ---- report -----------------------------------------------------------------------------

std::string run_report(const Options& opt) {
    const std::string text = read_file(opt.results_path);
    std::vector<double> lambdas;
    std::istringstream lines(text);
    std::string line;
    int line_number = 0;
    while (std::getline(lines, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const nlohmann::json j = nlohmann::json::parse(line);
            lambdas.push_back(j.at("lambda_A_new").get<double>());
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument("results line " + std::to_string(line_number) +
                                        ": " + e.what());
        }
    }
    std::string out = "count,lambda_a_new_min,lambda_a_new_median,lambda_a_new_max,pass_rate\n";
    if (lambdas.empty()) return out;
    std::sort(lambdas.begin(), lambdas.end());
    const std::size_t count = lambdas.size();
    const double median = count % 2 == 1
                              ? lambdas[count / 2]
                              : 0.5 * (lambdas[count / 2 - 1] + lambdas[count / 2]);
    std::string pass_rate;
    if (opt.threshold) {
        const auto passing = std::count_if(lambdas.begin(), lambdas.end(),
                                           [&](double x) { return x < *opt.threshold; });
        pass_rate = jnum(static_cast<double>(passing) / static_cast<double>(count));
    }
    out += std::to_string(count) + ',' + jnum(lambdas.front()) + ',' + jnum(median) +
           ',' + jnum(lambdas.back()) + ',' + pass_rate + "\n";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ramlab: core graphs, primitivity ranks, Moebius tables, random covers, "
                 "and new-eigenvalue experiments"};
    app.set_version_flag("--version", std::string("ramlab ") + kVersion);
    app.require_subcommand(1);

    Options opt;

    CLI::App* sample = app.add_subcommand("sample", "Sample a graph and emit it as JSON");
    sample->add_option("--model", opt.model, "perm | matching | cover")->required();
    sample->add_option("--n", opt.n, "sheets / vertices")->check(CLI::PositiveNumber);
    sample->add_option("--d", opt.d, "degree")->check(CLI::PositiveNumber);
    sample->add_option("--base", opt.base_spec, "base graph spec or JSON path");
    sample->add_option("--seed", opt.seed, "RNG seed")->required();
    sample->add_option("--output", opt.output_path, "write here instead of stdout");

    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "Full spectrum of a graph file; new eigenvalues too for covers");
    spectrum->add_option("--graph", opt.graph_path, "graph JSON file")->required();
    spectrum->add_option("--output", opt.output_path, "write here instead of stdout");

    CLI::App* prim_rank = app.add_subcommand(
        "prim-rank", "Primitivity rank and critical subgroups of a word");
    prim_rank->add_option("word", opt.word, "a..z generators, A..Z inverses")->required();
    prim_rank->add_option("--k", opt.k, "alphabet size (default: inferred)")
        ->check(CLI::PositiveNumber);
    prim_rank->add_option("--guard", opt.vertex_guard, "vertex-partition guard")
        ->check(CLI::PositiveNumber);

    CLI::App* crit = app.add_subcommand("crit", "Critical subgroup core graphs of a word");
    crit->add_option("word", opt.word, "a..z generators, A..Z inverses")->required();
    crit->add_option("--k", opt.k, "alphabet size (default: inferred)")
        ->check(CLI::PositiveNumber);
    crit->add_option("--guard", opt.vertex_guard, "vertex-partition guard")
        ->check(CLI::PositiveNumber);

    CLI::App* moebius = app.add_subcommand(
        "moebius", "Exact Phi/L/R/C tables over the quotient interval of a word");
    moebius->add_option("word", opt.word, "a..z generators, A..Z inverses")->required();
    moebius->add_option("--n", opt.n_values, "symmetric-group degree (repeatable)")
        ->required()
        ->check(CLI::PositiveNumber);
    moebius->add_option("--k", opt.k, "alphabet size (default: inferred)")
        ->check(CLI::PositiveNumber);
    moebius->add_option("--guard", opt.vertex_guard, "vertex-partition guard")
        ->check(CLI::PositiveNumber);
    moebius->add_option("--output", opt.output_path, "write here instead of stdout");

    CLI::App* classify = app.add_subcommand(
        "classify", "Histogram words of length t by primitivity rank (CSV)");
    classify->add_option("--k", opt.k, "alphabet size")->required()->check(CLI::PositiveNumber);
    classify->add_option("--t", opt.t, "word length")->required()
        ->check(CLI::NonNegativeNumber);
    classify->add_option("--mode", opt.mode, "raw | reduced (default reduced)");
    classify->add_flag("--no-crit", opt.no_crit, "skip critical-subgroup counting");
    classify->add_option("--output", opt.output_path, "write here instead of stdout");

    CLI::App* verify_bound = app.add_subcommand(
        "verify-bound", "Evaluate or optimize the trace-method eigenvalue bound");
    verify_bound->add_option("--d", opt.d, "degree (d-regular form)")
        ->check(CLI::PositiveNumber);
    verify_bound->add_option("--c", opt.c, "evaluate at this c instead of optimizing");
    verify_bound->add_option("--rho", opt.rho, "universal-cover spectral radius");
    verify_bound->add_option("--rank", opt.rank, "rank of the base graph")
        ->check(CLI::PositiveNumber);

    CLI::App* rho = app.add_subcommand(
        "rho", "Universal-cover spectral radius from a truncated-ball Perron value");
    rho->add_option("--base", opt.base_spec, "base graph spec or JSON path")->required();
    rho->add_option("--depth", opt.depth, "ball radius (default 100)")
        ->check(CLI::PositiveNumber);
    rho->add_flag("--markov", opt.markov, "Markov operator instead of adjacency");

    CLI::App* expansion = app.add_subcommand(
        "expansion", "Cheeger constants, spectral sandwiches, and expander mixing");
    expansion->add_option("--graph", opt.graph_path, "graph JSON file")->required();
    expansion->add_option("--guard", opt.subset_guard, "subset-scan vertex guard")
        ->check(CLI::PositiveNumber);
    expansion->add_option("--output", opt.output_path, "write here instead of stdout");

    CLI::App* trial_sweep = app.add_subcommand(
        "trial-sweep", "Sample graphs repeatedly and emit one JSON line per trial");
    trial_sweep->add_option("--model", opt.model, "perm | matching | cover")->required();
    trial_sweep->add_option("--n", opt.n, "sheets / vertices")->check(CLI::PositiveNumber);
    trial_sweep->add_option("--d", opt.d, "degree")->check(CLI::PositiveNumber);
    trial_sweep->add_option("--base", opt.base_spec, "base graph spec or JSON path");
    trial_sweep->add_option("--trials", opt.trials, "number of trials")
        ->required()
        ->check(CLI::PositiveNumber);
    trial_sweep->add_option("--seed", opt.seed, "master RNG seed")->required();
    trial_sweep->add_option("--output", opt.output_path, "write here instead of stdout");

    CLI::App* report = app.add_subcommand(
        "report", "Summarize a trial-sweep JSON-lines file as CSV");
    report->add_option("results", opt.results_path, "JSON-lines file")->required();
    report->add_option("--threshold", opt.threshold,
                       "pass rate counts lines with lambda_A_new below this");
    report->add_option("--output", opt.output_path, "write here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        std::string out;
        if (sample->parsed()) out = run_sample(opt);
        else if (spectrum->parsed()) out = run_spectrum(opt);
        else if (prim_rank->parsed()) out = run_prim_rank(opt, false);
        else if (crit->parsed()) out = run_prim_rank(opt, true);
        else if (moebius->parsed()) out = run_moebius(opt);
        else if (classify->parsed()) out = run_classify(opt);
        else if (verify_bound->parsed()) out = run_verify_bound(opt);
        else if (rho->parsed()) out = run_rho(opt);
        else if (expansion->parsed()) out = run_expansion(opt);
        else if (trial_sweep->parsed()) out = run_trial_sweep(opt);
        else if (report->parsed()) out = run_report(opt);
        write_output(out, opt.output_path);
    } catch (const GuardError& e) {
        std::cerr << "guard: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
