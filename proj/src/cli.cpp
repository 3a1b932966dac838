#include "supra/cli.hpp"

#include "supra/asymptotics.hpp"
#include "supra/engine.hpp"
#include "supra/error.hpp"
#include "supra/graph_analysis.hpp"
#include "supra/interlayer.hpp"
#include "supra/io.hpp"
#include "supra/sweeps.hpp"
#include "supra/versatility.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

namespace supra::cli {

namespace {

double parse_number(const std::string& s, const std::string& what) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw InvalidArgument(what + ": '" + s + "' is not a number");
    }
    if (pos != s.size()) throw InvalidArgument(what + ": '" + s + "' is not a number");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(item);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

InterlayerMatrix parse_blocks(const std::string& body, Index n_layers) {
    std::vector<Index> sizes;
    std::optional<double> intra, inter;
    for (const auto& part : split(body, ';')) {
        const auto eq = part.find('=');
        if (eq == std::string::npos) throw InvalidArgument("blocks spec: expected key=value, got '" + part + "'");
        const auto key = part.substr(0, eq);
        const auto value = part.substr(eq + 1);
        if (key == "sizes") {
            for (const auto& tok : split(value, ',')) {
                const double v = parse_number(tok, "blocks sizes");
                if (v < 1 || v != static_cast<double>(static_cast<Index>(v))) {
                    throw InvalidArgument("blocks sizes must be positive integers");
                }
                sizes.push_back(static_cast<Index>(v));
            }
        } else if (key == "intra") {
            intra = parse_number(value, "blocks intra");
        } else if (key == "inter") {
            inter = parse_number(value, "blocks inter");
        } else {
            throw InvalidArgument("blocks spec: unknown key '" + key + "'");
        }
    }
    if (sizes.empty() || !intra || !inter) throw InvalidArgument("blocks spec needs sizes, intra and inter");
    return block_communities(n_layers, sizes, *intra, *inter);
}

struct CommonArgs {
    std::string network;
    std::string node_labels;
    std::string layer_labels;
    std::optional<Index> nodes;
};

struct KindArgs {
    std::string kind = "eigenvector";
    double sigma = 0.85;
    std::string dangling = "only";
};

struct SolverArgs {
    double tol = 1e-10;
    std::size_t max_iter = 100'000;
    unsigned threads = 1;
};

void add_common(CLI::App* app, CommonArgs& a) {
    app->add_option("--network", a.network, "Edge list: layer i j [w]")->required()->check(CLI::ExistingFile);
    app->add_option("--node-labels", a.node_labels, "Node labels: index<TAB>label")->check(CLI::ExistingFile);
    app->add_option("--layer-labels", a.layer_labels, "Layer labels: layer-id<TAB>label")->check(CLI::ExistingFile);
    app->add_option("--nodes", a.nodes, "Node count (default: largest index in the edge list)");
}

void add_kind(CLI::App* app, KindArgs& a, bool required) {
    auto* k = app->add_option("--kind", a.kind, "eigenvector | hub | authority | pagerank")
                  ->check(CLI::IsMember({"eigenvector", "hub", "authority", "pagerank"}));
    if (required) k->required();
    app->add_option("--sigma", a.sigma, "PageRank damping in [0,1)");
    app->add_option("--dangling", a.dangling, "PageRank self-edges: only (dangling nodes) | all")
        ->check(CLI::IsMember({"only", "all"}));
}

void add_solver(CLI::App* app, SolverArgs& a) {
    app->add_option("--tol", a.tol, "Relative eigen-residual tolerance");
    app->add_option("--max-iter", a.max_iter, "Iteration limit");
    app->add_option("--threads", a.threads, "Worker threads (layer eigendata; sweeps without warm start)");
}

DanglingPolicy dangling_policy(const std::string& s) {
    return s == "all" ? DanglingPolicy::AllNodes : DanglingPolicy::DanglingOnly;
}

CentralityKind make_kind(const KindArgs& a) {
    if (!(a.sigma >= 0.0 && a.sigma < 1.0)) throw InvalidArgument("--sigma must lie in [0,1)");
    if (a.kind == "hub") return CentralityKind::hub();
    if (a.kind == "authority") return CentralityKind::authority();
    if (a.kind == "pagerank") return CentralityKind::pagerank(a.sigma, dangling_policy(a.dangling));
    return CentralityKind::eigenvector();
}

EigenOptions make_eigen(const SolverArgs& a) {
    if (!(a.tol > 0.0)) throw InvalidArgument("--tol must be positive");
    if (a.max_iter == 0) throw InvalidArgument("--max-iter must be positive");
    EigenOptions o;
    o.tol = a.tol;
    o.max_iter = a.max_iter;
    return o;
}

LoadedNetwork load(const CommonArgs& a) {
    LoadOptions o;
    o.n_nodes = a.nodes;
    o.node_labels_path = a.node_labels;
    o.layer_labels_path = a.layer_labels;
    return load_multiplex(a.network, o);
}

OmegaGrid parse_grid(const std::string& spec) {
    const auto parts = split(spec, ',');
    if (parts.size() != 3) throw InvalidArgument("--grid expects lo,hi,step (base-10 exponents)");
    return log_grid(parse_number(parts[0], "--grid"), parse_number(parts[1], "--grid"),
                    parse_number(parts[2], "--grid"));
}

void print_preconditions(std::ostream& out, const PreconditionReport& p) {
    out << "interlayer_ok: " << (p.interlayer_ok ? "pass" : "FAIL") << '\n'
        << "layer_sum_ok: " << (p.layer_sum_ok ? "pass" : "FAIL") << '\n';
}

// Returns false (after reporting) when preconditions fail and --force is off.
bool gate_preconditions(const PreconditionReport& p, bool force) {
    if (p.ok()) return true;
    std::cerr << "preconditions for a unique positive solution are not met:\n";
    print_preconditions(std::cerr, p);
    if (force) {
        std::cerr << "continuing because of --force\n";
        return true;
    }
    std::cerr << "rerun with --force to compute anyway\n";
    return false;
}

Index node_index(long long one_based, Index n) {
    if (one_based < 1 || static_cast<Index>(one_based) > n) {
        throw InvalidArgument("node " + std::to_string(one_based) + " out of range [1," + std::to_string(n) + "]");
    }
    return static_cast<Index>(one_based - 1);
}

} // namespace

InterlayerMatrix parse_interlayer_spec(const std::string& spec, Index n_layers,
                                       const std::vector<long long>* layer_ids) {
    const auto colon = spec.find(':');
    const auto head = spec.substr(0, colon);
    const auto body = colon == std::string::npos ? std::string() : spec.substr(colon + 1);
    if (head == "alltoall" && colon == std::string::npos) return all_to_all(n_layers, true);
    if (head == "alltoall-noself" && colon == std::string::npos) return all_to_all(n_layers, false);
    if (head == "chain" && colon == std::string::npos) return chain_undirected(n_layers);
    if (head == "teleport" && !body.empty()) return chain_teleport(n_layers, parse_number(body, "teleport gamma"));
    if (head == "blocks" && !body.empty()) return parse_blocks(body, n_layers);
    if (head == "file" && !body.empty()) return load_interlayer(body, n_layers, layer_ids);
    throw InvalidArgument("unknown --interlayer spec '" + spec +
                          "' (alltoall, alltoall-noself, chain, teleport:<gamma>, blocks:<spec>, file:<path>)");
}

int dispatch(int argc, const char* const* argv) {
    CLI::App app{"Supracentrality analysis of multiplex and temporal networks"};
    app.require_subcommand(1);

    CommonArgs common;
    KindArgs kind;
    SolverArgs solver;
    std::string interlayer;
    std::string out_path;
    std::string summary_path;
    std::string grid;
    std::string which;
    double omega = 0.0;
    bool force = false;
    bool no_warm = false;
    double dominating_tol = kDefaultDominatingTol;
    std::optional<long long> reference_layer;
    long long node = 0;

    const auto interlayer_help = "alltoall | alltoall-noself | chain | teleport:<gamma> | "
                                 "blocks:sizes=3,3;intra=1;inter=0.01 | file:<path>";

    auto* check = app.add_subcommand("check", "Report whether the coupled problem has a unique positive solution");
    add_common(check, common);
    add_kind(check, kind, false);
    check->add_option("--interlayer", interlayer, interlayer_help)->required();

    auto* centrality = app.add_subcommand("centrality", "Joint centralities at one coupling strength");
    add_common(centrality, common);
    add_kind(centrality, kind, true);
    add_solver(centrality, solver);
    centrality->add_option("--interlayer", interlayer, interlayer_help)->required();
    centrality->add_option("--omega", omega, "Coupling strength (>= 0)")->required();
    centrality->add_option("--out", out_path, "Joint centrality CSV ('-' for stdout)")->required();
    centrality->add_option("--summary", summary_path, "Summary JSON");
    centrality->add_flag("--force", force, "Compute even when the preconditions fail");

    auto* sweep_cmd = app.add_subcommand("sweep", "Marginals and sensitivities over a log-spaced omega grid");
    add_common(sweep_cmd, common);
    add_kind(sweep_cmd, kind, true);
    add_solver(sweep_cmd, solver);
    sweep_cmd->add_option("--interlayer", interlayer, interlayer_help)->required();
    sweep_cmd->add_option("--grid", grid, "lo,hi,step: omega = 10^(lo + k step)")->required();
    sweep_cmd->add_flag("--no-warm-start", no_warm, "Solve every grid point from the all-ones vector");
    sweep_cmd->add_option("--out", out_path, "Sweep CSV")->required();
    sweep_cmd->add_flag("--force", force, "Compute even when the preconditions fail");

    auto* limit = app.add_subcommand("limit", "Weak- or strong-coupling limit");
    add_common(limit, common);
    add_kind(limit, kind, true);
    add_solver(limit, solver);
    limit->add_option("--which", which, "weak | strong")->required()->check(CLI::IsMember({"weak", "strong"}));
    limit->add_option("--interlayer", interlayer, interlayer_help)->required();
    limit->add_option("--dominating-tol", dominating_tol, "Relative tolerance for dominating layers (weak)");
    limit->add_option("--out", out_path, "Limit JSON")->required();

    auto* correlate = app.add_subcommand("correlate", "Degree/centrality correlations over an omega grid");
    add_common(correlate, common);
    add_kind(correlate, kind, true);
    add_solver(correlate, solver);
    correlate->add_option("--interlayer", interlayer, interlayer_help)->required();
    correlate->add_option("--grid", grid, "lo,hi,step: omega = 10^(lo + k step)")->required();
    correlate->add_option("--reference-layer", reference_layer, "Layer id for correlation (c)");
    correlate->add_option("--out", out_path, "Correlation CSV")->required();
    correlate->add_flag("--force", force, "Compute even when the preconditions fail");

    auto* versatility = app.add_subcommand("versatility", "PageRank versatility of the supra-adjacency matrix");
    add_common(versatility, common);
    add_solver(versatility, solver);
    versatility->add_option("--omega", omega, "Coupling strength (>= 0)")->required();
    versatility->add_option("--sigma", kind.sigma, "PageRank damping in [0,1)");
    versatility->add_option("--dangling", kind.dangling, "only | all")->check(CLI::IsMember({"only", "all"}));
    versatility->add_option("--interlayer", interlayer, interlayer_help)->required();
    versatility->add_option("--out", out_path, "Versatility CSV")->required();

    auto* trajectory = app.add_subcommand("trajectory", "Within-layer rank of one node across an omega grid");
    add_common(trajectory, common);
    add_kind(trajectory, kind, true);
    add_solver(trajectory, solver);
    trajectory->add_option("--node", node, "Node index (1-based)")->required();
    trajectory->add_option("--interlayer", interlayer, interlayer_help)->required();
    trajectory->add_option("--grid", grid, "lo,hi,step: omega = 10^(lo + k step)")->required();
    trajectory->add_option("--out", out_path, "Rank CSV")->required();
    trajectory->add_flag("--force", force, "Compute even when the preconditions fail");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        // Argument checks first, so usage errors win over file problems.
        const auto ck = make_kind(kind);
        const auto eo = make_eigen(solver);
        if (!std::isfinite(omega) || omega < 0.0) throw InvalidArgument("--omega must be finite and >= 0");
        std::optional<OmegaGrid> og;
        if (!grid.empty()) og = parse_grid(grid);

        const auto loaded = load(common);
        const auto& net = loaded.network;
        const auto il = parse_interlayer_spec(interlayer, net.n_layers(), &loaded.layer_ids);
        const auto problem = make_problem(net, ck, il, omega);

        if (*check) {
            const auto report = check_preconditions(problem);
            print_preconditions(std::cout, report);
            return report.ok() ? kSuccess : kValidation;
        }
        if (*centrality) {
            const SupraOperator op(problem);
            const auto pre = check_preconditions(op.interlayer(), op.layers());
            if (!gate_preconditions(pre, force)) return kValidation;
            const auto sol = solve(op, pre, eo);
            for (const auto& issue : sol.tableau_issues) std::cerr << "warning: " << issue << '\n';
            write_tableau_csv(out_path, sol.tableau, net);
            if (!summary_path.empty()) write_summary_json(summary_path, summarize(sol, omega));
            return kSuccess;
        }
        if (*sweep_cmd || *correlate || *trajectory) {
            Index target = 0;
            if (*trajectory) target = node_index(node, net.n_nodes);
            std::optional<Index> ref;
            if (reference_layer) {
                const auto it = std::find(loaded.layer_ids.begin(), loaded.layer_ids.end(), *reference_layer);
                if (it == loaded.layer_ids.end()) {
                    throw InvalidArgument("--reference-layer " + std::to_string(*reference_layer) + " is not a layer id");
                }
                ref = static_cast<Index>(it - loaded.layer_ids.begin());
            }
            if (!gate_preconditions(check_preconditions(problem), force)) return kValidation;
            SweepOptions so;
            so.eigen = eo;
            so.warm_start = !no_warm;
            so.threads = solver.threads;
            const auto sw = sweep(problem, *og, so);
            std::size_t failed = 0;
            for (std::size_t s = 0; s < sw.points.size(); ++s) {
                if (!sw.points[s].ok) {
                    ++failed;
                    std::cerr << "warning: omega=" << format_double(sw.grid.values[s])
                              << " did not converge: " << sw.points[s].error << '\n';
                }
            }
            if (*sweep_cmd) {
                write_sweep_csv(out_path, sw, net);
                if (sw.z_sensitivity.size() >= 3) {
                    const auto regimes = detect_regimes(sw.z_sensitivity, sw.grid);
                    std::cout << "regimes (z sensitivity peaks): " << regimes.size() << '\n';
                    for (const auto& r : regimes) {
                        std::cout << "  omega " << format_double(r.omega_lo) << " .. " << format_double(r.omega_hi)
                                  << '\n';
                    }
                } else {
                    std::cout << "regimes: grid too short for peak detection\n";
                }
            } else if (*correlate) {
                const auto rows = correlate_with_degrees(sw, net, ref);
                write_file(out_path, [&](std::ostream& out) { write_correlation_csv(out, rows); });
            } else {
                const auto ranks = rank_trajectory(sw, target);
                write_file(out_path, [&](std::ostream& out) { write_trajectory_csv(out, sw, ranks, net); });
            }
            return failed == sw.points.size() ? kNonConvergence : kSuccess;
        }
        if (*limit) {
            if (which == "weak") {
                const auto r = weak_limit(problem, dominating_tol, eo);
                write_file(out_path, [&](std::ostream& out) { write_weak_limit_json(out, r, net); });
            } else {
                const auto r = strong_limit(problem, eo);
                std::optional<CorollaryReport> cor;
                std::string note;
                try {
                    if (detect_coupling_shape(il)) cor = corollary_crosscheck(problem, r);
                } catch (const NotApplicable& e) {
                    note = e.what();
                }
                write_file(out_path, [&](std::ostream& out) { write_strong_limit_json(out, r, net, cor, note); });
            }
            return kSuccess;
        }
        if (*versatility) {
            const auto r = pagerank_versatility(net, il, omega, kind.sigma, dangling_policy(kind.dangling), eo);
            write_file(out_path, [&](std::ostream& out) { write_versatility_csv(out, r, net); });
            return kSuccess;
        }
        return kUsage;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const NonConvergence& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNonConvergence;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        for (const auto& v : e.violations()) std::cerr << "  " << v << '\n';
        return kValidation;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    }
}

} // namespace supra::cli
