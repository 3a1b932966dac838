// Runs the acceptance checks and prints one PASS/FAIL line per criterion.
// Exit status is nonzero when any criterion fails.

#include "fixtures.hpp"
#include "oracle.hpp"

#include "supra/asymptotics.hpp"
#include "supra/centrality.hpp"
#include "supra/engine.hpp"
#include "supra/error.hpp"
#include "supra/graph_analysis.hpp"
#include "supra/interlayer.hpp"
#include "supra/sweeps.hpp"
#include "supra/versatility.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace supra;

namespace {

Vector flat(const Matrix& w) { return Eigen::Map<const Vector>(w.data(), w.size()); }

// Collects failure messages; a criterion passes when none were recorded.
struct Report {
    std::vector<std::string> failures;
    std::size_t checks = 0;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok && failures.size() < 5) failures.push_back(what);
        else if (!ok) failures.emplace_back();
    }
};

std::string num(double v) {
    std::ostringstream s;
    s.precision(3);
    s << v;
    return s.str();
}

// Sum_i Z(i,t) = 1 and sum_t Z_hat(i,t) = 1 within 1e-12.
void check_normalization(Report& rep, const CentralityTableau& tab, const std::string& where) {
    for (Eigen::Index t = 0; t < tab.Z.cols(); ++t) {
        const double s = tab.Z.col(t).sum();
        rep.expect(std::abs(s - 1.0) <= 1e-12, where + ": Z column " + std::to_string(t + 1) + " sums to " + num(s));
    }
    for (Eigen::Index i = 0; i < tab.Z_hat.rows(); ++i) {
        const double s = tab.Z_hat.row(i).sum();
        rep.expect(std::abs(s - 1.0) <= 1e-12, where + ": Z_hat row " + std::to_string(i + 1) + " sums to " + num(s));
    }
}

// Every tableau computed by the other criteria is checked here as well.
std::vector<CentralityTableau> g_tableaus;

SupraSolution remember(SupraSolution s) {
    g_tableaus.push_back(s.tableau);
    return s;
}

bool layers_irreducible(const MultiplexNetwork& net, const CentralityKind& kind) {
    for (const auto& l : net.layers)
        if (!oracle::strongly_connected(oracle::centrality(oracle::dense_adjacency(l), kind))) return false;
    return true;
}

fixtures::Instance irreducible_instance(std::mt19937_64& rng, const CentralityKind& kind, Index min_t = 1) {
    for (;;) {
        auto in = fixtures::random_instance(rng, kind, 6, 4, min_t);
        if (layers_irreducible(in.net, kind)) return in;
    }
}

LayerGraph scaled(const LayerGraph& g, double f) {
    auto out = g;
    for (auto& e : out.entries) e.weight *= f;
    return out;
}

// ---------------------------------------------------------------------------

void oracle_equivalence(Report& rep) {
    std::mt19937_64 rng(1001);
    const CentralityKind kinds[] = {CentralityKind::eigenvector(), CentralityKind::hub(), CentralityKind::authority(),
                                    CentralityKind::pagerank()};
    std::uniform_real_distribution<double> log_omega(-2.0, 2.0);
    for (int k = 0; k < 50; ++k) {
        const auto& kind = kinds[k % 4];
        const auto in = fixtures::random_instance(rng, kind);
        const double omega = std::pow(10.0, log_omega(rng));
        const auto p = make_problem(in.net, kind, InterlayerMatrix(in.interlayer), omega);
        const auto sol = remember(solve(p));
        const auto ref = oracle::power(oracle::supracentrality(in.net, kind, in.interlayer, omega));
        const double rel = std::abs(sol.eigenpair.lambda - ref.lambda) / std::abs(ref.lambda);
        const double cos = oracle::cosine(sol.eigenpair.vector, ref.vector);
        const auto tag = "instance " + std::to_string(k);
        rep.expect(rel <= 1e-8, tag + ": relative eigenvalue error " + num(rel));
        rep.expect(cos >= 1.0 - 1e-10, tag + ": 1 - cosine = " + num(1.0 - cos));
    }
}

void weak_coupling(Report& rep) {
    std::mt19937_64 rng(1002);
    int localization = 0;
    for (int k = 0; k < 30; ++k) {
        const auto kind = k % 3 == 2 ? CentralityKind::pagerank() : CentralityKind::eigenvector();
        auto in = irreducible_instance(rng, kind, k < 8 ? 2 : 1);
        const auto tag = "instance " + std::to_string(k);

        // The first instances put one layer well above the others.
        const bool localize = k < 8 && kind.type == CentralityKind::Type::Eigenvector;
        if (localize) {
            std::vector<double> rho;
            for (const auto& l : in.net.layers) rho.push_back(oracle::spectral_radius(oracle::dense_adjacency(l)));
            double others = 0.0;
            for (std::size_t t = 1; t < rho.size(); ++t) others = std::max(others, rho[t]);
            if (rho[0] < 1.5 * others) in.net.layers[0] = scaled(in.net.layers[0], 1.6 * others / rho[0]);
        }

        const auto p = make_problem(in.net, kind, InterlayerMatrix(in.interlayer), 1e-6);
        const auto limit = weak_limit(p);
        const auto sol = remember(solve(p));
        const double cos = oracle::cosine(flat(sol.tableau.W), flat(limit.tableau.W));
        rep.expect(cos >= 1.0 - 1e-4, tag + ": 1 - cosine = " + num(1.0 - cos));

        if (localize) {
            ++localization;
            rep.expect(limit.dominating == std::vector<Index>{0}, tag + ": layer 1 should dominate alone");
            const double mass = sol.tableau.W.col(0).sum() / sol.tableau.W.sum();
            rep.expect(mass >= 1.0 - 1e-4, tag + ": mass on the dominating layer " + num(mass));
        }
    }
    rep.expect(localization >= 5, "only " + std::to_string(localization) + " localization instances");
}

void strong_coupling(Report& rep) {
    std::mt19937_64 rng(1003);
    int used = 0;
    for (int k = 0; used < 30; ++k) {
        const auto kind = k % 2 ? CentralityKind::eigenvector() : CentralityKind::pagerank();
        const auto in = fixtures::random_instance(rng, kind, 6, 4, 2);
        const auto p = make_problem(in.net, kind, InterlayerMatrix(in.interlayer), 1e8);
        StrongLimitResult limit;
        try {
            limit = strong_limit(p);
        } catch (const DegenerateEigenvalue&) {
            continue; // repeated interlayer eigenvalue: the limit is not defined
        }
        ++used;
        EigenOptions tight;
        tight.tol = 1e-13;
        const auto sol = remember(solve(p, tight));
        const auto tag = "instance " + std::to_string(k);
        const double rel = std::abs(sol.eigenpair.lambda / 1e8 - limit.mu1) / limit.mu1;
        rep.expect(rel <= 1e-6, tag + ": lambda/omega vs mu1 relative error " + num(rel));
        const double cos = oracle::cosine(flat(sol.tableau.W), flat(limit.tableau.W));
        rep.expect(cos >= 1.0 - 1e-6, tag + ": 1 - cosine = " + num(1.0 - cos));
        for (Eigen::Index i = 0; i < sol.tableau.Z.rows(); ++i) {
            const double spread = sol.tableau.Z.row(i).maxCoeff() - sol.tableau.Z.row(i).minCoeff();
            rep.expect(spread <= 1e-4, tag + ": Z spread " + num(spread) + " on node " + std::to_string(i + 1));
        }
    }
}

void chain_closed_form(Report& rep) {
    const auto paws = fixtures::six_paws();
    for (Index t = 2; t <= 12; ++t) {
        MultiplexNetwork net;
        net.n_nodes = 4;
        for (Index s = 0; s < t; ++s) net.layers.push_back(paws.layers[s % 6]);
        const auto p = make_problem(net, CentralityKind::eigenvector(), chain_undirected(t), 1.0);
        const double mu = strong_limit(p).mu1;
        const double expect = 2.0 * std::cos(std::numbers::pi / static_cast<double>(t + 1));
        rep.expect(std::abs(mu - expect) <= 1e-10, "T = " + std::to_string(t) + ": mu1 off by " + num(mu - expect));
        if (t == 6) rep.expect(std::abs(mu - 1.8019377) <= 1e-7, "T = 6: mu1 = " + num(mu));
    }
}

void aggregate_closed_forms(Report& rep) {
    std::mt19937_64 rng(1005);
    for (int k = 0; k < 10; ++k) {
        const auto in = fixtures::random_instance(rng, CentralityKind::eigenvector(), 6, 5, 2);
        const auto t = in.net.n_layers();
        const auto tag = "instance " + std::to_string(k);

        const auto all = strong_limit(make_problem(in.net, CentralityKind::eigenvector(), all_to_all(t), 1.0));
        Matrix mean = Matrix::Zero(static_cast<Eigen::Index>(in.net.n_nodes), static_cast<Eigen::Index>(in.net.n_nodes));
        for (const auto& l : in.net.layers) mean += oracle::dense_adjacency(l);
        mean /= static_cast<double>(t);
        const double d_all = (all.X_tilde.dense() - mean).cwiseAbs().maxCoeff();
        rep.expect(d_all <= 1e-12, tag + ": all-to-all aggregate off by " + num(d_all));

        std::uniform_real_distribution<double> u(0.1, 1.0);
        Vector w(static_cast<Eigen::Index>(t));
        for (auto& x : w) x = u(rng);
        w.normalize();
        const auto r1 = strong_limit(
            make_problem(in.net, CentralityKind::eigenvector(), InterlayerMatrix(w * w.transpose()), 1.0));
        Matrix expect = Matrix::Zero(mean.rows(), mean.cols());
        for (Index s = 0; s < t; ++s)
            expect += w(static_cast<Eigen::Index>(s)) * w(static_cast<Eigen::Index>(s)) *
                      oracle::dense_adjacency(in.net.layers[s]);
        const double d_r1 = (r1.X_tilde.dense() - expect).cwiseAbs().maxCoeff();
        rep.expect(d_r1 <= 1e-12, tag + ": rank-one aggregate off by " + num(d_r1));
    }
}

void pagerank_no_localization(Report& rep) {
    std::mt19937_64 rng(1006);
    for (int k = 0; k < 20; ++k) {
        const auto in = fixtures::random_instance(rng, CentralityKind::pagerank(), 6, 4, 2);
        const auto p = make_problem(in.net, CentralityKind::pagerank(), InterlayerMatrix(in.interlayer), 0.0);
        const auto limit = weak_limit(p);
        const auto tag = "instance " + std::to_string(k);
        rep.expect(limit.dominating.size() == in.net.n_layers(), tag + ": dominating set is not every layer");
        for (const auto& l : limit.eigendata.layers)
            rep.expect(std::abs(l.spectral_radius - 1.0) <= 1e-9, tag + ": layer radius " + num(l.spectral_radius));
        g_tableaus.push_back(limit.tableau);
    }
}

void normalization(Report& rep) {
    for (std::size_t k = 0; k < g_tableaus.size(); ++k) check_normalization(rep, g_tableaus[k], "tableau " + std::to_string(k));
    rep.expect(g_tableaus.size() >= 100, "only " + std::to_string(g_tableaus.size()) + " tableaus collected");

    std::mt19937_64 rng(1007);
    std::uniform_real_distribution<double> sig(0.0, 0.99);
    for (int k = 0; k < 200; ++k) {
        const auto g = fixtures::random_layer(2 + static_cast<Index>(k % 12), 0.3, rng, k % 2 == 0);
        for (auto policy : {DanglingPolicy::DanglingOnly, DanglingPolicy::AllNodes}) {
            const Matrix c = build_pagerank_matrix(g, sig(rng), policy).dense();
            const double err = (c.colwise().sum().array() - 1.0).abs().maxCoeff();
            rep.expect(err <= 1e-12, "PageRank column sum off by " + num(err));
        }
    }
}

void stride(Report& rep) {
    std::mt19937_64 rng(1008);
    std::uniform_int_distribution<int> entry(0, 3);
    for (Index n = 1; n <= 5; ++n) {
        for (Index t = 1; t <= 5; ++t) {
            const auto perm = stride_permutation(n, t);
            const auto dim = static_cast<Eigen::Index>(n * t);
            std::vector<bool> seen(n * t, false);
            bool bijective = perm.size() == n * t;
            for (Index k : perm) {
                if (k >= n * t || seen[k]) bijective = false;
                else seen[k] = true;
            }
            const auto tag = "N = " + std::to_string(n) + ", T = " + std::to_string(t);
            rep.expect(bijective, tag + ": not a bijection");
            if (!bijective) continue;

            Matrix P = Matrix::Zero(dim, dim);
            for (Eigen::Index k = 0; k < dim; ++k) P(k, static_cast<Eigen::Index>(perm[static_cast<Index>(k)])) = 1.0;
            for (int trial = 0; trial < 3; ++trial) {
                Matrix a(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(t));
                for (auto& x : a.reshaped()) x = entry(rng);
                const Matrix id = Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
                const Matrix lhs = P * oracle::kron(id, a) * P.transpose();
                rep.expect(lhs == oracle::kron(a, id), tag + ": P (I kron A) P^T differs from A kron I");
            }
            const Vector y = Vector::LinSpaced(dim, 1.0, static_cast<double>(dim));
            rep.expect(apply_permutation(perm, y) == P * y, tag + ": apply_permutation differs from P y");
        }
    }
}

void preconditions(Report& rep) {
    const auto net = fixtures::network(3, {fixtures::triangle(), fixtures::triangle(), fixtures::triangle()});
    const auto chain0 = check_preconditions(make_problem(net, CentralityKind::eigenvector(), chain_teleport(3, 0.0), 1.0));
    rep.expect(!chain0.interlayer_ok, "directed chain with gamma = 0 passes");
    const auto chain4 = check_preconditions(make_problem(net, CentralityKind::eigenvector(), chain_teleport(3, 1e-4), 1.0));
    rep.expect(chain4.interlayer_ok && chain4.ok(), "directed chain with gamma = 1e-4 fails");

    // Every digraph on up to 5 nodes, as an interlayer matrix over T one-node layers.
    for (Index t = 1; t <= 5; ++t) {
        std::vector<LayerCentralityMatrix> layers(t, build_eigenvector_matrix(make_layer(1, {{0, 0, 1.0}})));
        std::vector<std::pair<Eigen::Index, Eigen::Index>> slots;
        for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(t); ++i)
            for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(t); ++j)
                if (i != j) slots.emplace_back(i, j);
        std::size_t mismatches = 0;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
            Matrix a = Matrix::Zero(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(t));
            for (std::size_t b = 0; b < slots.size(); ++b)
                if (mask >> b & 1U) a(slots[b].first, slots[b].second) = 1.0;
            const bool got = check_preconditions(InterlayerMatrix(a), layers).interlayer_ok;
            if (got != oracle::strongly_connected(a)) ++mismatches;
        }
        rep.expect(mismatches == 0, std::to_string(mismatches) + " mismatches on " + std::to_string(t) + "-node digraphs");
    }
}

void sweep_regimes(Report& rep) {
    const auto grid = log_grid(-2, 4, 0.2);
    const auto run = [&](double inter) {
        const auto p = make_problem(fixtures::six_paws(), CentralityKind::eigenvector(),
                                    block_communities(6, {3, 3}, 1.0, inter), 1.0);
        const auto sw = sweep(p, grid);
        for (const auto& pt : sw.points) {
            rep.expect(pt.ok, "sweep point failed: " + pt.error);
            if (pt.ok) g_tableaus.push_back(pt.tableau);
        }
        return sw;
    };
    const auto weak = run(0.01);
    const auto peaks = find_peaks(weak.z_sensitivity);
    rep.expect(peaks.size() >= 2, "two-block sweep has " + std::to_string(peaks.size()) + " peaks");
    const auto regimes = detect_regimes(weak.z_sensitivity, grid);
    rep.expect(regimes.size() == 3, "two-block sweep has " + std::to_string(regimes.size()) + " regimes");
    const auto strong = run(1.0);
    const auto peaks_strong = find_peaks(strong.z_sensitivity);
    rep.expect(peaks_strong.size() <= peaks.size(), "inter-block weight 1 gives " + std::to_string(peaks_strong.size()) +
                                                        " peaks, more than " + std::to_string(peaks.size()));
}

void versatility_oracle(Report& rep) {
    std::mt19937_64 rng(1011);
    for (int k = 0; k < 20; ++k) {
        const auto in = fixtures::random_instance(rng, CentralityKind::eigenvector());
        const auto r = pagerank_versatility(in.net, InterlayerMatrix(in.interlayer), 1.0, 0.85);
        const Matrix pr = oracle::pagerank(oracle::supra_adjacency(in.net, in.interlayer, 1.0), 0.85,
                                           DanglingPolicy::DanglingOnly);
        Vector v = oracle::power(pr).vector;
        v /= v.sum();
        const Vector expect = Eigen::Map<const Matrix>(v.data(), static_cast<Eigen::Index>(in.net.n_nodes),
                                                       static_cast<Eigen::Index>(in.net.n_layers()))
                                  .rowwise()
                                  .sum();
        const double err = (r.versatility - expect).cwiseAbs().maxCoeff();
        rep.expect(err <= 1e-9, "instance " + std::to_string(k) + ": versatility off by " + num(err));
    }
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<void(Report&)> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "oracle equivalence", 10.0, oracle_equivalence},
        {2, "weak-coupling limit", 10.0, weak_coupling},
        {3, "strong-coupling limit", 10.0, strong_coupling},
        {4, "chain closed form", 1.0, chain_closed_form},
        {5, "all-to-all and rank-one aggregates", 1.0, aggregate_closed_forms},
        {6, "no localization for PageRank", 5.0, pagerank_no_localization},
        {10, "sweep regimes", 30.0, sweep_regimes},
        {7, "normalization invariants", 0.0, normalization},
        {8, "stride permutation", 0.0, stride},
        {9, "precondition checker", 0.0, preconditions},
        {11, "versatility oracle", 5.0, versatility_oracle},
    };
    // Criterion 7 runs after the others so it sees every tableau they produced.

    std::vector<std::string> lines(12);
    bool all_ok = true;
    for (const auto& c : criteria) {
        Report rep;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(rep);
        } catch (const std::exception& e) {
            rep.failures.insert(rep.failures.begin(), std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_seconds > 0.0 && secs > c.budget_seconds) {
            rep.failures.push_back("took " + num(secs) + " s, budget " + num(c.budget_seconds) + " s");
        }
        const bool ok = rep.failures.empty();
        all_ok = all_ok && ok;
        char head[160];
        std::snprintf(head, sizeof head, "%s %2d %-36s %zu checks, %.3f s", ok ? "PASS" : "FAIL", c.id, c.name,
                      rep.checks, secs);
        std::string line = head;
        for (const auto& f : rep.failures)
            if (!f.empty()) line += "\n        " + f;
        lines[static_cast<std::size_t>(c.id)] = line;
    }
    for (std::size_t id = 1; id < lines.size(); ++id) std::puts(lines[id].c_str());
    return all_ok ? 0 : 1;
}
