#pragma once

// Small networks and seeded random instances shared by the tests.

#include "oracle.hpp"

#include "supra/interlayer.hpp"
#include "supra/types.hpp"

#include <random>
#include <utility>
#include <vector>

namespace fixtures {

using supra::Edge;
using supra::Index;
using supra::LayerGraph;
using supra::MultiplexNetwork;

inline LayerGraph undirected(Index n, const std::vector<std::pair<Index, Index>>& pairs, double w = 1.0) {
    std::vector<Edge> edges;
    for (auto [a, b] : pairs) {
        edges.push_back({a, b, w});
        edges.push_back({b, a, w});
    }
    return supra::make_layer(n, std::move(edges));
}

inline LayerGraph triangle() { return undirected(3, {{0, 1}, {1, 2}, {0, 2}}); }

/// Triangle 1-2-3 plus pendant 4 on 1 (0-based: pendant 3 on 0).
inline LayerGraph paw() { return undirected(4, {{0, 1}, {1, 2}, {0, 2}, {0, 3}}); }

/// The paw with its vertices renamed by `perm` (perm[old] = new).
inline LayerGraph paw_relabeled(const std::vector<Index>& perm) {
    return undirected(4, {{perm[0], perm[1]}, {perm[1], perm[2]}, {perm[0], perm[2]}, {perm[0], perm[3]}});
}

inline MultiplexNetwork network(Index n, std::vector<LayerGraph> layers) {
    MultiplexNetwork net;
    net.n_nodes = n;
    net.layers = std::move(layers);
    return net;
}

/// Six paw layers with different centre/pendant nodes; the toy multiplex used
/// for the sweep and regime tests.
inline MultiplexNetwork six_paws() {
    return network(4, {paw_relabeled({0, 1, 2, 3}), paw_relabeled({1, 2, 3, 0}), paw_relabeled({2, 0, 3, 1}),
                       paw_relabeled({3, 1, 0, 2}), paw_relabeled({0, 2, 3, 1}), paw_relabeled({1, 3, 0, 2})});
}

struct Instance {
    MultiplexNetwork net;
    supra::Matrix interlayer;
};

inline LayerGraph random_layer(Index n, double density, std::mt19937_64& rng, bool symmetric) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_real_distribution<double> w(0.5, 2.0);
    std::vector<Edge> edges;
    for (Index i = 0; i < n; ++i) {
        for (Index j = symmetric ? i + 1 : 0; j < n; ++j) {
            if (i == j || u(rng) >= density) continue;
            const double weight = w(rng);
            edges.push_back({i, j, weight});
            if (symmetric) edges.push_back({j, i, weight});
        }
    }
    return supra::make_layer(n, std::move(edges));
}

inline supra::Matrix random_interlayer(Index t, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_real_distribution<double> w(0.2, 2.0);
    for (;;) {
        supra::Matrix a = supra::Matrix::Zero(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(t));
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            for (Eigen::Index j = 0; j < a.cols(); ++j)
                if (i != j && u(rng) < 0.6) a(i, j) = w(rng);
        if (oracle::strongly_connected(a)) return a;
    }
}

/// Random multiplex with N <= max_n, T <= max_t, strongly connected A~ and an
/// irreducible sum of centrality matrices.
inline Instance random_instance(std::mt19937_64& rng, const supra::CentralityKind& kind, Index max_n = 6,
                                Index max_t = 4, Index min_t = 1) {
    std::uniform_int_distribution<Index> nd(2, max_n);
    std::uniform_int_distribution<Index> td(min_t, max_t);
    std::uniform_real_distribution<double> dens(0.3, 0.7);
    std::bernoulli_distribution sym(0.5);
    for (;;) {
        Instance in;
        const Index n = nd(rng);
        const Index t = td(rng);
        in.net.n_nodes = n;
        for (Index s = 0; s < t; ++s) in.net.layers.push_back(random_layer(n, dens(rng), rng, sym(rng)));
        supra::Matrix sum = supra::Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (const auto& l : in.net.layers) sum += oracle::centrality(oracle::dense_adjacency(l), kind);
        if (!oracle::strongly_connected(sum)) continue;
        in.interlayer = random_interlayer(t, rng);
        return in;
    }
}

} // namespace fixtures
