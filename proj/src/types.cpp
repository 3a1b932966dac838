#include "supra/types.hpp"

#include "supra/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace supra {

SparseMatrix LayerGraph::to_sparse() const {
    const auto n = static_cast<Eigen::Index>(n_nodes);
    SparseMatrix m(n, n);
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(entries.size());
    for (const auto& e : entries) {
        trips.emplace_back(static_cast<Eigen::Index>(e.from), static_cast<Eigen::Index>(e.to),
                           e.weight);
    }
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

LayerGraph LayerGraph::from_sparse(const SparseMatrix& m) {
    LayerGraph g;
    g.n_nodes = static_cast<Index>(m.rows());
    for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
        for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
            if (it.value() != 0.0) {
                g.entries.push_back(
                    {static_cast<Index>(it.row()), static_cast<Index>(it.col()), it.value()});
            }
        }
    }
    return g;
}

namespace {

bool edge_less(const Edge& a, const Edge& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
}

void validate_layer(const LayerGraph& g, Index n, std::optional<Index> layer,
                    std::vector<Violation>& out) {
    const auto where = [&] {
        return layer ? "layer " + std::to_string(*layer + 1) + ": " : std::string{};
    };
    if (g.n_nodes != n) {
        out.push_back({ViolationKind::LayerSizeMismatch, layer,
                       where() + "has " + std::to_string(g.n_nodes) + " nodes, expected " +
                           std::to_string(n)});
    }
    for (const auto& e : g.entries) {
        const auto edge = "edge (" + std::to_string(e.from + 1) + "," + std::to_string(e.to + 1) + ")";
        if (e.from >= g.n_nodes || e.to >= g.n_nodes) {
            out.push_back({ViolationKind::IndexOutOfRange, layer,
                           where() + edge + " index out of range [1," +
                               std::to_string(g.n_nodes) + "]"});
        }
        if (!std::isfinite(e.weight)) {
            out.push_back({ViolationKind::NonFiniteWeight, layer, where() + edge + " non-finite weight"});
        } else if (e.weight < 0.0) {
            out.push_back({ViolationKind::NegativeWeight, layer, where() + edge + " negative weight"});
        } else if (e.weight == 0.0) {
            out.push_back({ViolationKind::ZeroWeight, layer, where() + edge + " zero weight stored"});
        }
    }
    auto sorted = g.entries;
    std::sort(sorted.begin(), sorted.end(), edge_less);
    for (std::size_t k = 1; k < sorted.size(); ++k) {
        if (sorted[k].from == sorted[k - 1].from && sorted[k].to == sorted[k - 1].to) {
            out.push_back({ViolationKind::DuplicateEdge, layer,
                           where() + "duplicate edge (" + std::to_string(sorted[k].from + 1) + "," +
                               std::to_string(sorted[k].to + 1) + ")"});
        }
    }
}

} // namespace

LayerGraph make_layer(Index n_nodes, std::vector<Edge> edges) {
    LayerGraph g{n_nodes, std::move(edges)};
    std::vector<Violation> v;
    validate_layer(g, n_nodes, std::nullopt, v);
    if (!v.empty()) {
        std::vector<std::string> msgs;
        for (auto& x : v) msgs.push_back(std::move(x.message));
        throw ValidationError(std::move(msgs));
    }
    std::sort(g.entries.begin(), g.entries.end(), edge_less);
    return g;
}

std::string MultiplexNetwork::node_label(Index i) const {
    return i < node_labels.size() ? node_labels[i] : std::to_string(i + 1);
}

std::string MultiplexNetwork::layer_label(Index t) const {
    return t < layer_labels.size() ? layer_labels[t] : std::to_string(t + 1);
}

std::vector<Violation> validate_network(const MultiplexNetwork& net) {
    std::vector<Violation> out;
    if (net.n_nodes == 0 || net.layers.empty()) {
        out.push_back({ViolationKind::EmptyNetwork, std::nullopt,
                       "network needs at least one node and one layer"});
    }
    for (Index t = 0; t < net.layers.size(); ++t) validate_layer(net.layers[t], net.n_nodes, t, out);
    if (!net.node_labels.empty() && net.node_labels.size() != net.n_nodes) {
        out.push_back({ViolationKind::LabelCountMismatch, std::nullopt,
                       std::to_string(net.node_labels.size()) + " node labels for " +
                           std::to_string(net.n_nodes) + " nodes"});
    }
    if (!net.layer_labels.empty() && net.layer_labels.size() != net.n_layers()) {
        out.push_back({ViolationKind::LabelCountMismatch, std::nullopt,
                       std::to_string(net.layer_labels.size()) + " layer labels for " +
                           std::to_string(net.n_layers()) + " layers"});
    }
    return out;
}

void require_valid(const MultiplexNetwork& net) {
    auto v = validate_network(net);
    if (v.empty()) return;
    std::vector<std::string> msgs;
    for (auto& x : v) msgs.push_back(std::move(x.message));
    throw ValidationError(std::move(msgs));
}

InterlayerMatrix::InterlayerMatrix(Matrix values) : values_(std::move(values)) {
    if (values_.rows() != values_.cols()) throw InvalidArgument("interlayer matrix must be square");
    if (values_.rows() == 0) throw InvalidArgument("interlayer matrix must have at least one layer");
    for (Eigen::Index i = 0; i < values_.size(); ++i) {
        const double v = values_.data()[i];
        if (!std::isfinite(v) || v < 0.0) {
            throw InvalidArgument("interlayer matrix entries must be finite and nonnegative");
        }
    }
}

CentralityKind CentralityKind::pagerank(double sigma, DanglingPolicy policy) {
    CentralityKind k;
    k.type = Type::PageRank;
    k.sigma = sigma;
    k.dangling = policy;
    return k;
}

std::string CentralityKind::name() const {
    switch (type) {
    case Type::Eigenvector: return "eigenvector";
    case Type::Hub: return "hub";
    case Type::Authority: return "authority";
    case Type::PageRank: return "pagerank";
    }
    return "unknown";
}

void require_valid(const SupraProblem& p) {
    require_valid(p.network);
    if (p.interlayer.dim() != p.network.n_layers()) {
        throw InvalidArgument("interlayer matrix is " + std::to_string(p.interlayer.dim()) +
                              "x" + std::to_string(p.interlayer.dim()) + " but network has " +
                              std::to_string(p.network.n_layers()) + " layers");
    }
    if (!std::isfinite(p.omega) || p.omega < 0.0) {
        throw InvalidArgument("coupling strength omega must be finite and >= 0");
    }
    if (p.kind.type == CentralityKind::Type::PageRank) {
        if (!(p.kind.sigma >= 0.0 && p.kind.sigma < 1.0)) {
            throw InvalidArgument("PageRank sigma must lie in [0,1)");
        }
        if (!p.kind.teleportation.empty() && p.kind.teleportation.size() != p.network.n_layers()) {
            throw InvalidArgument("one teleportation vector per layer is required");
        }
    }
}

SupraProblem make_problem(MultiplexNetwork net, CentralityKind kind, InterlayerMatrix interlayer,
                          double omega) {
    SupraProblem p{std::move(net), std::move(kind), std::move(interlayer), omega};
    require_valid(p);
    return p;
}

std::vector<std::string> check_tableau(const CentralityTableau& tab, double tol) {
    std::vector<std::string> out;
    const auto N = tab.W.rows();
    const auto T = tab.W.cols();
    const auto fmt = [](double v) {
        std::ostringstream s;
        s.precision(3);
        s << v;
        return s.str();
    };
    if (tab.x.size() != T || tab.x_hat.size() != N || tab.Z.rows() != N || tab.Z.cols() != T ||
        tab.Z_hat.rows() != N || tab.Z_hat.cols() != T) {
        out.emplace_back("tableau dimensions inconsistent");
        return out;
    }
    // Sums of O(NT) terms carry proportional rounding.
    const double scale = static_cast<double>(std::max<Eigen::Index>(N, T));
    const double sum_tol = tol * std::max(1.0, scale);
    if (std::abs(tab.W.norm() - 1.0) > sum_tol) {
        out.push_back("W does not have unit norm (" + fmt(tab.W.norm()) + ")");
    }
    if ((tab.W.array() < 0.0).any()) out.emplace_back("W has negative entries");
    for (Eigen::Index t = 0; t < T; ++t) {
        if (std::abs(tab.x(t) - tab.W.col(t).sum()) > sum_tol) {
            out.push_back("x(" + std::to_string(t + 1) + ") is not the column sum of W");
        }
        if (std::find(tab.empty_layers.begin(), tab.empty_layers.end(), static_cast<Index>(t)) !=
            tab.empty_layers.end()) {
            continue;
        }
        const double s = tab.Z.col(t).sum();
        if (!(std::abs(s - 1.0) <= sum_tol)) {
            out.push_back("Z column " + std::to_string(t + 1) + " sums to " + fmt(s));
        }
    }
    for (Eigen::Index i = 0; i < N; ++i) {
        if (std::abs(tab.x_hat(i) - tab.W.row(i).sum()) > sum_tol) {
            out.push_back("x_hat(" + std::to_string(i + 1) + ") is not the row sum of W");
        }
        if (std::find(tab.empty_nodes.begin(), tab.empty_nodes.end(), static_cast<Index>(i)) !=
            tab.empty_nodes.end()) {
            continue;
        }
        const double s = tab.Z_hat.row(i).sum();
        if (!(std::abs(s - 1.0) <= sum_tol)) {
            out.push_back("Z_hat row " + std::to_string(i + 1) + " sums to " + fmt(s));
        }
    }
    return out;
}

} // namespace supra
