#include "supra/graph_analysis.hpp"

#include "supra/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace supra {

Digraph pattern_graph(const SparseMatrix& m) {
    if (m.rows() != m.cols()) throw InvalidArgument("pattern graph needs a square matrix");
    Digraph g(static_cast<Index>(m.rows()));
    for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
        for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
            if (it.value() > 0.0) g[static_cast<Index>(it.row())].push_back(static_cast<Index>(it.col()));
        }
    }
    return g;
}

Digraph pattern_graph(const Matrix& m) {
    if (m.rows() != m.cols()) throw InvalidArgument("pattern graph needs a square matrix");
    Digraph g(static_cast<Index>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (m(i, j) > 0.0) g[static_cast<Index>(i)].push_back(static_cast<Index>(j));
        }
    }
    return g;
}

std::vector<Index> strongly_connected_components(const Digraph& g, Index* n_components) {
    constexpr Index kUnvisited = std::numeric_limits<Index>::max();
    const Index n = g.size();
    std::vector<Index> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
    std::vector<bool> on_stack(n, false);
    std::vector<Index> stack;
    // (vertex, next edge position)
    std::vector<std::pair<Index, Index>> call;
    Index counter = 0;
    Index n_comp = 0;

    for (Index root = 0; root < n; ++root) {
        if (index[root] != kUnvisited) continue;
        call.emplace_back(root, 0);
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!call.empty()) {
            auto& [v, pos] = call.back();
            if (pos < g[v].size()) {
                const Index w = g[v][pos++];
                if (index[w] == kUnvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const Index done = v;
            call.pop_back();
            if (!call.empty()) {
                const Index parent = call.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
            if (low[done] == index[done]) {
                Index w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = n_comp;
                } while (w != done);
                ++n_comp;
            }
        }
    }
    if (n_components) *n_components = n_comp;
    return comp;
}

bool strongly_connected(const Digraph& g) {
    if (g.empty()) return false;
    Index n_comp = 0;
    strongly_connected_components(g, &n_comp);
    return n_comp == 1;
}

bool strongly_connected(const SparseMatrix& m) { return strongly_connected(pattern_graph(m)); }

bool strongly_connected(const Matrix& m) { return strongly_connected(pattern_graph(m)); }

bool strongly_connected(const SparseLowRank& m) {
    if (m.rank() == 0) return strongly_connected(m.sparse);
    if ((m.U.array() < 0.0).any() || (m.V.array() < 0.0).any() ||
        (m.sparse.coeffs() < 0.0).any()) {
        return strongly_connected(m.dense());
    }
    // Each rank-one term u v^T links every i with u_i > 0 to every j with
    // v_j > 0. Route those links through one auxiliary vertex per term rather
    // than materialising up to n^2 edges; reachability between the original
    // vertices is unchanged.
    Digraph g = pattern_graph(m.sparse);
    const auto n = m.dim();
    for (Eigen::Index k = 0; k < m.rank(); ++k) {
        const bool has_src = (m.U.col(k).array() > 0.0).any();
        const bool has_dst = (m.V.col(k).array() > 0.0).any();
        if (!has_src || !has_dst) continue;
        const Index hub = g.size();
        g.emplace_back();
        for (Eigen::Index i = 0; i < n; ++i) {
            if (m.U(i, k) > 0.0) g[static_cast<Index>(i)].push_back(hub);
            if (m.V(i, k) > 0.0) g[hub].push_back(static_cast<Index>(i));
        }
    }
    return strongly_connected(g);
}

PreconditionReport check_preconditions(const InterlayerMatrix& interlayer,
                                       const std::vector<LayerCentralityMatrix>& layers) {
    PreconditionReport r;
    r.interlayer_ok = strongly_connected(interlayer.values());
    if (layers.empty()) return r;

    const auto n = layers.front().matrix.dim();
    SparseMatrix sum(n, n);
    Eigen::Index rank = 0;
    for (const auto& l : layers) {
        sum += l.matrix.sparse;
        rank += l.matrix.rank();
    }
    Matrix u(n, rank), v(n, rank);
    Eigen::Index col = 0;
    for (const auto& l : layers) {
        const auto r_l = l.matrix.rank();
        if (r_l == 0) continue;
        u.middleCols(col, r_l) = l.matrix.U;
        v.middleCols(col, r_l) = l.matrix.V;
        col += r_l;
    }
    r.layer_sum_ok = strongly_connected(SparseLowRank(std::move(sum), std::move(u), std::move(v)));
    return r;
}

PreconditionReport check_preconditions(const SupraProblem& p) {
    require_valid(p);
    return check_preconditions(p.interlayer, build_layer_matrices(p.network, p.kind));
}

Matrix intralayer_degrees(const MultiplexNetwork& net) {
    Matrix d = Matrix::Zero(static_cast<Eigen::Index>(net.n_nodes),
                            static_cast<Eigen::Index>(net.n_layers()));
    for (Index t = 0; t < net.n_layers(); ++t) {
        for (const auto& e : net.layers[t].entries) {
            d(static_cast<Eigen::Index>(e.from), static_cast<Eigen::Index>(t)) += e.weight;
        }
    }
    return d;
}

Vector total_degrees(const MultiplexNetwork& net) { return intralayer_degrees(net).rowwise().sum(); }

Vector k_path_counts(const LayerGraph& a, Index k) {
    const SparseMatrix m = a.to_sparse();
    Vector x = Vector::Ones(static_cast<Eigen::Index>(a.n_nodes));
    for (Index step = 0; step < k; ++step) {
        Vector y = m * x;
        x.swap(y);
    }
    return x;
}

LayerGraph aggregate_layers(const MultiplexNetwork& net) {
    std::map<std::pair<Index, Index>, double> acc;
    for (const auto& layer : net.layers) {
        for (const auto& e : layer.entries) acc[{e.from, e.to}] += e.weight;
    }
    LayerGraph g;
    g.n_nodes = net.n_nodes;
    g.entries.reserve(acc.size());
    for (const auto& [key, w] : acc) g.entries.push_back({key.first, key.second, w});
    return g;
}

double pearson(const Vector& x, const Vector& y) {
    if (x.size() != y.size()) throw InvalidArgument("pearson: inputs differ in length");
    if (x.size() < 2) throw InvalidArgument("pearson: need at least two samples");
    const Vector dx = x.array() - x.mean();
    const Vector dy = y.array() - y.mean();
    const double sx = dx.norm();
    const double sy = dy.norm();
    // Relative floor: conditional centralities that are uniform up to rounding
    // count as constant.
    const auto flat = [](double s, const Vector& v) {
        return !(s > 1e-12 * std::sqrt(static_cast<double>(v.size())) * v.cwiseAbs().maxCoeff());
    };
    const bool cx = flat(sx, x);
    const bool cy = flat(sy, y);
    if (cx && cy) throw ConstantInput("pearson: both inputs are constant");
    if (cx || cy) throw ConstantInput("pearson: one input is constant; correlation undefined");
    return std::clamp(dx.dot(dy) / (sx * sy), -1.0, 1.0);
}

} // namespace supra
