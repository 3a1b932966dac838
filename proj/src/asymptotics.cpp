#include "supra/asymptotics.hpp"

#include "supra/engine.hpp"
#include "supra/error.hpp"
#include "supra/graph_analysis.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>

namespace supra {

namespace {

constexpr Eigen::Index kDenseFallbackDim = 2000;

// Perron pair from a full eigendecomposition. Used for small layers the
// iterative solver gives up on, typically nilpotent parts (DAG layers) whose
// residual cannot shrink relative to a zero eigenvalue.
EigenpairResult dense_dominant(const Matrix& m) {
    Eigen::EigenSolver<Matrix> es(m);
    Eigen::Index k = 0;
    es.eigenvalues().real().maxCoeff(&k);
    EigenpairResult r;
    r.lambda = std::max(0.0, es.eigenvalues()(k).real());
    r.vector = es.eigenvectors().col(k).real();
    Eigen::Index imax = 0;
    r.vector.cwiseAbs().maxCoeff(&imax);
    if (r.vector(imax) < 0.0) r.vector = -r.vector;
    r.vector = r.vector.cwiseMax(0.0);
    r.vector.normalize();
    r.residual = (m * r.vector - r.lambda * r.vector).norm();
    return r;
}

LayerEigenpair solve_layer(const LayerCentralityMatrix& layer, Index t, const EigenOptions& opts) {
    LayerEigenpair out;
    try {
        const auto right = dominant_eigenpair(layer.matrix, Side::Right, opts);
        const auto left = dominant_eigenpair(layer.matrix, Side::Left, opts);
        out.spectral_radius = right.lambda;
        out.right = right.vector;
        out.left = left.vector;
        out.residual = std::max(right.residual, left.residual);
    } catch (const NonConvergence& e) {
        if (layer.matrix.dim() > kDenseFallbackDim) {
            throw NonConvergence(e.iterations(), e.residual(), "layer " + std::to_string(t + 1));
        }
        const Matrix m = layer.matrix.dense();
        const auto right = dense_dominant(m);
        const auto left = dense_dominant(m.transpose());
        out.spectral_radius = right.lambda;
        out.right = right.vector;
        out.left = left.vector;
        out.residual = std::max(right.residual, left.residual);
    }
    out.irreducible = strongly_connected(layer.matrix);
    return out;
}

// One dominant eigenpair of a small dense matrix via the same solver. These
// feed closed-form weights, so solve to near machine precision when possible.
EigenpairResult dense_perron(const Matrix& m, Side side, const EigenOptions& opts) {
    const auto a = from_dense(m);
    EigenOptions tight = opts;
    tight.tol = std::min(opts.tol, 1e-14);
    try {
        return dominant_eigenpair(a, side, tight);
    } catch (const NonConvergence&) {
        return dominant_eigenpair(a, side, opts);
    }
}

} // namespace

LayerEigendata layer_eigendata(const std::vector<LayerCentralityMatrix>& layers,
                               const EigenOptions& opts, unsigned threads) {
    LayerEigendata data;
    data.layers.resize(layers.size());
    if (threads <= 1 || layers.size() <= 1) {
        for (Index t = 0; t < layers.size(); ++t) data.layers[t] = solve_layer(layers[t], t, opts);
        return data;
    }
    const Index workers = std::min<Index>(threads, layers.size());
    std::vector<std::future<void>> jobs;
    for (Index w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (Index t = w; t < layers.size(); t += workers) {
                data.layers[t] = solve_layer(layers[t], t, opts);
            }
        }));
    }
    for (auto& j : jobs) j.get();
    return data;
}

LayerEigendata layer_eigendata(const MultiplexNetwork& net, const CentralityKind& kind,
                               const EigenOptions& opts, unsigned threads) {
    return layer_eigendata(build_layer_matrices(net, kind), opts, threads);
}

void require_simple_dominant(const LayerCentralityMatrix& layer, const LayerEigenpair& pair,
                             Index layer_index, double min_gap) {
    if (pair.irreducible) return;
    const auto& a = layer.matrix;
    const auto n = a.dim();
    const double uv = pair.left.dot(pair.right);
    const auto name = "layer " + std::to_string(layer_index + 1);
    if (!(uv > 1e-12)) {
        throw DegenerateEigenvalue(name + ": left and right Perron vectors are orthogonal");
    }
    const double c = aperiodicity_shift(a.max_row_sum());
    const double top = pair.spectral_radius + c;
    if (!(top > 0.0)) throw DegenerateEigenvalue(name + ": zero spectral radius");

    // Irregular start so that symmetric structure cannot hide the second eigenvector.
    Vector x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = 0.1 + static_cast<double>((i * 7919 + 13) % 97) / 97.0;
    const auto deflate = [&](Vector& y) { y -= pair.right * (pair.left.dot(y) / uv); };
    deflate(x);
    if (!(x.norm() > 0.0)) return; // n == 1
    x.normalize();

    constexpr int kSteps = 600;
    constexpr int kBurnIn = 200;
    double log_growth = 0.0;
    Vector ax;
    for (int k = 0; k < kSteps; ++k) {
        a.apply(x, ax);
        ax += c * x;
        deflate(ax);
        const double g = ax.norm();
        if (!(g > 0.0)) return; // nilpotent remainder: gap is total
        if (k >= kBurnIn) log_growth += std::log(g);
        x = ax / g;
    }
    const double second = std::exp(log_growth / (kSteps - kBurnIn));
    if (second >= (1.0 - min_gap) * top) {
        throw DegenerateEigenvalue(name + ": dominant eigenvalue is not simple (relative gap below " +
                                   std::to_string(min_gap) + ")");
    }
}

WeakLimitResult weak_limit(const SupraProblem& p, double rel_tol_dominating, const EigenOptions& opts) {
    require_valid(p);
    if (!(rel_tol_dominating >= 0.0 && rel_tol_dominating < 1.0)) {
        throw InvalidArgument("dominating-set tolerance must lie in [0,1)");
    }
    const auto layers = build_layer_matrices(p.network, p.kind);
    WeakLimitResult r;
    r.eigendata = layer_eigendata(layers, opts);

    const auto& ed = r.eigendata.layers;
    double mu_max = -std::numeric_limits<double>::infinity();
    for (const auto& l : ed) mu_max = std::max(mu_max, l.spectral_radius);
    r.lambda0 = mu_max;
    for (Index t = 0; t < ed.size(); ++t) {
        if (ed[t].spectral_radius >= (1.0 - rel_tol_dominating) * mu_max) r.dominating.push_back(t);
    }
    for (Index t : r.dominating) require_simple_dominant(layers[t], ed[t], t);

    const auto m = static_cast<Eigen::Index>(r.dominating.size());
    r.X.resize(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
        const auto& ta = ed[r.dominating[static_cast<Index>(a)]];
        const double norm = ta.left.dot(ta.right);
        if (!(norm > 0.0)) {
            throw DegenerateEigenvalue("layer " + std::to_string(r.dominating[static_cast<Index>(a)] + 1) +
                                       ": <u, v> vanishes");
        }
        for (Eigen::Index b = 0; b < m; ++b) {
            const auto& tb = ed[r.dominating[static_cast<Index>(b)]];
            r.X(a, b) = p.interlayer(r.dominating[static_cast<Index>(a)], r.dominating[static_cast<Index>(b)]) *
                        ta.left.dot(tb.right) / norm;
        }
    }

    if (m == 1) {
        r.alpha = Vector::Ones(1);
        r.beta = Vector::Ones(1);
        r.lambda1 = r.X(0, 0);
    } else {
        if (!strongly_connected(r.X)) {
            throw ReducibleMatrix("weak-coupling matrix X is reducible: the interlayer coupling "
                                  "restricted to the dominating layers is not strongly connected");
        }
        const auto right = dense_perron(r.X, Side::Right, opts);
        const auto left = dense_perron(r.X, Side::Left, opts);
        r.alpha = right.vector;
        r.beta = left.vector;
        r.lambda1 = right.lambda;
    }

    const auto n = static_cast<Eigen::Index>(p.network.n_nodes);
    const auto t_count = static_cast<Eigen::Index>(p.network.n_layers());
    Vector v = Vector::Zero(n * t_count);
    for (Eigen::Index a = 0; a < m; ++a) {
        const Index t = r.dominating[static_cast<Index>(a)];
        v.segment(static_cast<Eigen::Index>(t) * n, n) = r.alpha(a) * ed[t].right;
    }
    v.normalize();
    r.tableau = tableau_from_vector(v, p.network.n_nodes, p.network.n_layers(), r.lambda0, 0.0);
    return r;
}

SparseLowRank aggregate_centrality(const std::vector<LayerCentralityMatrix>& layers,
                                   const Vector& weights) {
    if (layers.empty() || static_cast<Eigen::Index>(layers.size()) != weights.size()) {
        throw InvalidArgument("one weight per layer is required");
    }
    const auto n = layers.front().matrix.dim();
    SparseMatrix sum(n, n);
    Eigen::Index rank = 0;
    for (std::size_t t = 0; t < layers.size(); ++t) {
        const double w = weights(static_cast<Eigen::Index>(t));
        if (w == 0.0) continue;
        sum += w * layers[t].matrix.sparse;
        rank += layers[t].matrix.rank();
    }
    Matrix u(n, rank), v(n, rank);
    Eigen::Index col = 0;
    for (std::size_t t = 0; t < layers.size(); ++t) {
        const double w = weights(static_cast<Eigen::Index>(t));
        const auto& m = layers[t].matrix;
        if (w == 0.0 || m.rank() == 0) continue;
        u.middleCols(col, m.rank()) = w * m.U;
        v.middleCols(col, m.rank()) = m.V;
        col += m.rank();
    }
    sum.prune(0.0, 0.0);
    return SparseLowRank(std::move(sum), std::move(u), std::move(v));
}

StrongLimitResult strong_limit(const SupraProblem& p, const EigenOptions& opts) {
    require_valid(p);
    const Matrix& a = p.interlayer.values();
    StrongLimitResult r;

    const auto right = dense_perron(a, Side::Right, opts);
    const auto left = dense_perron(a, Side::Left, opts);
    r.mu1 = right.lambda;
    r.v_tilde = right.vector;
    r.u_tilde = left.vector;

    r.interlayer_gap = std::numeric_limits<double>::infinity();
    if (a.rows() > 1) {
        const Eigen::EigenSolver<Matrix> es(a, false);
        const auto ev = es.eigenvalues();
        Eigen::Index perron = 0;
        (ev.array() - r.mu1).abs().minCoeff(&perron);
        for (Eigen::Index k = 0; k < ev.size(); ++k) {
            if (k != perron) r.interlayer_gap = std::min(r.interlayer_gap, std::abs(ev(k) - r.mu1));
        }
        r.interlayer_gap /= std::max(std::abs(r.mu1), std::numeric_limits<double>::min());
        if (r.interlayer_gap <= 1e-8) {
            throw DegenerateEigenvalue("interlayer matrix has a repeated dominant eigenvalue");
        }
    }

    const double uv = r.u_tilde.dot(r.v_tilde);
    if (!(uv > 0.0)) throw DegenerateEigenvalue("interlayer Perron vectors are orthogonal");
    r.layer_weights = r.u_tilde.cwiseProduct(r.v_tilde) / uv;

    const auto layers = build_layer_matrices(p.network, p.kind);
    r.X_tilde = aggregate_centrality(layers, r.layer_weights);
    const auto xr = dominant_eigenpair(r.X_tilde, Side::Right, opts);
    const auto xl = dominant_eigenpair(r.X_tilde, Side::Left, opts);
    r.x_tilde_eigenvalue = xr.lambda;
    r.alpha_tilde = xr.vector;
    r.beta_tilde = xl.vector;

    // Node-major assembly: block i (length T) is alpha~_i v~; the stride
    // permutation reorders it into the engine's layer-major layout.
    const Index n = p.network.n_nodes;
    const Index t_count = p.network.n_layers();
    Vector node_major(static_cast<Eigen::Index>(n * t_count));
    for (Index i = 0; i < n; ++i) {
        node_major.segment(static_cast<Eigen::Index>(i * t_count), static_cast<Eigen::Index>(t_count)) =
            r.alpha_tilde(static_cast<Eigen::Index>(i)) * r.v_tilde;
    }
    Vector v = apply_permutation(stride_permutation(n, t_count), node_major);
    v.normalize();
    r.tableau = tableau_from_vector(v, n, t_count, r.mu1, std::numeric_limits<double>::infinity());
    return r;
}

std::string to_string(CouplingShape shape) {
    switch (shape) {
    case CouplingShape::UndirectedChain: return "undirected_chain";
    case CouplingShape::AllToAll: return "all_to_all";
    case CouplingShape::RankOne: return "rank_one";
    }
    return "unknown";
}

std::optional<CouplingShape> detect_coupling_shape(const InterlayerMatrix& interlayer) {
    const Matrix& a = interlayer.values();
    const auto t = a.rows();
    if (t >= 2) {
        bool chain = true;
        for (Eigen::Index i = 0; i < t && chain; ++i) {
            for (Eigen::Index j = 0; j < t && chain; ++j) {
                chain = a(i, j) == (std::abs(i - j) == 1 ? 1.0 : 0.0);
            }
        }
        if (chain) return CouplingShape::UndirectedChain;
    }
    if ((a.array() == 1.0).all()) return CouplingShape::AllToAll;

    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) return std::nullopt;
    const Vector w = a.diagonal().cwiseSqrt();
    if (!(w.norm() > 0.0)) return std::nullopt;
    if ((a - w * w.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) return std::nullopt;
    if (std::abs(w.squaredNorm() - 1.0) > 1e-12) {
        throw NotApplicable("rank-one coupling w w^T needs ||w|| = 1 for its closed form (||w||^2 = " +
                            std::to_string(w.squaredNorm()) + ")");
    }
    return CouplingShape::RankOne;
}

CorollaryReport corollary_crosscheck(const SupraProblem& p, const StrongLimitResult& general) {
    const auto shape = detect_coupling_shape(p.interlayer);
    if (!shape) {
        throw NotApplicable("interlayer matrix is not an undirected chain, all-to-all, or "
                            "normalised rank-one coupling");
    }
    const auto t = static_cast<Eigen::Index>(p.interlayer.dim());
    CorollaryReport r;
    r.shape = *shape;
    r.mu1_general = general.mu1;
    r.weights_general = general.layer_weights;
    r.weights_closed_form.resize(t);

    switch (*shape) {
    case CouplingShape::UndirectedChain: {
        const double denom = static_cast<double>(t + 1);
        r.mu1_closed_form = 2.0 * std::cos(std::numbers::pi / denom);
        for (Eigen::Index s = 0; s < t; ++s) {
            const double v = std::sin(std::numbers::pi * static_cast<double>(s + 1) / denom);
            r.weights_closed_form(s) = v * v;
        }
        r.weights_closed_form /= r.weights_closed_form.sum();
        break;
    }
    case CouplingShape::AllToAll:
        r.mu1_closed_form = static_cast<double>(t);
        r.mu1_stated = static_cast<double>(p.network.n_nodes);
        r.weights_closed_form.setConstant(1.0 / static_cast<double>(t));
        break;
    case CouplingShape::RankOne:
        r.mu1_closed_form = 1.0;
        r.weights_closed_form = p.interlayer.values().diagonal();
        break;
    }

    r.mu1_discrepancy = std::abs(r.mu1_general - r.mu1_closed_form);
    r.weight_discrepancy = (r.weights_general - r.weights_closed_form).cwiseAbs().maxCoeff();

    const auto layers = build_layer_matrices(p.network, p.kind);
    const auto n = static_cast<Eigen::Index>(p.network.n_nodes);
    if (n <= 2000) {
        const Matrix closed = aggregate_centrality(layers, r.weights_closed_form).dense();
        r.x_tilde_discrepancy = (general.X_tilde.dense() - closed).cwiseAbs().maxCoeff();
    } else {
        // X~ is linear in the weights: bound the entrywise gap instead of densifying.
        double bound = 0.0;
        for (Eigen::Index s = 0; s < t; ++s) {
            const auto& m = layers[static_cast<Index>(s)].matrix;
            double entry_max = m.sparse.nonZeros() ? m.sparse.coeffs().cwiseAbs().maxCoeff() : 0.0;
            if (m.rank() > 0) {
                entry_max += m.U.cwiseAbs().maxCoeff() * m.V.cwiseAbs().maxCoeff() *
                             static_cast<double>(m.rank());
            }
            bound += std::abs(r.weights_general(s) - r.weights_closed_form(s)) * entry_max;
        }
        r.x_tilde_discrepancy = bound;
    }
    r.max_abs_discrepancy = std::max({r.mu1_discrepancy, r.weight_discrepancy, r.x_tilde_discrepancy});
    return r;
}

CorollaryReport corollary_crosscheck(const SupraProblem& p, const EigenOptions& opts) {
    require_valid(p);
    // Reject unsupported shapes before doing the general solve.
    if (!detect_coupling_shape(p.interlayer)) {
        throw NotApplicable("interlayer matrix is not an undirected chain, all-to-all, or "
                            "normalised rank-one coupling");
    }
    return corollary_crosscheck(p, strong_limit(p, opts));
}

} // namespace supra
