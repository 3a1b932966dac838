#include "supra/engine.hpp"

#include "supra/error.hpp"

#include <cmath>
#include <limits>

namespace supra {

SupraOperator::SupraOperator(const SupraProblem& problem, double shift)
    : SupraOperator(std::make_shared<const std::vector<LayerCentralityMatrix>>(
                        (require_valid(problem), build_layer_matrices(problem.network, problem.kind))),
                    problem.interlayer, problem.omega, shift) {}

SupraOperator::SupraOperator(LayerSet layers, InterlayerMatrix interlayer, double omega, double shift)
    : layers_(std::move(layers)), interlayer_(std::move(interlayer)), omega_(omega), shift_(shift) {
    if (!layers_ || layers_->empty()) throw InvalidArgument("supra operator needs at least one layer");
    t_ = layers_->size();
    n_ = layers_->front().n();
    for (const auto& l : *layers_) {
        if (l.n() != n_) throw InvalidArgument("layer centrality matrices differ in size");
    }
    if (interlayer_.dim() != t_) throw InvalidArgument("interlayer matrix does not match layer count");
    if (!std::isfinite(omega_) || omega_ < 0.0) throw InvalidArgument("omega must be finite and >= 0");
}

SupraOperator SupraOperator::with_omega(double omega) const {
    return SupraOperator(layers_, interlayer_, omega, shift_);
}

void SupraOperator::apply(const Vector& x, Vector& y) const {
    const auto n = static_cast<Eigen::Index>(n_);
    const auto t = static_cast<Eigen::Index>(t_);
    if (x.size() != n * t) throw InvalidArgument("supra operator applied to wrong-length vector");
    y.resize(n * t);
    Eigen::Map<const Matrix> xb(x.data(), n, t);
    Eigen::Map<Matrix> yb(y.data(), n, t);
    // Interlayer coupling: block s of (A~ kron I) x is sum_t A~(s,t) x_t.
    yb.noalias() = omega_ * (xb * interlayer_.values().transpose());
    if (shift_ != 0.0) yb += shift_ * xb;
    Vector in(n), out(n);
    for (Eigen::Index s = 0; s < t; ++s) {
        in = xb.col(s);
        (*layers_)[static_cast<Index>(s)].apply(in, out);
        yb.col(s) += out;
    }
}

void SupraOperator::apply_transpose(const Vector& x, Vector& y) const {
    const auto n = static_cast<Eigen::Index>(n_);
    const auto t = static_cast<Eigen::Index>(t_);
    if (x.size() != n * t) throw InvalidArgument("supra operator applied to wrong-length vector");
    y.resize(n * t);
    Eigen::Map<const Matrix> xb(x.data(), n, t);
    Eigen::Map<Matrix> yb(y.data(), n, t);
    yb.noalias() = omega_ * (xb * interlayer_.values());
    if (shift_ != 0.0) yb += shift_ * xb;
    Vector in(n), out(n);
    for (Eigen::Index s = 0; s < t; ++s) {
        in = xb.col(s);
        (*layers_)[static_cast<Index>(s)].apply_transpose(in, out);
        yb.col(s) += out;
    }
}

double SupraOperator::max_diagonal_block_row_sum() const {
    double best = 0.0;
    for (Index s = 0; s < t_; ++s) {
        const double block = (*layers_)[s].matrix.max_row_sum() + omega_ * interlayer_(s, s) + shift_;
        best = std::max(best, block);
    }
    return best;
}

SparseLowRank SupraOperator::materialize() const {
    const auto n = static_cast<Eigen::Index>(n_);
    const auto t = static_cast<Eigen::Index>(t_);
    const auto dim = n * t;
    std::vector<Eigen::Triplet<double>> trips;
    Eigen::Index rank = 0;
    std::size_t nnz = 0;
    for (const auto& l : *layers_) {
        nnz += static_cast<std::size_t>(l.matrix.sparse.nonZeros());
        rank += l.matrix.rank();
    }
    trips.reserve(nnz + static_cast<std::size_t>(dim * t + dim));
    for (Eigen::Index s = 0; s < t; ++s) {
        const auto& sp = (*layers_)[static_cast<Index>(s)].matrix.sparse;
        for (Eigen::Index r = 0; r < sp.outerSize(); ++r) {
            for (SparseMatrix::InnerIterator it(sp, r); it; ++it) {
                trips.emplace_back(s * n + it.row(), s * n + it.col(), it.value());
            }
        }
        for (Eigen::Index q = 0; q < t; ++q) {
            const double w = omega_ * interlayer_.values()(s, q) + (s == q ? shift_ : 0.0);
            if (w == 0.0) continue;
            for (Eigen::Index i = 0; i < n; ++i) trips.emplace_back(s * n + i, q * n + i, w);
        }
    }
    SparseMatrix sp(dim, dim);
    sp.setFromTriplets(trips.begin(), trips.end());

    Matrix u = Matrix::Zero(dim, rank);
    Matrix v = Matrix::Zero(dim, rank);
    Eigen::Index col = 0;
    for (Eigen::Index s = 0; s < t; ++s) {
        const auto& m = (*layers_)[static_cast<Index>(s)].matrix;
        if (m.rank() == 0) continue;
        u.block(s * n, col, n, m.rank()) = m.U;
        v.block(s * n, col, n, m.rank()) = m.V;
        col += m.rank();
    }
    return SparseLowRank(std::move(sp), std::move(u), std::move(v));
}

Vector apply_supra(const SupraOperator& op, const Vector& x) { return op * x; }

EigenpairResult dominant_eigenpair(const SupraOperator& op, Side side, const EigenOptions& opts) {
    OperatorView view;
    view.dim = op.dim();
    view.shift = aperiodicity_shift(op.max_diagonal_block_row_sum());
    if (side == Side::Right) {
        view.apply = [&op](const Vector& x, Vector& y) { op.apply(x, y); };
        view.materialize = [&op] { return op.materialize(); };
    } else {
        view.apply = [&op](const Vector& x, Vector& y) { op.apply_transpose(x, y); };
        view.materialize = [&op] { return op.materialize().transposed(); };
    }
    return dominant_eigenpair(view, opts);
}

CentralityTableau tableau_from_vector(const Vector& v, Index n_nodes, Index n_layers, double lambda,
                                      double omega) {
    const auto n = static_cast<Eigen::Index>(n_nodes);
    const auto t = static_cast<Eigen::Index>(n_layers);
    if (v.size() != n * t) throw InvalidArgument("eigenvector length does not match N*T");
    CentralityTableau tab;
    tab.W = Eigen::Map<const Matrix>(v.data(), n, t);
    tab.x = tab.W.colwise().sum().transpose();
    tab.x_hat = tab.W.rowwise().sum();
    tab.Z.resize(n, t);
    tab.Z_hat.resize(n, t);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (Eigen::Index s = 0; s < t; ++s) {
        if (tab.x(s) > 0.0) {
            tab.Z.col(s) = tab.W.col(s) / tab.x(s);
        } else {
            tab.Z.col(s).setConstant(nan);
            tab.empty_layers.push_back(static_cast<Index>(s));
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (tab.x_hat(i) > 0.0) {
            tab.Z_hat.row(i) = tab.W.row(i) / tab.x_hat(i);
        } else {
            tab.Z_hat.row(i).setConstant(nan);
            tab.empty_nodes.push_back(static_cast<Index>(i));
        }
    }
    tab.lambda_max = lambda;
    tab.omega = omega;
    return tab;
}

SupraSolution solve(const SupraOperator& op, const PreconditionReport& pre, const EigenOptions& opts) {
    SupraSolution sol;
    sol.preconditions = pre;
    sol.eigenpair = dominant_eigenpair(op, Side::Right, opts);
    sol.tableau = tableau_from_vector(sol.eigenpair.vector, op.n_nodes(), op.n_layers(),
                                      sol.eigenpair.lambda, op.omega());
    sol.tableau_issues = check_tableau(sol.tableau);
    return sol;
}

SupraSolution solve(const SupraProblem& problem, const EigenOptions& opts) {
    const SupraOperator op(problem);
    return solve(op, check_preconditions(problem.interlayer, op.layers()), opts);
}

std::vector<Index> stride_permutation(Index n_nodes, Index n_layers) {
    if (n_nodes == 0 || n_layers == 0) throw InvalidArgument("stride permutation needs N, T >= 1");
    const Index dim = n_nodes * n_layers;
    std::vector<Index> perm(dim);
    // 1-based: l = ceil(k/N) + T ((k-1) mod N).
    for (Index k = 0; k < dim; ++k) perm[k] = k / n_nodes + n_layers * (k % n_nodes);
    return perm;
}

Vector apply_permutation(const std::vector<Index>& perm, const Vector& y) {
    if (static_cast<Eigen::Index>(perm.size()) != y.size()) {
        throw InvalidArgument("permutation and vector lengths differ");
    }
    Vector out(y.size());
    for (std::size_t k = 0; k < perm.size(); ++k) {
        out(static_cast<Eigen::Index>(k)) = y(static_cast<Eigen::Index>(perm[k]));
    }
    return out;
}

} // namespace supra
