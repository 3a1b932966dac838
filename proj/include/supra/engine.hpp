#pragma once

// Matrix-free supracentrality operator
//
//     C(omega) = diag[C^(1), ..., C^(T)] + omega (A~ kron I) + shift I
//
// acting on length-NT vectors whose block t (entries t*N .. t*N+N-1) holds
// the node-layer pairs of layer t.

#include "supra/centrality.hpp"
#include "supra/eigensolver.hpp"
#include "supra/graph_analysis.hpp"
#include "supra/types.hpp"

#include <memory>
#include <vector>

namespace supra {

class SupraOperator {
public:
    using LayerSet = std::shared_ptr<const std::vector<LayerCentralityMatrix>>;

    explicit SupraOperator(const SupraProblem& problem, double shift = 0.0);
    SupraOperator(LayerSet layers, InterlayerMatrix interlayer, double omega, double shift = 0.0);

    /// Same layers and coupling at a different omega (layers are shared, not copied).
    SupraOperator with_omega(double omega) const;

    Index n_nodes() const noexcept { return n_; }
    Index n_layers() const noexcept { return t_; }
    Eigen::Index dim() const noexcept { return static_cast<Eigen::Index>(n_ * t_); }
    double omega() const noexcept { return omega_; }
    double shift() const noexcept { return shift_; }
    const std::vector<LayerCentralityMatrix>& layers() const noexcept { return *layers_; }
    const LayerSet& layer_set() const noexcept { return layers_; }
    const InterlayerMatrix& interlayer() const noexcept { return interlayer_; }

    void apply(const Vector& x, Vector& y) const;
    void apply_transpose(const Vector& x, Vector& y) const;
    Vector operator*(const Vector& x) const {
        Vector y;
        apply(x, y);
        return y;
    }

    /// Largest row sum over the diagonal blocks C^(t) + omega A~(t,t) I + shift I.
    double max_diagonal_block_row_sum() const;

    /// Explicit NT x NT sparse + low-rank form (used by shift-invert refinement).
    SparseLowRank materialize() const;
    Matrix dense() const { return materialize().dense(); }

private:
    LayerSet layers_;
    InterlayerMatrix interlayer_;
    Index n_ = 0;
    Index t_ = 0;
    double omega_ = 0.0;
    double shift_ = 0.0;
};

/// Block-wise evaluation; equivalent to `op * x`.
Vector apply_supra(const SupraOperator& op, const Vector& x);

/// Dominant eigenpair of C(omega) (Right) or C(omega)^T (Left). Power
/// iteration runs on C(omega) + cI with c = 0.1 (1 + max diagonal-block row
/// sum); the returned lambda excludes c.
EigenpairResult dominant_eigenpair(const SupraOperator& op, Side side,
                                   const EigenOptions& opts = {});

/// Reshapes a unit, nonnegative length-NT eigenvector into the tableau.
CentralityTableau tableau_from_vector(const Vector& v, Index n_nodes, Index n_layers,
                                      double lambda, double omega);

struct SupraSolution {
    EigenpairResult eigenpair;
    CentralityTableau tableau;
    PreconditionReport preconditions;
    std::vector<std::string> tableau_issues; // check_tableau output; empty when healthy
};

/// Builds the operator for `problem`, solves, and derives the tableau.
SupraSolution solve(const SupraProblem& problem, const EigenOptions& opts = {});
SupraSolution solve(const SupraOperator& op, const PreconditionReport& pre,
                    const EigenOptions& opts = {});

/// T-stride permutation as an index map: (P y)[k] = y[perm[k]]. It maps a
/// node-major vector (index i*T + t) to the layer-major order used by the
/// engine (index t*N + i), so P (I kron A~) P^T = A~ kron I.
std::vector<Index> stride_permutation(Index n_nodes, Index n_layers);

/// (P y)[k] = y[perm[k]].
Vector apply_permutation(const std::vector<Index>& perm, const Vector& y);

} // namespace supra
