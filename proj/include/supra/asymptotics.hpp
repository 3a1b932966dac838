#pragma once

// Closed-form limits of the supracentrality eigenproblem.
//
// Weak coupling (omega -> 0+): the dominant eigenvector concentrates on the
// layers whose centrality matrices share the largest spectral radius and
// mixes their Perron vectors with weights alpha solving a small
// |dominating| x |dominating| eigenproblem X alpha = lambda1 alpha.
//
// Strong coupling (omega -> inf): W(i,t) -> alpha~_i v~_t, where v~ is the
// Perron vector of the interlayer matrix and alpha~ the Perron vector of
// the aggregate X~ = sum_t w_t C^(t), w_t = u~_t v~_t / <u~, v~>.

#include "supra/centrality.hpp"
#include "supra/eigensolver.hpp"
#include "supra/sparse_low_rank.hpp"
#include "supra/types.hpp"

#include <optional>
#include <vector>

namespace supra {

struct LayerEigenpair {
    double spectral_radius = 0.0;
    Vector right; // unit norm
    Vector left;  // unit norm
    bool irreducible = false;
    double residual = 0.0; // max of right and left residuals
};

struct LayerEigendata {
    std::vector<LayerEigenpair> layers;
};

/// Dominant right/left eigenpairs of every layer's centrality matrix.
/// Layers are solved on up to `threads` worker threads. A NonConvergence is
/// rethrown with the failing layer's 1-based index in its message.
LayerEigendata layer_eigendata(const std::vector<LayerCentralityMatrix>& layers,
                               const EigenOptions& opts = {}, unsigned threads = 1);
LayerEigendata layer_eigendata(const MultiplexNetwork& net, const CentralityKind& kind,
                               const EigenOptions& opts = {}, unsigned threads = 1);

/// Relative eigen-gap check for a layer's dominant eigenvalue. Irreducible
/// matrices pass without work (their Perron root is simple); otherwise a
/// deflated, shifted power iteration estimates the next eigenvalue and
/// DegenerateEigenvalue is thrown when it lies within `min_gap` (relative).
void require_simple_dominant(const LayerCentralityMatrix& layer, const LayerEigenpair& pair,
                             Index layer_index, double min_gap = 1e-6);

struct WeakLimitResult {
    std::vector<Index> dominating; // sorted layer indices
    double lambda0 = 0.0;          // lim lambda_max(omega) = max_t spectral radius
    double lambda1 = 0.0;          // dominant eigenvalue of X
    Matrix X;                      // |dominating| x |dominating|
    Vector alpha;                  // right Perron vector of X, unit norm
    Vector beta;                   // left Perron vector of X, unit norm
    CentralityTableau tableau;     // limiting tableau, omega = 0
    LayerEigendata eigendata;
};

inline constexpr double kDefaultDominatingTol = 1e-9;

/// Throws ReducibleMatrix when X is reducible (mixing weights not unique),
/// DegenerateEigenvalue when a dominating layer's Perron root is repeated.
WeakLimitResult weak_limit(const SupraProblem& p, double rel_tol_dominating = kDefaultDominatingTol,
                           const EigenOptions& opts = {});

struct StrongLimitResult {
    double mu1 = 0.0;            // dominant eigenvalue of the interlayer matrix
    double interlayer_gap = 0.0; // relative distance from mu1 to the nearest other eigenvalue
    Vector v_tilde;              // right Perron vector of the interlayer matrix, unit norm
    Vector u_tilde;              // left Perron vector, unit norm
    Vector layer_weights;        // u~_t v~_t / <u~, v~>, sums to 1
    SparseLowRank X_tilde;       // N x N aggregate
    double x_tilde_eigenvalue = 0.0;
    Vector alpha_tilde;          // right Perron vector of X~, unit norm
    Vector beta_tilde;           // left Perron vector of X~, unit norm
    CentralityTableau tableau;   // limiting tableau, omega = +inf, lambda_max = mu1
};

/// Throws DegenerateEigenvalue when the interlayer matrix's top eigenvalue is
/// within 1e-8 (relative) of another eigenvalue.
StrongLimitResult strong_limit(const SupraProblem& p, const EigenOptions& opts = {});

/// X~ for given layer weights: sum_t weights(t) C^(t).
SparseLowRank aggregate_centrality(const std::vector<LayerCentralityMatrix>& layers,
                                   const Vector& weights);

enum class CouplingShape { UndirectedChain, AllToAll, RankOne };

std::string to_string(CouplingShape shape);

/// Recognises the interlayer matrices with closed-form strong-coupling
/// limits. A rank-one matrix w w^T only qualifies when ||w|| = 1; otherwise
/// NotApplicable is thrown with that reason. Other shapes yield nullopt.
std::optional<CouplingShape> detect_coupling_shape(const InterlayerMatrix& a);

struct CorollaryReport {
    CouplingShape shape = CouplingShape::AllToAll;
    double mu1_general = 0.0;
    double mu1_closed_form = 0.0;
    // All-to-all only: the value the closed-form statement gives for mu1 (the
    // node count N), reported next to the computed T for comparison.
    std::optional<double> mu1_stated;
    Vector weights_general;
    Vector weights_closed_form;
    double mu1_discrepancy = 0.0;
    double weight_discrepancy = 0.0;  // max |w_general - w_closed|
    double x_tilde_discrepancy = 0.0; // max entrywise |X~_general - X~_closed|
    double max_abs_discrepancy = 0.0; // max of the three above
};

/// Compares strong_limit's general path with the closed form for the
/// detected coupling shape. Throws NotApplicable for other shapes.
CorollaryReport corollary_crosscheck(const SupraProblem& p, const EigenOptions& opts = {});
CorollaryReport corollary_crosscheck(const SupraProblem& p, const StrongLimitResult& general);

} // namespace supra
