#pragma once

// Dominant (Perron) eigenpairs of nonnegative operators.
//
// The primary method is power iteration on A + cI with a positive shift c,
// which removes the periodicity that makes plain power iteration cycle on
// bipartite structure. When the dominant eigenvalue is nearly degenerate
// (the weak- and strong-coupling regimes of a supracentrality matrix are
// exactly that), power iteration needs O(1/gap) steps; the Auto method then
// hands the current iterate to Noda's shift-and-invert iteration, which uses
// the Collatz-Wielandt upper bound max_i (Ax)_i / x_i as its shift and
// converges quadratically for irreducible nonnegative matrices.

#include "supra/sparse_low_rank.hpp"
#include "supra/types.hpp"

#include <functional>
#include <optional>

namespace supra {

enum class Side { Right, Left };

enum class EigenMethod {
    Power,       // shifted power iteration only
    ShiftInvert, // Noda iteration from the start vector
    Auto,        // power iteration, then Noda if power iteration is too slow
};

struct EigenOptions {
    double tol = 1e-10;
    std::size_t max_iter = 100'000;
    EigenMethod method = EigenMethod::Auto;
    // Auto only: power iterations allowed before switching. Power iteration
    // also hands over early once its observed contraction rate shows it
    // cannot meet `tol` within this budget.
    std::size_t power_budget = 2'000;
    // Start vector; all-ones when empty. Must have the operator's dimension.
    std::optional<Vector> start;
};

struct EigenpairResult {
    double lambda = 0.0;
    Vector vector;                // unit 2-norm, largest-magnitude entry positive
    std::size_t iterations = 0;   // power steps + shift-invert steps
    std::size_t refinements = 0;  // shift-invert steps among `iterations`
    double residual = 0.0;        // ||A v - lambda v||_2
};

/// Type-erased view of an operator A for the solver. `apply` already
/// accounts for the side (it applies A^T for left eigenvectors).
struct OperatorView {
    Eigen::Index dim = 0;
    std::function<void(const Vector&, Vector&)> apply;
    // Explicit form of the same (side-resolved) operator for shift-invert.
    std::function<SparseLowRank()> materialize;
    // Aperiodicity shift c used by power iteration; subtracted from lambda.
    double shift = 0.0;
};

/// Throws NonConvergence when `max_iter` is exhausted.
EigenpairResult dominant_eigenpair(const OperatorView& op, const EigenOptions& opts = {});

/// Convenience overload: c = 0.1 (1 + max row sum of A).
EigenpairResult dominant_eigenpair(const SparseLowRank& a, Side side, const EigenOptions& opts = {});

/// 0.1 * (1 + max_row_sum), the automatic aperiodicity shift.
double aperiodicity_shift(double max_row_sum);

/// Spectral radius of a nonnegative matrix. Falls back to a dense
/// eigendecomposition when the iteration stalls and dim <= 2000.
double perron_root(const SparseLowRank& a, const EigenOptions& opts = {});

} // namespace supra
