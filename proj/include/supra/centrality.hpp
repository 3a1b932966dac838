#pragma once

// Per-layer centrality matrices C = C(A).

#include "supra/sparse_low_rank.hpp"
#include "supra/types.hpp"

#include <vector>

namespace supra {

/// Hub/authority products above this many stored entries trigger a warning on std::clog.
inline constexpr std::size_t kDenseProductWarning = 10'000'000;

struct LayerCentralityMatrix {
    CentralityKind::Type kind = CentralityKind::Type::Eigenvector;
    SparseLowRank matrix;

    Index n() const noexcept { return static_cast<Index>(matrix.dim()); }
    void apply(const Vector& x, Vector& y) const { matrix.apply(x, y); }
    void apply_transpose(const Vector& x, Vector& y) const { matrix.apply_transpose(x, y); }
    Matrix dense() const { return matrix.dense(); }
};

/// C = A.
LayerCentralityMatrix build_eigenvector_matrix(const LayerGraph& a);

/// C = A A^T, symmetric by construction.
LayerCentralityMatrix build_hub_matrix(const LayerGraph& a);

/// C = A^T A, symmetric by construction.
LayerCentralityMatrix build_authority_matrix(const LayerGraph& a);

/// Column-stochastic PageRank matrix
///     C = sigma (D^-1 A)^T + (1 - sigma) u 1^T
/// after adding unit self-edges according to `policy`; D holds the row sums.
/// `teleport` defaults to the uniform vector 1/n. The rank-one term is kept
/// factored.
LayerCentralityMatrix build_pagerank_matrix(const SparseMatrix& a, double sigma,
                                            DanglingPolicy policy = DanglingPolicy::DanglingOnly,
                                            const Vector* teleport = nullptr);
LayerCentralityMatrix build_pagerank_matrix(const LayerGraph& a, double sigma,
                                            DanglingPolicy policy = DanglingPolicy::DanglingOnly,
                                            const Vector* teleport = nullptr);

/// Dispatches on `kind`; `layer` selects the teleportation vector if any.
LayerCentralityMatrix build_centrality_matrix(const LayerGraph& a, const CentralityKind& kind,
                                              Index layer = 0);

std::vector<LayerCentralityMatrix> build_layer_matrices(const MultiplexNetwork& net,
                                                        const CentralityKind& kind);

} // namespace supra
