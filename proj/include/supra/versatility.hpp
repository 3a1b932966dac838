#pragma once

// PageRank versatility: PageRank of the supra-adjacency matrix
//     diag[A^(1), ..., A^(T)] + omega (A~ kron I),
// summed over each node's node-layer pairs.

#include "supra/eigensolver.hpp"
#include "supra/types.hpp"

namespace supra {

/// Raw supra-adjacency matrix (adjacency, not centrality, blocks), layer-major.
SparseMatrix supra_adjacency(const MultiplexNetwork& net, const InterlayerMatrix& interlayer, double omega);

struct VersatilityResult {
    Vector versatility; // length N, sums to 1
    Vector supra;       // length NT PageRank vector, unit 1-norm
    std::size_t iterations = 0;
    double residual = 0.0;
};

/// The supra eigenvector is scaled to unit 1-norm (a probability vector),
/// unlike the engine's unit 2-norm. Throws NonConvergence on failure.
VersatilityResult pagerank_versatility(const MultiplexNetwork& net, const InterlayerMatrix& interlayer,
                                       double omega, double sigma = 0.85,
                                       DanglingPolicy policy = DanglingPolicy::DanglingOnly,
                                       const EigenOptions& opts = {});

} // namespace supra
