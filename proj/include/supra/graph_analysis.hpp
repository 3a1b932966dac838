#pragma once

// Structural checks (irreducibility via strong connectivity) and degree
// statistics.

#include "supra/centrality.hpp"
#include "supra/sparse_low_rank.hpp"
#include "supra/types.hpp"

#include <vector>

namespace supra {

/// Out-neighbour lists of the digraph with an edge i->j whenever M(i,j) > 0.
using Digraph = std::vector<std::vector<Index>>;

Digraph pattern_graph(const SparseMatrix& m);
Digraph pattern_graph(const Matrix& m);

/// Tarjan's algorithm (iterative). Returns the component id of every vertex;
/// ids are assigned in reverse topological order of the condensation.
std::vector<Index> strongly_connected_components(const Digraph& g, Index* n_components = nullptr);

bool strongly_connected(const Digraph& g);
bool strongly_connected(const SparseMatrix& m);
bool strongly_connected(const Matrix& m);
bool strongly_connected(const SparseLowRank& m);

struct PreconditionReport {
    bool interlayer_ok = false;
    bool layer_sum_ok = false;

    bool ok() const noexcept { return interlayer_ok && layer_sum_ok; }
};

/// interlayer_ok: the interlayer matrix is irreducible.
/// layer_sum_ok: the sum of the layers' centrality matrices is irreducible.
PreconditionReport check_preconditions(const SupraProblem& p);
PreconditionReport check_preconditions(const InterlayerMatrix& interlayer,
                                       const std::vector<LayerCentralityMatrix>& layers);

/// d(i,t) = sum_j A^(t)(i,j)  (out-degree, weighted).
Matrix intralayer_degrees(const MultiplexNetwork& net);
Vector total_degrees(const MultiplexNetwork& net);

/// A^k 1 by k sparse matrix-vector products.
Vector k_path_counts(const LayerGraph& a, Index k);

/// Entrywise sum of the layers' adjacency matrices.
LayerGraph aggregate_layers(const MultiplexNetwork& net);

/// Sample Pearson correlation. Throws ConstantInput when either input has
/// (numerically) zero variance, InvalidArgument on length mismatch or n < 2.
double pearson(const Vector& x, const Vector& y);

} // namespace supra
