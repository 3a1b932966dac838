#pragma once

// Constructors for interlayer-adjacency matrices.

#include "supra/types.hpp"

#include <tuple>
#include <vector>

namespace supra {

/// Ones everywhere (include_self) or ones off the diagonal.
InterlayerMatrix all_to_all(Index n_layers, bool include_self = true);

/// Undirected adjacent-layer chain: A~(t,t') = 1 iff |t - t'| = 1. Needs T >= 2.
InterlayerMatrix chain_undirected(Index n_layers);

/// Directed time chain with layer teleportation: A~(t,t+1) = 1 and gamma
/// everywhere else, including the diagonal unless `zero_diagonal` is set.
/// gamma = 0 is accepted but leaves the chain reducible.
InterlayerMatrix chain_teleport(Index n_layers, double gamma, bool zero_diagonal = false);

/// Layers split into consecutive blocks: every pair inside a block is coupled
/// at `intra`; the last layer of each block is coupled to the first layer of
/// the next block at `inter`. Symmetric, zero diagonal.
InterlayerMatrix block_communities(Index n_layers, const std::vector<Index>& block_sizes,
                                   double intra, double inter);

struct InterlayerTriplet {
    Index from = 0; // 0-based
    Index to = 0;
    double weight = 0.0;
};

/// Dense matrix from (t, t', w) entries; unspecified entries are 0.
/// Rejects out-of-range indices, negative weights and duplicates.
InterlayerMatrix from_triplets(Index n_layers, const std::vector<InterlayerTriplet>& triplets);

} // namespace supra
