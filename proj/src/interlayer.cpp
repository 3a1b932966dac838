#include "supra/interlayer.hpp"

#include "supra/error.hpp"

#include <cmath>
#include <numeric>
#include <set>

namespace supra {

namespace {

Eigen::Index as_index(Index t) { return static_cast<Eigen::Index>(t); }

void require_layers(Index n_layers, Index min) {
    if (n_layers < min) {
        throw InvalidArgument("need at least " + std::to_string(min) + " layer(s), got " +
                              std::to_string(n_layers));
    }
}

} // namespace

InterlayerMatrix all_to_all(Index n_layers, bool include_self) {
    require_layers(n_layers, 1);
    Matrix m = Matrix::Ones(as_index(n_layers), as_index(n_layers));
    if (!include_self) m.diagonal().setZero();
    return InterlayerMatrix(std::move(m));
}

InterlayerMatrix chain_undirected(Index n_layers) {
    require_layers(n_layers, 2);
    const auto t = as_index(n_layers);
    Matrix m = Matrix::Zero(t, t);
    for (Eigen::Index s = 0; s + 1 < t; ++s) m(s, s + 1) = m(s + 1, s) = 1.0;
    return InterlayerMatrix(std::move(m));
}

InterlayerMatrix chain_teleport(Index n_layers, double gamma, bool zero_diagonal) {
    require_layers(n_layers, 2);
    if (!std::isfinite(gamma) || gamma < 0.0) throw InvalidArgument("gamma must be finite and >= 0");
    const auto t = as_index(n_layers);
    Matrix m = Matrix::Constant(t, t, gamma);
    for (Eigen::Index s = 0; s + 1 < t; ++s) m(s, s + 1) = 1.0;
    if (zero_diagonal) m.diagonal().setZero();
    return InterlayerMatrix(std::move(m));
}

InterlayerMatrix block_communities(Index n_layers, const std::vector<Index>& block_sizes,
                                   double intra, double inter) {
    require_layers(n_layers, 1);
    if (std::accumulate(block_sizes.begin(), block_sizes.end(), Index{0}) != n_layers) {
        throw InvalidArgument("block sizes must sum to the number of layers");
    }
    for (Index b : block_sizes) {
        if (b == 0) throw InvalidArgument("block sizes must be positive");
    }
    if (!(intra >= 0.0) || !(inter >= 0.0) || !std::isfinite(intra) || !std::isfinite(inter)) {
        throw InvalidArgument("block weights must be finite and >= 0");
    }
    const auto t = as_index(n_layers);
    Matrix m = Matrix::Zero(t, t);
    Eigen::Index start = 0;
    for (std::size_t b = 0; b < block_sizes.size(); ++b) {
        const auto size = as_index(block_sizes[b]);
        for (Eigen::Index i = start; i < start + size; ++i) {
            for (Eigen::Index j = start; j < start + size; ++j) {
                if (i != j) m(i, j) = intra;
            }
        }
        if (b + 1 < block_sizes.size()) {
            const Eigen::Index last = start + size - 1;
            m(last, last + 1) = m(last + 1, last) = inter;
        }
        start += size;
    }
    return InterlayerMatrix(std::move(m));
}

InterlayerMatrix from_triplets(Index n_layers, const std::vector<InterlayerTriplet>& triplets) {
    require_layers(n_layers, 1);
    Matrix m = Matrix::Zero(as_index(n_layers), as_index(n_layers));
    std::set<std::pair<Index, Index>> seen;
    for (const auto& tr : triplets) {
        const auto where = "(" + std::to_string(tr.from + 1) + "," + std::to_string(tr.to + 1) + ")";
        if (tr.from >= n_layers || tr.to >= n_layers) {
            throw InvalidArgument("interlayer entry " + where + " out of range [1," +
                                  std::to_string(n_layers) + "]");
        }
        if (!std::isfinite(tr.weight) || tr.weight < 0.0) {
            throw InvalidArgument("interlayer entry " + where + " has a negative or non-finite weight");
        }
        if (!seen.insert({tr.from, tr.to}).second) {
            throw InvalidArgument("duplicate interlayer entry " + where);
        }
        m(as_index(tr.from), as_index(tr.to)) = tr.weight;
    }
    return InterlayerMatrix(std::move(m));
}

} // namespace supra
