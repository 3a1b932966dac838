#include "supra/centrality.hpp"

#include "supra/error.hpp"

#include <cmath>
#include <iostream>

namespace supra {

namespace {

// Averaging with the transpose makes the product bitwise symmetric even when
// the sparse product accumulates (i,j) and (j,i) in different orders.
SparseMatrix symmetrized(const SparseMatrix& p) {
    SparseMatrix pt = p.transpose();
    SparseMatrix s = 0.5 * (p + pt);
    s.prune(0.0, 0.0);
    if (static_cast<std::size_t>(s.nonZeros()) > kDenseProductWarning) {
        std::clog << "warning: hub/authority product stores " << s.nonZeros()
                  << " entries; memory use may be large\n";
    }
    return s;
}

} // namespace

LayerCentralityMatrix build_eigenvector_matrix(const LayerGraph& a) {
    return {CentralityKind::Type::Eigenvector, SparseLowRank(a.to_sparse())};
}

LayerCentralityMatrix build_hub_matrix(const LayerGraph& a) {
    const SparseMatrix m = a.to_sparse();
    const SparseMatrix mt = m.transpose();
    SparseMatrix p = m * mt;
    return {CentralityKind::Type::Hub, SparseLowRank(symmetrized(p))};
}

LayerCentralityMatrix build_authority_matrix(const LayerGraph& a) {
    const SparseMatrix m = a.to_sparse();
    const SparseMatrix mt = m.transpose();
    SparseMatrix p = mt * m;
    return {CentralityKind::Type::Authority, SparseLowRank(symmetrized(p))};
}

LayerCentralityMatrix build_pagerank_matrix(const SparseMatrix& a, double sigma,
                                            DanglingPolicy policy, const Vector* teleport) {
    if (!(sigma >= 0.0 && sigma < 1.0)) throw InvalidArgument("PageRank sigma must lie in [0,1)");
    if (a.rows() != a.cols()) throw InvalidArgument("adjacency matrix must be square");
    const Eigen::Index n = a.rows();

    Vector u;
    if (teleport) {
        if (teleport->size() != n) throw InvalidArgument("teleportation vector has wrong length");
        if ((teleport->array() < 0.0).any() || std::abs(teleport->sum() - 1.0) > 1e-12) {
            throw InvalidArgument("teleportation vector must be nonnegative and sum to 1");
        }
        u = *teleport;
    } else {
        u = Vector::Constant(n, 1.0 / static_cast<double>(n));
    }

    SparseMatrix aug = a;
    {
        const Vector rs = aug * Vector::Ones(n);
        std::vector<Eigen::Triplet<double>> self;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (policy == DanglingPolicy::AllNodes || rs(i) == 0.0) self.emplace_back(i, i, 1.0);
        }
        SparseMatrix s(n, n);
        s.setFromTriplets(self.begin(), self.end());
        aug += s;
    }

    const Vector degree = aug * Vector::Ones(n);
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(aug.nonZeros()));
    for (Eigen::Index i = 0; i < aug.outerSize(); ++i) {
        if (!(degree(i) > 0.0)) {
            throw std::logic_error("PageRank row sum is zero after the dangling policy");
        }
        for (SparseMatrix::InnerIterator it(aug, i); it; ++it) {
            // Transposed: column i of C holds row i of D^-1 A.
            trips.emplace_back(it.col(), i, sigma * it.value() / degree(i));
        }
    }
    SparseMatrix s(n, n);
    s.setFromTriplets(trips.begin(), trips.end());
    s.prune(0.0, 0.0);

    Matrix uf = (1.0 - sigma) * u;
    Matrix vf = Matrix::Ones(n, 1);
    return {CentralityKind::Type::PageRank, SparseLowRank(std::move(s), std::move(uf), std::move(vf))};
}

LayerCentralityMatrix build_pagerank_matrix(const LayerGraph& a, double sigma, DanglingPolicy policy,
                                            const Vector* teleport) {
    return build_pagerank_matrix(a.to_sparse(), sigma, policy, teleport);
}

LayerCentralityMatrix build_centrality_matrix(const LayerGraph& a, const CentralityKind& kind,
                                              Index layer) {
    switch (kind.type) {
    case CentralityKind::Type::Eigenvector: return build_eigenvector_matrix(a);
    case CentralityKind::Type::Hub: return build_hub_matrix(a);
    case CentralityKind::Type::Authority: return build_authority_matrix(a);
    case CentralityKind::Type::PageRank: {
        const Vector* u = layer < kind.teleportation.size() ? &kind.teleportation[layer] : nullptr;
        return build_pagerank_matrix(a, kind.sigma, kind.dangling, u);
    }
    }
    throw InvalidArgument("unknown centrality kind");
}

std::vector<LayerCentralityMatrix> build_layer_matrices(const MultiplexNetwork& net,
                                                        const CentralityKind& kind) {
    std::vector<LayerCentralityMatrix> out;
    out.reserve(net.n_layers());
    for (Index t = 0; t < net.n_layers(); ++t) {
        out.push_back(build_centrality_matrix(net.layers[t], kind, t));
    }
    return out;
}

} // namespace supra
