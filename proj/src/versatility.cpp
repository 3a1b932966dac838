#include "supra/versatility.hpp"

#include "supra/centrality.hpp"
#include "supra/error.hpp"

#include <cmath>

namespace supra {

SparseMatrix supra_adjacency(const MultiplexNetwork& net, const InterlayerMatrix& interlayer, double omega) {
    require_valid(net);
    if (interlayer.dim() != net.n_layers()) throw InvalidArgument("interlayer matrix does not match layer count");
    if (!std::isfinite(omega) || omega < 0.0) throw InvalidArgument("omega must be finite and >= 0");
    const auto n = static_cast<Eigen::Index>(net.n_nodes);
    const auto t = static_cast<Eigen::Index>(net.n_layers());
    std::vector<Eigen::Triplet<double>> trips;
    for (Eigen::Index s = 0; s < t; ++s) {
        for (const auto& e : net.layers[static_cast<Index>(s)].entries) {
            trips.emplace_back(s * n + static_cast<Eigen::Index>(e.from), s * n + static_cast<Eigen::Index>(e.to),
                               e.weight);
        }
        for (Eigen::Index q = 0; q < t; ++q) {
            const double w = omega * interlayer(static_cast<Index>(s), static_cast<Index>(q));
            if (w == 0.0) continue;
            for (Eigen::Index i = 0; i < n; ++i) trips.emplace_back(s * n + i, q * n + i, w);
        }
    }
    SparseMatrix a(n * t, n * t);
    a.setFromTriplets(trips.begin(), trips.end());
    return a;
}

VersatilityResult pagerank_versatility(const MultiplexNetwork& net, const InterlayerMatrix& interlayer,
                                       double omega, double sigma, DanglingPolicy policy,
                                       const EigenOptions& opts) {
    const auto pr = build_pagerank_matrix(supra_adjacency(net, interlayer, omega), sigma, policy);
    const auto ep = dominant_eigenpair(pr.matrix, Side::Right, opts);
    VersatilityResult r;
    r.supra = ep.vector / ep.vector.sum();
    r.iterations = ep.iterations;
    r.residual = ep.residual;
    const auto n = static_cast<Eigen::Index>(net.n_nodes);
    r.versatility = Eigen::Map<const Matrix>(r.supra.data(), n, static_cast<Eigen::Index>(net.n_layers()))
                        .rowwise()
                        .sum();
    return r;
}

} // namespace supra
