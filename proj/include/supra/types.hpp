#pragma once

// Shared data model: layered networks, interlayer coupling, centrality kinds,
// supracentrality problems and the joint/marginal/conditional tableau.
//
// Node and layer indices are 0-based everywhere in this header. Files and the
// command line use 1-based indices; io converts once at the boundary.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace supra {

using Index = std::size_t;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct Edge {
    Index from = 0;
    Index to = 0;
    double weight = 1.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// One layer's adjacency matrix as a sorted (row-major) list of positive entries.
struct LayerGraph {
    Index n_nodes = 0;
    std::vector<Edge> entries;

    SparseMatrix to_sparse() const;
    static LayerGraph from_sparse(const SparseMatrix& m);
};

/// Sorts `edges` row-major and checks the LayerGraph invariants.
/// Throws ValidationError listing every violation.
LayerGraph make_layer(Index n_nodes, std::vector<Edge> edges);

struct MultiplexNetwork {
    Index n_nodes = 0;
    std::vector<LayerGraph> layers;
    std::vector<std::string> node_labels;  // empty or n_nodes entries
    std::vector<std::string> layer_labels; // empty or n_layers() entries

    Index n_layers() const noexcept { return layers.size(); }
    std::string node_label(Index i) const;
    std::string layer_label(Index t) const;
};

enum class ViolationKind {
    EmptyNetwork,
    LayerSizeMismatch,
    IndexOutOfRange,
    NegativeWeight,
    ZeroWeight,
    NonFiniteWeight,
    DuplicateEdge,
    LabelCountMismatch,
};

struct Violation {
    ViolationKind kind;
    std::optional<Index> layer;
    std::string message;
};

/// Report-style validation; an empty result means the network is valid.
std::vector<Violation> validate_network(const MultiplexNetwork& net);

/// Throws ValidationError if validate_network reports anything.
void require_valid(const MultiplexNetwork& net);

/// Dense T x T nonnegative interlayer-adjacency matrix.
class InterlayerMatrix {
public:
    InterlayerMatrix() = default;
    explicit InterlayerMatrix(Matrix values);

    Index dim() const noexcept { return static_cast<Index>(values_.rows()); }
    const Matrix& values() const noexcept { return values_; }
    double operator()(Index s, Index t) const {
        return values_(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t));
    }

private:
    Matrix values_;
};

enum class DanglingPolicy { DanglingOnly, AllNodes };

struct CentralityKind {
    enum class Type { Eigenvector, Hub, Authority, PageRank };

    Type type = Type::Eigenvector;
    double sigma = 0.85;
    DanglingPolicy dangling = DanglingPolicy::DanglingOnly;
    // Optional per-layer teleportation vectors (nonnegative, summing to 1).
    // Empty means uniform teleportation in every layer.
    std::vector<Vector> teleportation;

    static CentralityKind eigenvector() { CentralityKind k; k.type = Type::Eigenvector; return k; }
    static CentralityKind hub() { CentralityKind k; k.type = Type::Hub; return k; }
    static CentralityKind authority() { CentralityKind k; k.type = Type::Authority; return k; }
    static CentralityKind pagerank(double sigma = 0.85,
                                   DanglingPolicy policy = DanglingPolicy::DanglingOnly);

    std::string name() const;
};

struct SupraProblem {
    MultiplexNetwork network;
    CentralityKind kind;
    InterlayerMatrix interlayer;
    double omega = 0.0;
};

/// Checks the SupraProblem invariants (valid network, matching dimensions,
/// omega >= 0, sigma in [0,1)). Throws InvalidArgument or ValidationError.
void require_valid(const SupraProblem& problem);

SupraProblem make_problem(MultiplexNetwork net, CentralityKind kind, InterlayerMatrix interlayer,
                          double omega);

/// Joint (W), marginal (x, x_hat) and conditional (Z, Z_hat) centralities.
/// W is stored N x T with unit Frobenius norm.
struct CentralityTableau {
    Matrix W;
    Vector x;     // marginal layer centralities, length T
    Vector x_hat; // marginal node centralities, length N
    Matrix Z;     // node conditioned on layer: W(i,t) / x(t)
    Matrix Z_hat; // layer conditioned on node: W(i,t) / x_hat(i)
    double lambda_max = 0.0;
    double omega = 0.0;
    std::vector<Index> empty_layers; // x(t) == 0, Z column is NaN
    std::vector<Index> empty_nodes;  // x_hat(i) == 0, Z_hat row is NaN

    Index n_nodes() const noexcept { return static_cast<Index>(W.rows()); }
    Index n_layers() const noexcept { return static_cast<Index>(W.cols()); }
};

/// Returns the tableau invariants that fail at tolerance `tol`.
std::vector<std::string> check_tableau(const CentralityTableau& tab, double tol = 1e-12);

} // namespace supra
