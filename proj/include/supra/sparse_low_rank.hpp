#pragma once

#include "supra/types.hpp"

namespace supra {

/// Square matrix stored as S + U * V^T with S sparse and U, V dense n x r.
/// PageRank teleportation is a rank-one term, so keeping it factored makes
/// products O(nnz + n r) instead of O(n^2).
struct SparseLowRank {
    SparseMatrix sparse;
    Matrix U;
    Matrix V;

    SparseLowRank() = default;
    explicit SparseLowRank(SparseMatrix s);
    SparseLowRank(SparseMatrix s, Matrix u, Matrix v);

    Eigen::Index dim() const noexcept { return sparse.rows(); }
    Eigen::Index rank() const noexcept { return U.cols(); }

    void apply(const Vector& x, Vector& y) const;
    void apply_transpose(const Vector& x, Vector& y) const;
    Vector operator*(const Vector& x) const {
        Vector y;
        apply(x, y);
        return y;
    }

    Vector row_sums() const;
    Vector col_sums() const;
    double max_row_sum() const;
    Matrix dense() const;
    SparseLowRank transposed() const;

    const SparseLowRank& materialize() const noexcept { return *this; }
};

/// Builds an n x n SparseLowRank from a dense matrix, dropping exact zeros.
SparseLowRank from_dense(const Matrix& m);

} // namespace supra
