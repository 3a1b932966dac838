#include "supra/sparse_low_rank.hpp"

#include "supra/error.hpp"

namespace supra {

SparseLowRank::SparseLowRank(SparseMatrix s)
    : sparse(std::move(s)), U(sparse.rows(), 0), V(sparse.rows(), 0) {}

SparseLowRank::SparseLowRank(SparseMatrix s, Matrix u, Matrix v)
    : sparse(std::move(s)), U(std::move(u)), V(std::move(v)) {
    if (sparse.rows() != sparse.cols() || U.rows() != sparse.rows() || V.rows() != sparse.rows() ||
        U.cols() != V.cols()) {
        throw InvalidArgument("inconsistent sparse/low-rank factor shapes");
    }
}

void SparseLowRank::apply(const Vector& x, Vector& y) const {
    y.noalias() = sparse * x;
    if (U.cols() > 0) y.noalias() += U * (V.transpose() * x);
}

void SparseLowRank::apply_transpose(const Vector& x, Vector& y) const {
    y.noalias() = sparse.transpose() * x;
    if (U.cols() > 0) y.noalias() += V * (U.transpose() * x);
}

Vector SparseLowRank::row_sums() const {
    Vector ones = Vector::Ones(dim());
    Vector y;
    apply(ones, y);
    return y;
}

Vector SparseLowRank::col_sums() const {
    Vector ones = Vector::Ones(dim());
    Vector y;
    apply_transpose(ones, y);
    return y;
}

double SparseLowRank::max_row_sum() const {
    if (dim() == 0) return 0.0;
    return row_sums().maxCoeff();
}

Matrix SparseLowRank::dense() const {
    Matrix d = Matrix(sparse);
    if (U.cols() > 0) d.noalias() += U * V.transpose();
    return d;
}

SparseLowRank SparseLowRank::transposed() const {
    return SparseLowRank(SparseMatrix(sparse.transpose()), V, U);
}

SparseLowRank from_dense(const Matrix& m) {
    if (m.rows() != m.cols()) throw InvalidArgument("matrix must be square");
    return SparseLowRank(SparseMatrix(m.sparseView(1.0, 0.0)));
}

} // namespace supra
