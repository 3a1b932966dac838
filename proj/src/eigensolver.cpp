#include "supra/eigensolver.hpp"

#include "supra/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

#include <cmath>
#include <limits>

namespace supra {

namespace {

struct Estimate {
    double rq = 0.0;
    double residual = 0.0;
};

// x has unit norm.
Estimate estimate(const Vector& x, const Vector& ax) {
    const double rq = x.dot(ax);
    return {rq, (ax - rq * x).norm()};
}

bool converged(const Estimate& e, double prev_rq, bool has_prev, double tol) {
    const double scale = std::abs(e.rq);
    if (!(e.residual <= tol * scale)) return false;
    return !has_prev || std::abs(e.rq - prev_rq) <= tol * scale;
}

// Largest-magnitude entry positive; entries in (-tol, 0) clamped to zero.
void fix_sign(Vector& v, double tol) {
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v(imax) < 0.0) v = -v;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v(i) < 0.0 && v(i) > -tol) v(i) = 0.0;
    }
    v.normalize();
}

using ColMajorSparse = Eigen::SparseMatrix<double, Eigen::ColMajor>;

// Solves (s I - M) z = x for M = S + U V^T. The sparse part is factored with
// SparseLU; the low-rank part goes through the Woodbury identity.
class ShiftedSolver {
public:
    explicit ShiftedSolver(SparseLowRank m) : m_(std::move(m)) {
        pattern_ = ColMajorSparse(m_.sparse);
        ColMajorSparse eye(m_.dim(), m_.dim());
        eye.setIdentity();
        pattern_ = eye - pattern_;
        lu_.analyzePattern(pattern_);
    }

    bool factor(double s) {
        ColMajorSparse b = ColMajorSparse(m_.sparse);
        ColMajorSparse eye(m_.dim(), m_.dim());
        eye.setIdentity();
        b = s * eye - b;
        lu_.factorize(b);
        if (lu_.info() != Eigen::Success) return false;
        if (m_.rank() > 0) {
            bu_ = lu_.solve(m_.U);
            Matrix cap = Matrix::Identity(m_.rank(), m_.rank()) - m_.V.transpose() * bu_;
            cap_.compute(cap);
        }
        return true;
    }

    Vector solve(const Vector& x) {
        Vector z = lu_.solve(x);
        if (m_.rank() > 0) z += bu_ * cap_.solve(m_.V.transpose() * z);
        return z;
    }

    const SparseLowRank& matrix() const { return m_; }

private:
    SparseLowRank m_;
    ColMajorSparse pattern_;
    Eigen::SparseLU<ColMajorSparse, Eigen::COLAMDOrdering<int>> lu_;
    Matrix bu_;
    Eigen::FullPivLU<Matrix> cap_;
};

struct State {
    Vector x;
    Vector ax;
    Estimate est;
    double prev_rq = 0.0;
    bool has_prev = false;
    std::size_t iterations = 0;
    std::size_t refinements = 0;
};

EigenpairResult finish(const OperatorView& op, State& st, double tol) {
    EigenpairResult r;
    r.vector = std::move(st.x);
    fix_sign(r.vector, tol);
    Vector ax;
    op.apply(r.vector, ax);
    const auto e = estimate(r.vector, ax);
    r.lambda = e.rq;
    r.residual = e.residual;
    r.iterations = st.iterations;
    r.refinements = st.refinements;
    return r;
}

enum class PowerOutcome { Converged, Exhausted, TooSlow };

PowerOutcome run_power(const OperatorView& op, State& st, std::size_t budget, double tol,
                       bool watch_rate) {
    constexpr std::size_t kWindow = 64;
    double window_residual = -1.0;
    for (std::size_t k = 0;; ++k) {
        st.est = estimate(st.x, st.ax);
        if (converged(st.est, st.prev_rq, st.has_prev, tol)) return PowerOutcome::Converged;
        if (k >= budget) return PowerOutcome::Exhausted;

        if (watch_rate && k > 0 && k % kWindow == 0) {
            if (window_residual > 0.0 && st.est.residual > 0.0) {
                const double rate = std::pow(st.est.residual / window_residual, 1.0 / kWindow);
                const double target = tol * std::abs(st.est.rq);
                if (!(rate < 1.0 - 1e-12)) return PowerOutcome::TooSlow;
                const double needed = std::log(target / st.est.residual) / std::log(rate);
                if (needed > static_cast<double>(budget - k)) return PowerOutcome::TooSlow;
            }
            window_residual = st.est.residual;
        } else if (watch_rate && k == 0) {
            window_residual = st.est.residual;
        }

        st.prev_rq = st.est.rq;
        st.has_prev = true;
        Vector z = st.ax + op.shift * st.x;
        const double nz = z.norm();
        if (!(nz > 0.0) || !std::isfinite(nz)) {
            throw NonConvergence(st.iterations, st.est.residual, "power iteration collapsed");
        }
        st.x = z / nz;
        op.apply(st.x, st.ax);
        ++st.iterations;
    }
}

bool run_shift_invert(const OperatorView& op, State& st, std::size_t budget, double tol) {
    ShiftedSolver solver(op.materialize());
    const double tiny = std::numeric_limits<double>::min();
    for (std::size_t k = 0;; ++k) {
        st.est = estimate(st.x, st.ax);
        if (converged(st.est, st.prev_rq, st.has_prev, tol)) return true;
        if (k >= budget) return false;

        // Collatz-Wielandt bound: max_i (Ax)_i / x_i >= rho(A) for x > 0.
        double upper = -std::numeric_limits<double>::infinity();
        const double floor = 1e-300 + 1e-14 * st.x.cwiseAbs().maxCoeff();
        for (Eigen::Index i = 0; i < st.x.size(); ++i) {
            if (st.x(i) > floor) upper = std::max(upper, st.ax(i) / st.x(i));
        }
        double s = std::max(upper, st.est.rq);
        if (!std::isfinite(s)) s = st.est.rq;
        double delta = 1e-12 * std::abs(s) + tiny;
        if (std::abs(s) == 0.0) delta = 1e-12 * (1.0 + st.ax.cwiseAbs().maxCoeff());

        bool ok = false;
        for (int attempt = 0; attempt < 8 && !ok; ++attempt, delta *= 100.0) {
            ok = solver.factor(s + delta);
        }
        if (!ok) return false;

        Vector z = solver.solve(st.x);
        if (z.sum() < 0.0) z = -z;
        const double nz = z.norm();
        if (!(nz > 0.0) || !std::isfinite(nz)) return false;

        st.prev_rq = st.est.rq;
        st.has_prev = true;
        st.x = z / nz;
        op.apply(st.x, st.ax);
        ++st.iterations;
        ++st.refinements;
    }
}

} // namespace

double aperiodicity_shift(double max_row_sum) { return 0.1 * (1.0 + max_row_sum); }

EigenpairResult dominant_eigenpair(const OperatorView& op, const EigenOptions& opts) {
    if (!(opts.tol > 0.0)) throw InvalidArgument("eigensolver tolerance must be positive");
    if (op.dim <= 0) throw InvalidArgument("eigensolver needs a nonempty operator");

    State st;
    if (opts.start) {
        if (opts.start->size() != op.dim) throw InvalidArgument("start vector has wrong dimension");
        st.x = *opts.start;
        if (!(st.x.norm() > 0.0) || !st.x.allFinite()) st.x = Vector::Ones(op.dim);
    } else {
        st.x = Vector::Ones(op.dim);
    }
    st.x.normalize();
    op.apply(st.x, st.ax);

    switch (opts.method) {
    case EigenMethod::Power:
        if (run_power(op, st, opts.max_iter, opts.tol, false) == PowerOutcome::Converged) {
            return finish(op, st, opts.tol);
        }
        break;
    case EigenMethod::ShiftInvert:
        if (!op.materialize) throw InvalidArgument("operator cannot be materialized");
        if (run_shift_invert(op, st, opts.max_iter, opts.tol)) return finish(op, st, opts.tol);
        break;
    case EigenMethod::Auto: {
        const std::size_t budget = std::min(opts.power_budget, opts.max_iter);
        const auto outcome = run_power(op, st, budget, opts.tol, static_cast<bool>(op.materialize));
        if (outcome == PowerOutcome::Converged) return finish(op, st, opts.tol);
        if (!op.materialize) {
            if (run_power(op, st, opts.max_iter - st.iterations, opts.tol, false) ==
                PowerOutcome::Converged) {
                return finish(op, st, opts.tol);
            }
            break;
        }
        // Power iteration keeps the iterate nonnegative, which is what the
        // Collatz-Wielandt shift needs.
        const std::size_t left = opts.max_iter > st.iterations ? opts.max_iter - st.iterations : 0;
        if (run_shift_invert(op, st, left, opts.tol)) return finish(op, st, opts.tol);
        break;
    }
    }
    throw NonConvergence(st.iterations, st.est.residual);
}

EigenpairResult dominant_eigenpair(const SparseLowRank& a, Side side, const EigenOptions& opts) {
    OperatorView op;
    op.dim = a.dim();
    if (side == Side::Right) {
        op.apply = [&a](const Vector& x, Vector& y) { a.apply(x, y); };
        op.materialize = [&a] { return a; };
        op.shift = aperiodicity_shift(a.max_row_sum());
    } else {
        op.apply = [&a](const Vector& x, Vector& y) { a.apply_transpose(x, y); };
        op.materialize = [&a] { return a.transposed(); };
        op.shift = aperiodicity_shift(a.col_sums().maxCoeff());
    }
    return dominant_eigenpair(op, opts);
}

double perron_root(const SparseLowRank& a, const EigenOptions& opts) {
    try {
        return dominant_eigenpair(a, Side::Right, opts).lambda;
    } catch (const NonConvergence&) {
        if (a.dim() > 2000) throw;
        Eigen::EigenSolver<Matrix> es(a.dense(), false);
        return es.eigenvalues().cwiseAbs().maxCoeff();
    }
}

} // namespace supra
