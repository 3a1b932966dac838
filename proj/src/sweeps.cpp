#include "supra/sweeps.hpp"

#include "supra/centrality.hpp"
#include "supra/engine.hpp"
#include "supra/error.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>

namespace supra {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SweepPoint solve_point(const SupraOperator& op, const PreconditionReport& pre, const EigenOptions& opts) {
    SweepPoint pt;
    try {
        auto sol = solve(op, pre, opts);
        pt.ok = true;
        pt.lambda_max = sol.eigenpair.lambda;
        pt.iterations = sol.eigenpair.iterations;
        pt.residual = sol.eigenpair.residual;
        pt.tableau = std::move(sol.tableau);
    } catch (const NonConvergence& e) {
        pt.ok = false;
        pt.error = e.what();
        pt.lambda_max = kNaN;
        pt.iterations = e.iterations();
        pt.residual = e.residual();
        pt.tableau.omega = op.omega();
        pt.tableau.lambda_max = kNaN;
    }
    return pt;
}

} // namespace

OmegaGrid make_grid(std::vector<double> values) {
    if (values.empty()) throw InvalidArgument("omega grid is empty");
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!std::isfinite(values[k]) || values[k] <= 0.0) {
            throw InvalidArgument("omega grid values must be finite and positive");
        }
        if (k > 0 && !(values[k] > values[k - 1])) {
            throw InvalidArgument("omega grid must be strictly increasing");
        }
    }
    return OmegaGrid{std::move(values)};
}

OmegaGrid log_grid(double exp_lo, double exp_hi, double step) {
    if (!std::isfinite(exp_lo) || !std::isfinite(exp_hi) || !std::isfinite(step)) {
        throw InvalidArgument("grid bounds must be finite");
    }
    if (!(step > 0.0)) throw InvalidArgument("grid step must be positive");
    if (exp_lo > exp_hi) throw InvalidArgument("empty omega grid: lower exponent exceeds upper");
    const double eps = 1e-9 * step;
    std::vector<double> values;
    for (Index k = 0;; ++k) {
        double e = exp_lo + static_cast<double>(k) * step;
        if (e > exp_hi + eps) break;
        if (std::abs(e - exp_hi) <= eps) e = exp_hi;
        values.push_back(std::pow(10.0, e));
    }
    return make_grid(std::move(values));
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
    if (a.size() == 0 || a.rows() != b.rows() || a.cols() != b.cols()) return kNaN;
    return (a - b).norm();
}

SweepResult sweep(const SupraProblem& p, const OmegaGrid& grid, const SweepOptions& opts) {
    if (grid.values.empty()) throw InvalidArgument("omega grid is empty");
    const SupraOperator base(p);
    SweepResult r;
    r.grid = grid;
    r.n_nodes = base.n_nodes();
    r.n_layers = base.n_layers();
    r.preconditions = check_preconditions(base.interlayer(), base.layers());
    r.points.resize(grid.size());

    if (opts.warm_start || opts.threads <= 1) {
        std::optional<Vector> seed;
        for (Index s = 0; s < grid.size(); ++s) {
            EigenOptions eo = opts.eigen;
            if (opts.warm_start && seed) eo.start = seed;
            r.points[s] = solve_point(base.with_omega(grid.values[s]), r.preconditions, eo);
            if (r.points[s].ok) {
                const auto& w = r.points[s].tableau.W;
                seed = Eigen::Map<const Vector>(w.data(), w.size());
            } else {
                seed.reset();
            }
        }
    } else {
        const Index workers = std::min<Index>(opts.threads, grid.size());
        std::vector<std::future<void>> jobs;
        for (Index w = 0; w < workers; ++w) {
            jobs.push_back(std::async(std::launch::async, [&, w] {
                for (Index s = w; s < grid.size(); s += workers) {
                    r.points[s] = solve_point(base.with_omega(grid.values[s]), r.preconditions, opts.eigen);
                }
            }));
        }
        for (auto& j : jobs) j.get();
    }

    for (Index s = 1; s < grid.size(); ++s) {
        const auto& a = r.points[s];
        const auto& b = r.points[s - 1];
        if (a.ok && b.ok) {
            r.w_sensitivity.push_back(frobenius_distance(a.tableau.W, b.tableau.W));
            r.z_sensitivity.push_back(frobenius_distance(a.tableau.Z, b.tableau.Z));
        } else {
            r.w_sensitivity.push_back(kNaN);
            r.z_sensitivity.push_back(kNaN);
        }
    }
    return r;
}

std::vector<Index> find_peaks(const std::vector<double>& series, double prominence_floor) {
    std::vector<Index> peaks;
    const Index n = series.size();
    if (n < 3) return peaks;
    double top = 0.0;
    for (double v : series) {
        if (std::isfinite(v)) top = std::max(top, v);
    }
    const double floor = prominence_floor * top;
    for (Index k = 1; k + 1 < n; ++k) {
        const double h = series[k];
        if (!(h > series[k - 1] && h > series[k + 1])) continue;
        // Prominence: height above the higher of the two lowest points reached
        // before climbing above h on each side (or hitting the edge).
        double left_min = h;
        for (Index j = k; j-- > 0;) {
            if (!std::isfinite(series[j])) break;
            if (series[j] > h) break;
            left_min = std::min(left_min, series[j]);
        }
        double right_min = h;
        for (Index j = k + 1; j < n; ++j) {
            if (!std::isfinite(series[j])) break;
            if (series[j] > h) break;
            right_min = std::min(right_min, series[j]);
        }
        if (h - std::max(left_min, right_min) >= floor && h > 0.0) peaks.push_back(k);
    }
    return peaks;
}

std::vector<Regime> detect_regimes(const std::vector<double>& sensitivity, const OmegaGrid& grid,
                                   double prominence_floor) {
    if (sensitivity.size() < 3) throw InvalidArgument("regime detection needs at least 3 sensitivity values");
    if (grid.size() != sensitivity.size() + 1) {
        throw InvalidArgument("sensitivity series must have one entry fewer than the grid");
    }
    const auto peaks = find_peaks(sensitivity, prominence_floor);
    std::vector<Regime> out;
    Index first = 0;
    std::optional<Index> left;
    for (Index k : peaks) {
        out.push_back({first, k, grid.values[first], grid.values[k], left, k});
        first = k + 1;
        left = k;
    }
    out.push_back({first, grid.size() - 1, grid.values[first], grid.values.back(), left, std::nullopt});
    return out;
}

std::vector<std::vector<Index>> rank_trajectory(const SweepResult& sw, Index node) {
    if (node >= sw.n_nodes) throw InvalidArgument("node index out of range");
    std::vector<std::vector<Index>> ranks(sw.points.size(), std::vector<Index>(sw.n_layers, 0));
    for (std::size_t s = 0; s < sw.points.size(); ++s) {
        const auto& pt = sw.points[s];
        if (!pt.ok) continue;
        const auto& z = pt.tableau.Z;
        const auto i = static_cast<Eigen::Index>(node);
        for (Index t = 0; t < sw.n_layers; ++t) {
            const auto col = static_cast<Eigen::Index>(t);
            const double zi = z(i, col);
            if (std::isnan(zi)) continue;
            Index rank = 1;
            for (Eigen::Index j = 0; j < z.rows(); ++j) {
                if (z(j, col) > zi || (z(j, col) == zi && j < i)) ++rank;
            }
            ranks[s][t] = rank;
        }
    }
    return ranks;
}

Index dominant_layer(const MultiplexNetwork& net, const EigenOptions& opts) {
    require_valid(net);
    Index best = 0;
    double best_rho = -1.0;
    for (Index t = 0; t < net.n_layers(); ++t) {
        const auto c = build_eigenvector_matrix(net.layers[t]);
        const double rho = net.layers[t].entries.empty() ? 0.0 : perron_root(c.matrix, opts);
        if (rho > best_rho * (1.0 + 1e-12)) {
            best_rho = rho;
            best = t;
        }
    }
    return best;
}

std::vector<DegreeCorrelation> correlate_with_degrees(const SweepResult& sw, const MultiplexNetwork& net,
                                                      std::optional<Index> reference_layer) {
    require_valid(net);
    if (net.n_nodes != sw.n_nodes || net.n_layers() != sw.n_layers) {
        throw InvalidArgument("sweep and network dimensions differ");
    }
    const Index ref = reference_layer ? *reference_layer : dominant_layer(net);
    if (ref >= net.n_layers()) throw InvalidArgument("reference layer out of range");

    const Matrix d = intralayer_degrees(net);
    const Vector d_flat = Eigen::Map<const Vector>(d.data(), d.size()); // layer-major
    const Vector d_total = total_degrees(net);
    const Vector d_ref = d.col(static_cast<Eigen::Index>(ref));

    const auto guarded = [](const Vector& x, const Vector& y, bool& constant) {
        if (x.size() < 2) {
            constant = true;
            return kNaN;
        }
        try {
            return pearson(x, y);
        } catch (const ConstantInput&) {
            constant = true;
            return kNaN;
        }
    };

    std::vector<DegreeCorrelation> out;
    for (std::size_t s = 0; s < sw.points.size(); ++s) {
        DegreeCorrelation c;
        c.omega = sw.grid.values[s];
        const auto& pt = sw.points[s];
        if (!pt.ok) {
            c.intralayer = c.total = c.reference = kNaN;
            out.push_back(c);
            continue;
        }
        const Matrix& z = pt.tableau.Z;
        const Vector z_flat = Eigen::Map<const Vector>(z.data(), z.size());
        const Vector z_sum = z.rowwise().sum();
        c.intralayer = guarded(d_flat, z_flat, c.intralayer_constant);
        c.total = guarded(d_total, z_sum, c.total_constant);
        c.reference = guarded(d_ref, z_sum, c.reference_constant);
        out.push_back(c);
    }
    return out;
}

} // namespace supra
