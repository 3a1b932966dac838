#pragma once

// Omega sweeps: one supracentrality solve per coupling strength, plus the
// derived sensitivity curves, regime intervals, rank trajectories and degree
// correlations.

#include "supra/eigensolver.hpp"
#include "supra/graph_analysis.hpp"
#include "supra/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace supra {

struct OmegaGrid {
    std::vector<double> values; // strictly increasing, positive

    Index size() const noexcept { return values.size(); }
};

/// Validates and wraps explicit grid values.
OmegaGrid make_grid(std::vector<double> values);

/// 10^(lo + k step) for k = 0, 1, ... while the exponent is <= hi. The last
/// exponent snaps to hi when it lands within rounding of it.
OmegaGrid log_grid(double exp_lo, double exp_hi, double step);

struct SweepPoint {
    bool ok = false;
    std::string error; // NonConvergence message when !ok
    double lambda_max = 0.0;
    std::size_t iterations = 0;
    double residual = 0.0;
    CentralityTableau tableau; // empty matrices when !ok
};

struct SweepResult {
    OmegaGrid grid;
    std::vector<SweepPoint> points;
    std::vector<double> w_sensitivity; // ||W_s - W_{s-1}||_F, length S-1
    std::vector<double> z_sensitivity; // ||Z_s - Z_{s-1}||_F, length S-1
    PreconditionReport preconditions;
    Index n_nodes = 0;
    Index n_layers = 0;
};

struct SweepOptions {
    EigenOptions eigen;
    bool warm_start = true;
    // Worker threads; only used when warm_start is false.
    unsigned threads = 1;
};

/// Solves at every grid value in increasing order (p.omega is ignored). A
/// point that fails to converge is recorded and the next point restarts
/// cold; sensitivities touching a failed point are NaN. Preconditions are
/// reported, not enforced.
SweepResult sweep(const SupraProblem& p, const OmegaGrid& grid, const SweepOptions& opts = {});

/// Frobenius norm of a - b; zero-size or mismatched inputs give NaN.
double frobenius_distance(const Matrix& a, const Matrix& b);

struct Regime {
    Index first = 0; // grid indices, inclusive
    Index last = 0;
    double omega_lo = 0.0;
    double omega_hi = 0.0;
    std::optional<Index> left_peak;  // sensitivity index bounding on the left
    std::optional<Index> right_peak; // sensitivity index bounding on the right
};

/// Indices of strict local maxima whose topographic prominence is at least
/// `prominence_floor` times the series maximum. NaN entries never peak.
std::vector<Index> find_peaks(const std::vector<double>& series, double prominence_floor = 0.01);

/// Splits the grid at the peaks of `sensitivity` (length grid.size() - 1,
/// at least 3). Peak k separates grid points k and k+1; the returned
/// intervals tile the grid.
std::vector<Regime> detect_regimes(const std::vector<double>& sensitivity, const OmegaGrid& grid,
                                   double prominence_floor = 0.01);

/// ranks[s][t]: 1-based rank of `node` by Z(:,t) at grid point s (1 = largest,
/// ties to the lower node index). 0 marks a failed point or an empty layer.
std::vector<std::vector<Index>> rank_trajectory(const SweepResult& sweep, Index node);

struct DegreeCorrelation {
    double omega = 0.0;
    double intralayer = 0.0; // (a) d_i^(t) vs Z_it over all (i,t)
    double total = 0.0;      // (b) total degree vs sum_t Z_it
    double reference = 0.0;  // (c) reference-layer degree vs sum_t Z_it
    bool intralayer_constant = false;
    bool total_constant = false;
    bool reference_constant = false;
};

/// Layer whose adjacency matrix has the largest spectral radius (lowest
/// index on ties).
Index dominant_layer(const MultiplexNetwork& net, const EigenOptions& opts = {});

/// One row per grid point. Undefined correlations are NaN with their
/// *_constant flag set; failed sweep points give NaN without flags.
std::vector<DegreeCorrelation> correlate_with_degrees(const SweepResult& sweep,
                                                      const MultiplexNetwork& net,
                                                      std::optional<Index> reference_layer = {});

} // namespace supra
