#pragma once

// Text formats on disk. Indices in files are 1-based.
//
//   edge list        layer i j [w]      (# comments, w defaults to 1)
//   interlayer       t t' w
//   labels           index<TAB>label
//
// Outputs are UTF-8 with LF line endings; numbers use 17 significant digits.

#include "supra/asymptotics.hpp"
#include "supra/engine.hpp"
#include "supra/sweeps.hpp"
#include "supra/types.hpp"
#include "supra/versatility.hpp"

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace supra {

struct LoadOptions {
    std::optional<Index> n_nodes; // overrides the largest node index seen
    std::string node_labels_path; // optional
    std::string layer_labels_path;
};

struct LoadedNetwork {
    MultiplexNetwork network;
    std::vector<long long> layer_ids; // original id of each dense layer index
    bool contiguous() const;          // ids are exactly 1..T
};

/// Parses an edge list. Throws ParseError (with line number) for malformed
/// lines and duplicate edges, ValidationError for everything else.
LoadedNetwork parse_multiplex(std::istream& in, const std::string& name = "<stream>",
                              std::optional<Index> n_nodes = {});
LoadedNetwork load_multiplex(const std::string& path, const LoadOptions& opts = {});

/// index -> label. Throws ParseError on malformed lines or repeated indices.
std::map<long long, std::string> parse_labels(std::istream& in, const std::string& name = "<stream>");
std::map<long long, std::string> load_labels(const std::string& path);

/// Interlayer triplets. Layer ids are translated through `layer_ids` (the
/// ids used in the edge list); without it they must lie in 1..n_layers.
InterlayerMatrix parse_interlayer(std::istream& in, Index n_layers, const std::string& name = "<stream>",
                                  const std::vector<long long>* layer_ids = nullptr);
InterlayerMatrix load_interlayer(const std::string& path, Index n_layers,
                                 const std::vector<long long>* layer_ids = nullptr);

/// %.17g; NaN and infinities become "nan", "inf" and "-inf".
std::string format_double(double v);

/// RFC 4180 quoting when the field contains a comma, quote or line break.
std::string csv_field(const std::string& s);

void write_network(std::ostream& out, const MultiplexNetwork& net,
                   const std::vector<long long>* layer_ids = nullptr);

void write_tableau_csv(std::ostream& out, const CentralityTableau& tab, const MultiplexNetwork& net);
void write_tableau_csv(const std::string& path, const CentralityTableau& tab, const MultiplexNetwork& net);

struct JointCsv {
    std::vector<std::string> node_labels;
    std::vector<std::string> layer_labels;
    Matrix W;
};
JointCsv read_joint_csv(std::istream& in, const std::string& name = "<stream>");
JointCsv read_joint_csv(const std::string& path);

struct SolveSummary {
    double omega = 0.0;
    double lambda_max = 0.0;
    std::size_t iterations = 0;
    double residual = 0.0;
    Vector mnc;
    Vector mlc;
    PreconditionReport preconditions;
};
SolveSummary summarize(const SupraSolution& sol, double omega);

void write_summary_json(std::ostream& out, const SolveSummary& s);
void write_summary_json(const std::string& path, const SolveSummary& s);

/// Header: omega,lambda_max,w_sensitivity,z_sensitivity,mlc_<layer>...,mnc_<node>...
/// Sensitivities of the first row, and every value of a failed point, are empty.
void write_sweep_csv(std::ostream& out, const SweepResult& sw, const MultiplexNetwork& net);
void write_sweep_csv(const std::string& path, const SweepResult& sw, const MultiplexNetwork& net);

void write_weak_limit_json(std::ostream& out, const WeakLimitResult& r, const MultiplexNetwork& net);
void write_strong_limit_json(std::ostream& out, const StrongLimitResult& r, const MultiplexNetwork& net,
                             const std::optional<CorollaryReport>& corollary,
                             const std::string& corollary_note = {});

void write_correlation_csv(std::ostream& out, const std::vector<DegreeCorrelation>& rows);
void write_trajectory_csv(std::ostream& out, const SweepResult& sw,
                          const std::vector<std::vector<Index>>& ranks, const MultiplexNetwork& net);
void write_versatility_csv(std::ostream& out, const VersatilityResult& r, const MultiplexNetwork& net);

/// Opens `path` for writing ("-" is stdout) and runs `fn` on the stream.
/// Throws Error when the file cannot be written.
void write_file(const std::string& path, const std::function<void(std::ostream&)>& fn);

} // namespace supra
