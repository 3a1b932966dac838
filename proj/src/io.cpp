#include "supra/io.hpp"

#include "supra/error.hpp"
#include "supra/interlayer.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace supra {

namespace {

using json = nlohmann::ordered_json;

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

bool is_blank_or_comment(std::string_view line) {
    for (char c : line) {
        if (c == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::optional<long long> parse_int(std::string_view s) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::optional<double> parse_real(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

long long positive_id(std::string_view tok, const char* what, const std::string& name, std::size_t line) {
    const auto v = parse_int(tok);
    if (!v) throw ParseError(name, line, std::string("expected an integer ") + what + ", got '" + std::string(tok) + "'");
    if (*v < 1) throw ParseError(name, line, std::string(what) + " must be >= 1 (indices are 1-based)");
    return *v;
}

double edge_weight(std::string_view tok, const std::string& name, std::size_t line) {
    const auto w = parse_real(tok);
    if (!w) throw ParseError(name, line, "expected a numeric weight, got '" + std::string(tok) + "'");
    if (!std::isfinite(*w)) throw ParseError(name, line, "weight is not finite");
    if (*w < 0.0) throw ParseError(name, line, "weight is negative");
    return *w;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    return in;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

json vec_json(const Vector& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

json mat_json(const Matrix& m) {
    json a = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(vec_json(m.row(i).transpose()));
    return a;
}

json preconditions_json(const PreconditionReport& p) {
    return json{{"interlayer_ok", p.interlayer_ok}, {"layer_sum_ok", p.layer_sum_ok}, {"ok", p.ok()}};
}

json omega_json(double omega) { return std::isfinite(omega) ? json(omega) : json(nullptr); }

json labels_json(const MultiplexNetwork& net, bool layers) {
    json a = json::array();
    const Index n = layers ? net.n_layers() : net.n_nodes;
    for (Index k = 0; k < n; ++k) a.push_back(layers ? net.layer_label(k) : net.node_label(k));
    return a;
}

std::string csv_number(double v) { return std::isnan(v) ? std::string() : format_double(v); }

std::vector<std::vector<std::string>> parse_csv(std::istream& in, const std::string& name) {
    std::vector<std::vector<std::string>> rows;
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool field_started = false;
    std::size_t line = 1;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        if (c == '"' && field.empty()) {
            quoted = true;
            field_started = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
            field_started = true;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            if (field_started || !field.empty() || !row.empty()) {
                row.push_back(std::move(field));
                rows.push_back(std::move(row));
            }
            row.clear();
            field.clear();
            field_started = false;
            ++line;
        } else {
            field += c;
            field_started = true;
        }
    }
    if (quoted) throw ParseError(name, line, "unterminated quoted field");
    if (field_started || !field.empty() || !row.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

bool LoadedNetwork::contiguous() const {
    for (std::size_t t = 0; t < layer_ids.size(); ++t) {
        if (layer_ids[t] != static_cast<long long>(t + 1)) return false;
    }
    return true;
}

LoadedNetwork parse_multiplex(std::istream& in, const std::string& name, std::optional<Index> n_nodes) {
    struct Raw {
        long long layer;
        Index i, j;
        double w;
    };
    std::vector<Raw> raw;
    std::set<std::tuple<long long, Index, Index>> seen;
    std::set<long long> ids;
    Index max_node = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (is_blank_or_comment(line)) continue;
        const auto tok = split_ws(line);
        if (tok.size() != 3 && tok.size() != 4) {
            throw ParseError(name, lineno, "expected 'layer i j [weight]', got " + std::to_string(tok.size()) + " fields");
        }
        const long long layer = positive_id(tok[0], "layer", name, lineno);
        const auto i = static_cast<Index>(positive_id(tok[1], "node index", name, lineno));
        const auto j = static_cast<Index>(positive_id(tok[2], "node index", name, lineno));
        const double w = tok.size() == 4 ? edge_weight(tok[3], name, lineno) : 1.0;
        if (!seen.insert({layer, i, j}).second) {
            throw ParseError(name, lineno, "duplicate edge " + std::to_string(i) + " -> " + std::to_string(j) +
                                               " in layer " + std::to_string(layer));
        }
        ids.insert(layer);
        max_node = std::max({max_node, i, j});
        raw.push_back({layer, i - 1, j - 1, w});
    }
    if (in.bad()) throw Error("read error on '" + name + "'");

    LoadedNetwork out;
    out.layer_ids.assign(ids.begin(), ids.end());
    const Index n = n_nodes ? *n_nodes : max_node;
    if (n_nodes && *n_nodes < max_node) {
        throw ValidationError({"node index " + std::to_string(max_node) + " exceeds the node count " +
                               std::to_string(*n_nodes)});
    }
    std::map<long long, Index> dense;
    for (std::size_t t = 0; t < out.layer_ids.size(); ++t) dense[out.layer_ids[t]] = t;
    std::vector<std::vector<Edge>> edges(out.layer_ids.size());
    for (const auto& r : raw) edges[dense[r.layer]].push_back({r.i, r.j, r.w});

    out.network.n_nodes = n;
    for (auto& e : edges) out.network.layers.push_back(make_layer(n, std::move(e)));
    require_valid(out.network);
    return out;
}

LoadedNetwork load_multiplex(const std::string& path, const LoadOptions& opts) {
    auto in = open_input(path);
    auto loaded = parse_multiplex(in, path, opts.n_nodes);
    auto& net = loaded.network;
    if (!loaded.contiguous()) {
        std::clog << "note: layers re-indexed:";
        for (std::size_t t = 0; t < loaded.layer_ids.size(); ++t) {
            std::clog << ' ' << loaded.layer_ids[t] << "->" << t + 1;
        }
        std::clog << '\n';
    }
    if (!opts.node_labels_path.empty()) {
        const auto labels = load_labels(opts.node_labels_path);
        net.node_labels.resize(net.n_nodes);
        for (Index i = 0; i < net.n_nodes; ++i) net.node_labels[i] = std::to_string(i + 1);
        for (const auto& [idx, label] : labels) {
            if (idx < 1 || static_cast<Index>(idx) > net.n_nodes) {
                throw ValidationError({"node label index " + std::to_string(idx) + " out of range [1," +
                                       std::to_string(net.n_nodes) + "]"});
            }
            net.node_labels[static_cast<Index>(idx - 1)] = label;
        }
    }
    if (!opts.layer_labels_path.empty()) {
        const auto labels = load_labels(opts.layer_labels_path);
        net.layer_labels.resize(net.n_layers());
        std::map<long long, Index> dense;
        for (std::size_t t = 0; t < loaded.layer_ids.size(); ++t) {
            dense[loaded.layer_ids[t]] = t;
            net.layer_labels[t] = std::to_string(loaded.layer_ids[t]);
        }
        for (const auto& [id, label] : labels) {
            const auto it = dense.find(id);
            if (it == dense.end()) {
                throw ValidationError({"layer label for id " + std::to_string(id) + ", which has no edges"});
            }
            net.layer_labels[it->second] = label;
        }
    }
    require_valid(net);
    return loaded;
}

std::map<long long, std::string> parse_labels(std::istream& in, const std::string& name) {
    std::map<long long, std::string> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (is_blank_or_comment(line)) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw ParseError(name, lineno, "expected 'index<TAB>label'");
        const auto idx = parse_int(std::string_view(line).substr(0, tab));
        if (!idx) throw ParseError(name, lineno, "label index is not an integer");
        if (!out.emplace(*idx, line.substr(tab + 1)).second) {
            throw ParseError(name, lineno, "label index " + std::to_string(*idx) + " repeated");
        }
    }
    return out;
}

std::map<long long, std::string> load_labels(const std::string& path) {
    auto in = open_input(path);
    return parse_labels(in, path);
}

InterlayerMatrix parse_interlayer(std::istream& in, Index n_layers, const std::string& name,
                                  const std::vector<long long>* layer_ids) {
    std::map<long long, Index> dense;
    if (layer_ids) {
        for (std::size_t t = 0; t < layer_ids->size(); ++t) dense[(*layer_ids)[t]] = t;
    }
    const auto to_index = [&](long long id, std::size_t lineno) -> Index {
        if (layer_ids) {
            const auto it = dense.find(id);
            if (it == dense.end()) throw ParseError(name, lineno, "unknown layer id " + std::to_string(id));
            return it->second;
        }
        if (static_cast<Index>(id) > n_layers) {
            throw ParseError(name, lineno, "layer " + std::to_string(id) + " out of range [1," +
                                               std::to_string(n_layers) + "]");
        }
        return static_cast<Index>(id - 1);
    };

    std::vector<InterlayerTriplet> trips;
    std::set<std::pair<Index, Index>> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (is_blank_or_comment(line)) continue;
        const auto tok = split_ws(line);
        if (tok.size() != 3) throw ParseError(name, lineno, "expected 't t_prime weight'");
        const Index a = to_index(positive_id(tok[0], "layer", name, lineno), lineno);
        const Index b = to_index(positive_id(tok[1], "layer", name, lineno), lineno);
        const double w = edge_weight(tok[2], name, lineno);
        if (!seen.insert({a, b}).second) throw ParseError(name, lineno, "duplicate interlayer entry");
        trips.push_back({a, b, w});
    }
    return from_triplets(n_layers, trips);
}

InterlayerMatrix load_interlayer(const std::string& path, Index n_layers, const std::vector<long long>* layer_ids) {
    auto in = open_input(path);
    return parse_interlayer(in, n_layers, path, layer_ids);
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(len));
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_network(std::ostream& out, const MultiplexNetwork& net, const std::vector<long long>* layer_ids) {
    for (Index t = 0; t < net.n_layers(); ++t) {
        const long long id = layer_ids ? (*layer_ids)[t] : static_cast<long long>(t + 1);
        for (const auto& e : net.layers[t].entries) {
            out << id << ' ' << e.from + 1 << ' ' << e.to + 1 << ' ' << format_double(e.weight) << '\n';
        }
    }
}

void write_tableau_csv(std::ostream& out, const CentralityTableau& tab, const MultiplexNetwork& net) {
    const auto n = tab.W.rows();
    const auto t = tab.W.cols();
    if (static_cast<Index>(n) != net.n_nodes || static_cast<Index>(t) != net.n_layers()) {
        throw InvalidArgument("tableau and network dimensions differ");
    }
    out << "node";
    for (Eigen::Index s = 0; s < t; ++s) out << ',' << csv_field(net.layer_label(static_cast<Index>(s)));
    out << '\n';
    for (Eigen::Index i = 0; i < n; ++i) {
        out << csv_field(net.node_label(static_cast<Index>(i)));
        for (Eigen::Index s = 0; s < t; ++s) out << ',' << format_double(tab.W(i, s));
        out << '\n';
    }
}

void write_tableau_csv(const std::string& path, const CentralityTableau& tab, const MultiplexNetwork& net) {
    write_file(path, [&](std::ostream& out) { write_tableau_csv(out, tab, net); });
}

JointCsv read_joint_csv(std::istream& in, const std::string& name) {
    const auto rows = parse_csv(in, name);
    if (rows.empty() || rows.front().empty() || rows.front().front() != "node") {
        throw ParseError(name, 1, "header must start with 'node'");
    }
    JointCsv out;
    out.layer_labels.assign(rows.front().begin() + 1, rows.front().end());
    const auto t = static_cast<Eigen::Index>(out.layer_labels.size());
    out.W.resize(static_cast<Eigen::Index>(rows.size() - 1), t);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (static_cast<Eigen::Index>(rows[r].size()) != t + 1) {
            throw ParseError(name, r + 1, "row has " + std::to_string(rows[r].size()) + " fields, expected " +
                                              std::to_string(t + 1));
        }
        out.node_labels.push_back(rows[r][0]);
        for (Eigen::Index s = 0; s < t; ++s) {
            const auto v = parse_real(rows[r][static_cast<std::size_t>(s + 1)]);
            if (!v) throw ParseError(name, r + 1, "value is not numeric");
            out.W(static_cast<Eigen::Index>(r - 1), s) = *v;
        }
    }
    return out;
}

JointCsv read_joint_csv(const std::string& path) {
    auto in = open_input(path);
    return read_joint_csv(in, path);
}

SolveSummary summarize(const SupraSolution& sol, double omega) {
    SolveSummary s;
    s.omega = omega;
    s.lambda_max = sol.eigenpair.lambda;
    s.iterations = sol.eigenpair.iterations;
    s.residual = sol.eigenpair.residual;
    s.mnc = sol.tableau.x_hat;
    s.mlc = sol.tableau.x;
    s.preconditions = sol.preconditions;
    return s;
}

void write_summary_json(std::ostream& out, const SolveSummary& s) {
    json j;
    j["omega"] = omega_json(s.omega);
    j["lambda_max"] = s.lambda_max;
    j["iterations"] = s.iterations;
    j["residual"] = s.residual;
    j["mnc"] = vec_json(s.mnc);
    j["mlc"] = vec_json(s.mlc);
    j["preconditions"] = preconditions_json(s.preconditions);
    out << j.dump(2) << '\n';
}

void write_summary_json(const std::string& path, const SolveSummary& s) {
    write_file(path, [&](std::ostream& out) { write_summary_json(out, s); });
}

void write_sweep_csv(std::ostream& out, const SweepResult& sw, const MultiplexNetwork& net) {
    if (sw.n_nodes != net.n_nodes || sw.n_layers != net.n_layers()) {
        throw InvalidArgument("sweep and network dimensions differ");
    }
    out << "omega,lambda_max,w_sensitivity,z_sensitivity";
    for (Index t = 0; t < sw.n_layers; ++t) out << ',' << csv_field("mlc_" + net.layer_label(t));
    for (Index i = 0; i < sw.n_nodes; ++i) out << ',' << csv_field("mnc_" + net.node_label(i));
    out << '\n';
    for (std::size_t s = 0; s < sw.points.size(); ++s) {
        const auto& pt = sw.points[s];
        out << format_double(sw.grid.values[s]) << ',' << (pt.ok ? format_double(pt.lambda_max) : "");
        if (s == 0) {
            out << ",,";
        } else {
            out << ',' << csv_number(sw.w_sensitivity[s - 1]) << ',' << csv_number(sw.z_sensitivity[s - 1]);
        }
        for (Index t = 0; t < sw.n_layers; ++t) {
            out << ',' << (pt.ok ? format_double(pt.tableau.x(static_cast<Eigen::Index>(t))) : "");
        }
        for (Index i = 0; i < sw.n_nodes; ++i) {
            out << ',' << (pt.ok ? format_double(pt.tableau.x_hat(static_cast<Eigen::Index>(i))) : "");
        }
        out << '\n';
    }
}

void write_sweep_csv(const std::string& path, const SweepResult& sw, const MultiplexNetwork& net) {
    write_file(path, [&](std::ostream& out) { write_sweep_csv(out, sw, net); });
}

void write_weak_limit_json(std::ostream& out, const WeakLimitResult& r, const MultiplexNetwork& net) {
    json j;
    j["which"] = "weak";
    j["omega"] = 0.0;
    j["lambda_max"] = r.lambda0;
    j["lambda1"] = r.lambda1;
    json dom = json::array();
    for (Index t : r.dominating) dom.push_back(net.layer_label(t));
    j["dominating_layers"] = dom;
    j["X"] = mat_json(r.X);
    j["alpha"] = vec_json(r.alpha);
    j["beta"] = vec_json(r.beta);
    json radii = json::array();
    for (const auto& l : r.eigendata.layers) radii.push_back(l.spectral_radius);
    j["layer_spectral_radii"] = radii;
    j["layers"] = labels_json(net, true);
    j["nodes"] = labels_json(net, false);
    j["mnc"] = vec_json(r.tableau.x_hat);
    j["mlc"] = vec_json(r.tableau.x);
    j["joint"] = mat_json(r.tableau.W);
    out << j.dump(2) << '\n';
}

void write_strong_limit_json(std::ostream& out, const StrongLimitResult& r, const MultiplexNetwork& net,
                             const std::optional<CorollaryReport>& corollary, const std::string& corollary_note) {
    json j;
    j["which"] = "strong";
    j["omega"] = nullptr;
    j["mu1"] = r.mu1;
    j["interlayer_gap"] = r.interlayer_gap;
    j["v_tilde"] = vec_json(r.v_tilde);
    j["u_tilde"] = vec_json(r.u_tilde);
    j["layer_weights"] = vec_json(r.layer_weights);
    j["x_tilde_eigenvalue"] = r.x_tilde_eigenvalue;
    j["alpha_tilde"] = vec_json(r.alpha_tilde);
    j["beta_tilde"] = vec_json(r.beta_tilde);
    j["layers"] = labels_json(net, true);
    j["nodes"] = labels_json(net, false);
    j["mnc"] = vec_json(r.tableau.x_hat);
    j["mlc"] = vec_json(r.tableau.x);
    j["joint"] = mat_json(r.tableau.W);
    if (corollary) {
        const auto& c = *corollary;
        json cj;
        cj["shape"] = to_string(c.shape);
        cj["mu1_general"] = c.mu1_general;
        cj["mu1_closed_form"] = c.mu1_closed_form;
        cj["mu1_stated"] = c.mu1_stated ? json(*c.mu1_stated) : json(nullptr);
        cj["weights_general"] = vec_json(c.weights_general);
        cj["weights_closed_form"] = vec_json(c.weights_closed_form);
        cj["mu1_discrepancy"] = c.mu1_discrepancy;
        cj["weight_discrepancy"] = c.weight_discrepancy;
        cj["x_tilde_discrepancy"] = c.x_tilde_discrepancy;
        cj["max_abs_discrepancy"] = c.max_abs_discrepancy;
        j["closed_form_check"] = cj;
    } else {
        j["closed_form_check"] = nullptr;
        if (!corollary_note.empty()) j["closed_form_note"] = corollary_note;
    }
    out << j.dump(2) << '\n';
}

void write_correlation_csv(std::ostream& out, const std::vector<DegreeCorrelation>& rows) {
    out << "omega,intralayer,total,reference,intralayer_constant,total_constant,reference_constant\n";
    for (const auto& r : rows) {
        out << format_double(r.omega) << ',' << csv_number(r.intralayer) << ',' << csv_number(r.total) << ','
            << csv_number(r.reference) << ',' << r.intralayer_constant << ',' << r.total_constant << ','
            << r.reference_constant << '\n';
    }
}

void write_trajectory_csv(std::ostream& out, const SweepResult& sw,
                          const std::vector<std::vector<Index>>& ranks, const MultiplexNetwork& net) {
    out << "omega";
    for (Index t = 0; t < sw.n_layers; ++t) out << ',' << csv_field(net.layer_label(t));
    out << '\n';
    for (std::size_t s = 0; s < ranks.size(); ++s) {
        out << format_double(sw.grid.values[s]);
        for (Index r : ranks[s]) {
            out << ',';
            if (r > 0) out << r;
        }
        out << '\n';
    }
}

void write_versatility_csv(std::ostream& out, const VersatilityResult& r, const MultiplexNetwork& net) {
    out << "node,versatility\n";
    for (Index i = 0; i < net.n_nodes; ++i) {
        out << csv_field(net.node_label(i)) << ',' << format_double(r.versatility(static_cast<Eigen::Index>(i)))
            << '\n';
    }
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    if (path == "-") {
        fn(std::cout);
        std::cout.flush();
        if (!std::cout) throw Error("write to standard output failed");
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    fn(out);
    out.flush();
    if (!out) throw Error("write to '" + path + "' failed");
}

} // namespace supra
