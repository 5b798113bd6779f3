#include "spancert/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace spancert {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& message) {
    throw std::runtime_error(origin + ": " + message);
}

std::string g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::ifstream open_or_fail(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path + ": cannot open");
    return in;
}

// ---------------------------------------------------------------------------
// Tabulated oracles

struct Table {
    std::string name;
    int dim = 1;                                  // spatial coordinates n
    std::vector<int> res;                         // intervals per axis, t first
    std::vector<std::array<double, 2>> x_domain;  // n closed intervals
    double lipschitz = 0.0;
    std::vector<double> values;  // node-major, output component fastest

    int axes() const { return dim + 1; }
    std::size_t nodes(int a) const { return static_cast<std::size_t>(res[static_cast<std::size_t>(a)]) + 1; }

    std::size_t flat(const std::vector<std::size_t>& node, int component) const {
        std::size_t f = 0;
        for (int a = 0; a < axes(); ++a) f = f * nodes(a) + node[static_cast<std::size_t>(a)];
        return f * static_cast<std::size_t>(dim) + static_cast<std::size_t>(component);
    }

    std::array<double, 2> axis_range(int a) const {
        if (a == 0) return {0.0, 1.0};
        return x_domain[static_cast<std::size_t>(a - 1)];
    }

    double spacing(int a) const {
        const auto r = axis_range(a);
        return (r[1] - r[0]) / static_cast<double>(res[static_cast<std::size_t>(a)]);
    }
};

std::string node_name(const Table& t, const std::vector<std::size_t>& node) {
    std::string s = "(";
    for (int a = 0; a < t.axes(); ++a) {
        if (a) s += ", ";
        s += std::to_string(node[static_cast<std::size_t>(a)]);
    }
    return s + ")";
}

// Adjacent nodes may differ by at most the declared modulus of one spacing.
void check_table_modulus(const Table& t, const std::string& origin) {
    std::vector<std::size_t> node(static_cast<std::size_t>(t.axes()), 0);
    for (;;) {
        for (int a = 0; a < t.axes(); ++a) {
            if (node[static_cast<std::size_t>(a)] + 1 >= t.nodes(a)) continue;
            auto next = node;
            ++next[static_cast<std::size_t>(a)];
            const double allowed = t.lipschitz * t.spacing(a) + 1e-12;
            for (int c = 0; c < t.dim; ++c) {
                const double diff =
                    std::fabs(t.values[t.flat(next, c)] - t.values[t.flat(node, c)]);
                if (diff > allowed) {
                    fail(origin, "table jump between nodes " + node_name(t, node) +
                                     " and " + node_name(t, next) + " is " + g9(diff) +
                                     ", above the declared modulus " + g9(allowed));
                }
            }
        }
        int a = t.axes() - 1;
        while (a >= 0 && ++node[static_cast<std::size_t>(a)] >= t.nodes(a)) {
            node[static_cast<std::size_t>(a)] = 0;
            --a;
        }
        if (a < 0) break;
    }
}

const json& require_field(const json& doc, const char* key, const std::string& origin) {
    auto it = doc.find(key);
    if (it == doc.end()) fail(origin, std::string("missing field \"") + key + "\"");
    return *it;
}

Table parse_table(const json& doc, const std::string& origin) {
    if (!doc.is_object()) fail(origin, "top level must be an object");
    Table t;

    const json& name = require_field(doc, "name", origin);
    if (!name.is_string() || name.get<std::string>().empty()) {
        fail(origin, "\"name\" must be a nonempty string");
    }
    t.name = name.get<std::string>();

    const json& dim = require_field(doc, "dim", origin);
    if (!dim.is_number_integer() || dim.get<int>() < 1 || dim.get<int>() > 5) {
        fail(origin, "\"dim\" must be an integer in [1, 5]");
    }
    t.dim = dim.get<int>();

    const json& res = require_field(doc, "resolution", origin);
    const json& rt = require_field(res, "t", origin);
    const json& rx = require_field(res, "x", origin);
    if (!rt.is_number_integer() || rt.get<int>() < 1) {
        fail(origin, "\"resolution.t\" must be a positive integer");
    }
    t.res.push_back(rt.get<int>());
    if (!rx.is_array() || rx.size() != static_cast<std::size_t>(t.dim)) {
        fail(origin, "\"resolution.x\" must list one entry per spatial coordinate");
    }
    for (const auto& r : rx) {
        if (!r.is_number_integer() || r.get<int>() < 1) {
            fail(origin, "\"resolution.x\" entries must be positive integers");
        }
        t.res.push_back(r.get<int>());
    }

    if (doc.contains("x_domain")) {
        const json& xd = doc["x_domain"];
        if (!xd.is_array() || xd.size() != static_cast<std::size_t>(t.dim)) {
            fail(origin, "\"x_domain\" must list one interval per spatial coordinate");
        }
        for (const auto& iv : xd) {
            if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number()) {
                fail(origin, "\"x_domain\" entries must be [lo, hi] pairs");
            }
            const double lo = iv[0].get<double>();
            const double hi = iv[1].get<double>();
            if (!(0.0 <= lo && lo < hi && hi <= 1.0)) {
                fail(origin, "\"x_domain\" intervals must satisfy 0 <= lo < hi <= 1");
            }
            t.x_domain.push_back({lo, hi});
        }
    } else {
        t.x_domain = unit_domain(t.dim);
    }

    const json& mod = require_field(doc, "modulus", origin);
    const json& mtype = require_field(mod, "type", origin);
    if (!mtype.is_string() || mtype.get<std::string>() != "lipschitz") {
        fail(origin, "\"modulus.type\" must be \"lipschitz\"");
    }
    const json& mconst = require_field(mod, "constant", origin);
    if (!mconst.is_number() || !(mconst.get<double>() >= 0.0) ||
        !std::isfinite(mconst.get<double>())) {
        fail(origin, "\"modulus.constant\" must be a finite nonnegative number");
    }
    t.lipschitz = mconst.get<double>();

    const json& values = require_field(doc, "values", origin);
    if (!values.is_array()) fail(origin, "\"values\" must be an array");
    std::size_t expected = static_cast<std::size_t>(t.dim);
    for (int a = 0; a < t.axes(); ++a) expected *= t.nodes(a);
    if (values.size() != expected) {
        fail(origin, "\"values\" has " + std::to_string(values.size()) +
                         " entries, expected " + std::to_string(expected));
    }
    t.values.reserve(expected);
    for (const auto& v : values) {
        if (!v.is_number()) fail(origin, "\"values\" entries must be numbers");
        const double d = v.get<double>();
        if (!std::isfinite(d) || d < 0.0 || d > 1.0) {
            fail(origin, "\"values\" entries must lie in [0,1]");
        }
        t.values.push_back(d);
    }
    return t;
}

void eval_table(const Table& t, double param, std::span<const double> x,
                std::span<double> out) {
    const int axes = t.axes();
    std::size_t base[6];
    double frac[6];
    for (int a = 0; a < axes; ++a) {
        const double c = a == 0 ? param : x[static_cast<std::size_t>(a - 1)];
        const auto range = t.axis_range(a);
        if (!(c >= range[0] && c <= range[1])) {
            throw std::domain_error("tabulated family queried outside its domain");
        }
        const int r = t.res[static_cast<std::size_t>(a)];
        double u = (c - range[0]) / (range[1] - range[0]) * static_cast<double>(r);
        std::size_t i = static_cast<std::size_t>(u);
        if (i >= static_cast<std::size_t>(r)) i = static_cast<std::size_t>(r) - 1;
        base[a] = i;
        frac[a] = u - static_cast<double>(i);
    }
    for (int c = 0; c < t.dim; ++c) out[static_cast<std::size_t>(c)] = 0.0;
    std::vector<std::size_t> node(static_cast<std::size_t>(axes), 0);
    for (unsigned corner = 0; corner < (1u << axes); ++corner) {
        double weight = 1.0;
        for (int a = 0; a < axes; ++a) {
            const bool high = (corner >> a) & 1u;
            weight *= high ? frac[a] : 1.0 - frac[a];
            node[static_cast<std::size_t>(a)] = base[a] + (high ? 1 : 0);
        }
        if (weight == 0.0) continue;
        for (int c = 0; c < t.dim; ++c) {
            out[static_cast<std::size_t>(c)] += weight * t.values[t.flat(node, c)];
        }
    }
}

}  // namespace

Oracle load_tabulated(std::istream& in, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        fail(origin, std::string("invalid JSON: ") + e.what());
    }
    auto table = std::make_shared<const Table>(parse_table(doc, origin));
    check_table_modulus(*table, origin);

    Oracle o;
    o.name = table->name;
    o.dim = table->dim;
    o.x_domain = table->x_domain;
    o.eval = [table](double t, std::span<const double> x, std::span<double> out) {
        eval_table(*table, t, x, out);
    };
    const double L = table->lipschitz;
    o.modulus = [L](double rho) { return L * rho; };
    o.modulus_desc = g9(L) + "*rho";
    return o;
}

Oracle load_tabulated(const std::string& path) {
    std::ifstream in = open_or_fail(path);
    return load_tabulated(in, path);
}

BoxSet load_claimed_set(std::istream& in, const std::string& origin) {
    std::vector<DyadicBox> boxes;
    int level = -1;
    int dim = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::int64_t> fields;
        std::int64_t v = 0;
        while (ls >> v) fields.push_back(v);
        if (!ls.eof()) {
            fail(origin, "line " + std::to_string(lineno) + ": not an integer list");
        }
        if (fields.empty()) continue;
        if (fields.size() < 2) {
            fail(origin, "line " + std::to_string(lineno) +
                             ": need a level and at least one index");
        }
        const std::int64_t k = fields[0];
        if (k < 0 || k > kMaxLevel) {
            fail(origin, "line " + std::to_string(lineno) + ": level out of range");
        }
        if (level < 0) {
            level = static_cast<int>(k);
            dim = static_cast<int>(fields.size()) - 1;
        } else if (k != level || static_cast<int>(fields.size()) - 1 != dim) {
            fail(origin, "line " + std::to_string(lineno) +
                             ": level or index count differs from the first box");
        }
        std::vector<std::int64_t> idx(fields.begin() + 1, fields.end());
        for (std::int64_t j : idx) {
            if (j < 0 || j >= (std::int64_t{1} << level)) {
                fail(origin, "line " + std::to_string(lineno) + ": index out of range");
            }
        }
        boxes.push_back(DyadicBox{level, std::move(idx)});
    }
    if (boxes.empty()) fail(origin, "no boxes");
    return BoxSet::of(level, dim, std::move(boxes));
}

BoxSet load_claimed_set(const std::string& path) {
    std::ifstream in = open_or_fail(path);
    return load_claimed_set(in, path);
}

std::vector<BoxRow> boxes_rows(const TraceResult& tr) {
    std::vector<BoxRow> rows;
    for (const auto& lt : tr.levels) {
        const auto& members = lt.boxes.members();
        for (std::size_t i = 0; i < members.size(); ++i) {
            const std::int32_t comp = lt.labeling.label(i);
            rows.push_back(BoxRow{
                lt.level, members[i].index, comp,
                lt.labeling.components()[static_cast<std::size_t>(comp)].spanning,
                lt.residuals[i]});
        }
    }
    return rows;
}

void write_boxes_csv(std::ostream& os, const std::vector<BoxRow>& rows, int dim) {
    os << "level";
    for (int a = 0; a < dim; ++a) os << ",j" << a;
    os << ",component,spanning,residual\n";
    for (const auto& r : rows) {
        os << r.level;
        for (std::int64_t j : r.index) os << ',' << j;
        os << ',' << r.component << ',' << (r.spanning ? 1 : 0) << ',' << g9(r.residual)
           << '\n';
    }
}

std::vector<BoxRow> read_boxes_csv(std::istream& in, const std::string& origin,
                                   int* dim_out) {
    std::string line;
    if (!std::getline(in, line)) fail(origin, "missing header");
    std::vector<std::string> cols;
    std::istringstream hs(line);
    std::string col;
    while (std::getline(hs, col, ',')) cols.push_back(col);
    if (cols.size() < 5 || cols.front() != "level" || cols[cols.size() - 3] != "component" ||
        cols[cols.size() - 2] != "spanning" || cols.back() != "residual") {
        fail(origin, "unexpected header: " + line);
    }
    const int dim = static_cast<int>(cols.size()) - 4;
    for (int a = 0; a < dim; ++a) {
        if (cols[static_cast<std::size_t>(a) + 1] != "j" + std::to_string(a)) {
            fail(origin, "unexpected header: " + line);
        }
    }
    if (dim_out) *dim_out = dim;

    std::vector<BoxRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        BoxRow r;
        char sep = 0;
        if (!(ls >> r.level)) fail(origin, "line " + std::to_string(lineno) + ": bad level");
        r.index.resize(static_cast<std::size_t>(dim));
        for (int a = 0; a < dim; ++a) {
            if (!(ls >> sep >> r.index[static_cast<std::size_t>(a)]) || sep != ',') {
                fail(origin, "line " + std::to_string(lineno) + ": bad index");
            }
        }
        int spanning = 0;
        if (!(ls >> sep >> r.component) || sep != ',') {
            fail(origin, "line " + std::to_string(lineno) + ": bad component");
        }
        if (!(ls >> sep >> spanning) || sep != ',' || (spanning != 0 && spanning != 1)) {
            fail(origin, "line " + std::to_string(lineno) + ": bad spanning flag");
        }
        if (!(ls >> sep >> r.residual) || sep != ',') {
            fail(origin, "line " + std::to_string(lineno) + ": bad residual");
        }
        r.spanning = spanning == 1;
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_components_json(std::ostream& os, const TraceResult& tr) {
    json out;
    out["outcome"] = tr.outcome == TraceOutcome::SpanningCertified ? "spanning-certified"
                                                                   : "no-spanning-at";
    out["outcome_level"] = tr.outcome_level;
    out["convergence"] = tr.convergence;
    json levels = json::array();
    for (const auto& lt : tr.levels) {
        json L;
        L["level"] = lt.level;
        L["box_count"] = lt.boxes.size();
        L["spanning"] = lt.spanning;
        L["component_count"] = lt.labeling.component_count();
        L["spanning_ids"] = lt.labeling.spanning_ids();
        json comps = json::array();
        const auto& infos = lt.labeling.components();
        for (std::size_t id = 0; id < infos.size(); ++id) {
            json c;
            c["id"] = id;
            c["box_count"] = infos[id].box_count;
            c["touches_t0"] = infos[id].touches_t0;
            c["touches_t1"] = infos[id].touches_t1;
            c["spanning"] = infos[id].spanning;
            comps.push_back(std::move(c));
        }
        L["components"] = std::move(comps);
        levels.push_back(std::move(L));
    }
    out["levels"] = std::move(levels);
    os << out.dump(2) << '\n';
}

namespace {

json box_list(const BoxSet& s) {
    json arr = json::array();
    for (const auto& b : s.members()) arr.push_back(b.index);
    return arr;
}

}  // namespace

void write_witness_json(std::ostream& os, const SeparationWitness& w,
                        const WitnessReport& rep) {
    json out;
    json sep;
    sep["level"] = w.sep().level();
    sep["margin"] = w.sep().margin();
    sep["gap"] = w.sep().gap();
    sep["a0"] = box_list(w.sep().a0());
    sep["a1"] = box_list(w.sep().a1());
    out["separation"] = std::move(sep);
    out["epsilon"] = w.epsilon();
    out["tau"] = w.tau();
    out["tau_g"] = w.tau_g();
    out["delta"] = w.delta();

    json rj;
    rj["samples"] = rep.samples;
    rj["seed"] = rep.seed;
    rj["approx_fixed_count"] = rep.approx_fixed_count;
    rj["claimed_sample_count"] = rep.claimed_sample_count;
    rj["g_exact_one_count"] = rep.g_exact_one_count;
    rj["min_displacement_g1"] = rep.min_displacement_g1;
    rj["max_displacement_g1"] = rep.max_displacement_g1;
    rj["min_claimed_displacement"] = rep.min_claimed_displacement;
    rj["min_range_slack"] = rep.min_range_slack;
    rj["refutation_count"] = rep.refutation_count;
    rj["clean"] = rep.clean();
    json refs = json::array();
    for (const auto& r : rep.refutations) {
        json e;
        e["t"] = r.p.t;
        e["x"] = r.p.x;
        e["residual"] = r.residual;
        e["g"] = r.g;
        e["reason"] = r.reason;
        refs.push_back(std::move(e));
    }
    rj["refutations"] = std::move(refs);
    out["report"] = std::move(rj);
    os << out.dump(2) << '\n';
}

void write_cells_csv(std::ostream& os, const BoxSet& cells) {
    os << "order,ju,jv\n";
    for (const auto& b : cells.members()) {
        os << b.level << ',' << b.index[0] << ',' << b.index[1] << '\n';
    }
}

void write_svg(std::ostream& os, const std::vector<BoxRow>& rows, int dim) {
    if (dim != 2) {
        throw std::invalid_argument("plotting supports exactly one spatial coordinate");
    }
    constexpr double kMargin = 40.0;
    constexpr double kArea = 780.0;
    constexpr double kSize = 2.0 * kMargin + kArea;

    std::vector<int> levels;
    for (const auto& r : rows) levels.push_back(r.level);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    const double layer_count = levels.empty() ? 1.0 : static_cast<double>(levels.size());

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << g9(kSize)
       << "\" height=\"" << g9(kSize) << "\" viewBox=\"0 0 " << g9(kSize) << ' '
       << g9(kSize) << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << g9(kSize) << "\" height=\"" << g9(kSize)
       << "\" fill=\"#ffffff\"/>\n";
    for (const auto& r : rows) {
        const DyadicBox b{r.level, r.index};
        const double px = kMargin + b.lo(0) * kArea;
        const double py = kMargin + (1.0 - b.hi(1)) * kArea;
        const double side = std::ldexp(kArea, -r.level);
        const std::size_t layer = static_cast<std::size_t>(
            std::lower_bound(levels.begin(), levels.end(), r.level) - levels.begin());
        const double opacity =
            0.06 + 0.30 * (static_cast<double>(layer) + 1.0) / layer_count;
        const char* fill = r.spanning ? "#1f6fb4" : "#d0622a";
        os << "<rect x=\"" << g9(px) << "\" y=\"" << g9(py) << "\" width=\"" << g9(side)
           << "\" height=\"" << g9(side) << "\" fill=\"" << fill << "\" fill-opacity=\""
           << g9(opacity) << "\"/>\n";
    }
    os << "<rect x=\"" << g9(kMargin) << "\" y=\"" << g9(kMargin) << "\" width=\""
       << g9(kArea) << "\" height=\"" << g9(kArea)
       << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    os << "<text x=\"" << g9(kMargin + kArea / 2.0) << "\" y=\"" << g9(kSize - 10.0)
       << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">t</text>\n";
    os << "<text x=\"" << g9(12.0) << "\" y=\"" << g9(kMargin + kArea / 2.0)
       << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">x</text>\n";
    os << "</svg>\n";
}

}  // namespace spancert
