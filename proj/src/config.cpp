#include "pwbands/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

namespace pwbands {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [key, _] : obj.items()) {
        if (!keys.contains(key)) {
            throw ConfigError(where.empty() ? key : where + "." + key, "unknown key");
        }
    }
}

const json& section(const json& doc, const std::string& key) {
    static const json empty = json::object();
    if (!doc.contains(key)) return empty;
    const json& s = doc.at(key);
    if (!s.is_object()) throw ConfigError(key, "expected an object");
    return s;
}

double number(const json& obj, const std::string& where, const char* key, double fallback,
              bool required = false) {
    if (!obj.contains(key)) {
        if (required) throw ConfigError(where + "." + key, "missing required number");
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(where + "." + key, "must be finite");
    return x;
}

int integer(const json& obj, const std::string& where, const char* key, int fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError(where + "." + key, "expected an integer");
    return v.get<int>();
}

std::string text(const json& obj, const std::string& where, const char* key,
                 const std::string& fallback, bool required = false) {
    if (!obj.contains(key)) {
        if (required) throw ConfigError(where + "." + key, "missing required string");
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_string()) throw ConfigError(where + "." + key, "expected a string");
    return v.get<std::string>();
}

Vec3 triple(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 3) throw ConfigError(where, "expected [x, y, z]");
    std::array<double, 3> c{};
    for (std::size_t i = 0; i < 3; ++i) {
        if (!v[i].is_number()) throw ConfigError(where, "expected numeric components");
        c[i] = v[i].get<double>();
        if (!std::isfinite(c[i])) throw ConfigError(where, "components must be finite");
    }
    return {c[0], c[1], c[2]};
}

std::string canonical_label(const std::string& label) {
    if (label == "G" || label == "Gamma" || label == "GAMMA") return "Γ";
    return label;
}

void parse_lattice(const json& doc, RunConfig& cfg) {
    if (!doc.contains("lattice")) throw ConfigError("lattice", "missing required section");
    const json& s = section(doc, "lattice");
    reject_unknown(s, "lattice", {"kind", "a"});
    const std::string kind = text(s, "lattice", "kind", "", true);
    const auto parsed = lattice_kind_from_string(kind);
    if (!parsed) throw ConfigError("lattice.kind", "expected SC, BCC, FCC or DIAMOND");
    cfg.lattice.kind = *parsed;
    cfg.lattice.a = number(s, "lattice", "a", 0.0, true);
    if (!(cfg.lattice.a > 0.0)) throw ConfigError("lattice.a", "must be positive");
}

void parse_potential(const json& doc, RunConfig& cfg) {
    const json& s = section(doc, "potential");
    reject_unknown(s, "potential",
                   {"model", "base_model", "z_eff", "mu", "overrides", "override_mode"});
    auto& p = cfg.potential;
    p.model = text(s, "potential", "model", "coulomb");
    if (p.model != "coulomb" && p.model != "yukawa" && p.model != "empirical") {
        throw ConfigError("potential.model", "expected coulomb, yukawa or empirical");
    }
    p.base_model = text(s, "potential", "base_model", "coulomb");
    if (p.base_model != "coulomb" && p.base_model != "yukawa") {
        throw ConfigError("potential.base_model", "expected coulomb or yukawa");
    }
    p.z_eff = number(s, "potential", "z_eff", 0.0);
    if (p.z_eff < 0.0) throw ConfigError("potential.z_eff", "must be non-negative");
    p.mu = number(s, "potential", "mu", 0.0);
    if (p.mu < 0.0) throw ConfigError("potential.mu", "must be non-negative");

    const std::string mode = text(s, "potential", "override_mode", "element");
    if (mode == "element") {
        p.override_mode = OverrideMode::Element;
    } else if (mode == "form_factor") {
        p.override_mode = OverrideMode::FormFactor;
    } else {
        throw ConfigError("potential.override_mode", "expected element or form_factor");
    }

    if (s.contains("overrides")) {
        if (p.model != "empirical") {
            throw ConfigError("potential.overrides", "only valid with model \"empirical\"");
        }
        const json& o = s.at("overrides");
        if (!o.is_object()) throw ConfigError("potential.overrides", "expected an object");
        for (const auto& [key, value] : o.items()) {
            const std::string where = "potential.overrides." + key;
            std::size_t used = 0;
            int shell = -1;
            try {
                shell = std::stoi(key, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != key.size() || shell < 0) {
                throw ConfigError(where, "shell key must be a non-negative integer n²");
            }
            if (!value.is_number()) throw ConfigError(where, "expected a number (eV)");
            p.overrides[shell] = value.get<double>();
        }
    } else if (p.model == "empirical") {
        throw ConfigError("potential.overrides", "required for model \"empirical\"");
    }
}

void parse_path(const json& doc, RunConfig& cfg) {
    const json& s = section(doc, "path");
    reject_unknown(s, "path", {"points", "coordinates", "samples_per_segment"});
    auto& p = cfg.path;
    p.samples_per_segment = integer(s, "path", "samples_per_segment", 50);
    if (p.samples_per_segment < 2) {
        throw ConfigError("path.samples_per_segment", "must be at least 2");
    }
    if (s.contains("coordinates")) {
        const json& c = s.at("coordinates");
        if (!c.is_object()) throw ConfigError("path.coordinates", "expected an object");
        for (const auto& [label, v] : c.items()) {
            p.coordinates[canonical_label(label)] = triple(v, "path.coordinates." + label);
        }
    }
    if (s.contains("points")) {
        const json& pts = s.at("points");
        if (!pts.is_array()) throw ConfigError("path.points", "expected an array of labels");
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (!pts[i].is_string()) {
                throw ConfigError("path.points[" + std::to_string(i) + "]", "expected a label");
            }
            p.points.push_back(pts[i].get<std::string>());
        }
    } else {
        p.points = {"L", "Γ", "X", "U", "Γ"};
    }

    // Every label must resolve; "A|B" contributes both A and B.
    std::size_t count = 0;
    for (std::size_t i = 0; i < p.points.size(); ++i) {
        const std::string& entry = p.points[i];
        std::size_t start = 0;
        while (true) {
            const std::size_t bar = entry.find('|', start);
            const std::string label = entry.substr(start, bar - start);
            if (!resolve_label(cfg, label)) {
                throw ConfigError("path.points[" + std::to_string(i) + "]",
                                  "unresolvable label \"" + label + "\"");
            }
            ++count;
            if (bar == std::string::npos) break;
            start = bar + 1;
        }
    }
    if (count < 2) throw ConfigError("path.points", "need at least two points");
}

void parse_output(const json& doc, RunConfig& cfg) {
    const json& s = section(doc, "output");
    reject_unknown(s, "output", {"num_bands", "formats", "directory"});
    auto& o = cfg.output;
    o.num_bands = integer(s, "output", "num_bands", 8);
    if (o.num_bands < 1) throw ConfigError("output.num_bands", "must be at least 1");
    o.directory = text(s, "output", "directory", ".");
    if (s.contains("formats")) {
        const json& f = s.at("formats");
        if (!f.is_array()) throw ConfigError("output.formats", "expected an array");
        o.formats.clear();
        for (std::size_t i = 0; i < f.size(); ++i) {
            const std::string where = "output.formats[" + std::to_string(i) + "]";
            if (!f[i].is_string()) throw ConfigError(where, "expected a string");
            const std::string name = f[i].get<std::string>();
            OutputFormat fmt;
            if (name == "csv") {
                fmt = OutputFormat::Csv;
            } else if (name == "json") {
                fmt = OutputFormat::Json;
            } else if (name == "svg") {
                fmt = OutputFormat::Svg;
            } else {
                throw ConfigError(where, "expected csv, json or svg");
            }
            if (std::find(o.formats.begin(), o.formats.end(), fmt) == o.formats.end()) {
                o.formats.push_back(fmt);
            }
        }
    }
}

void parse_converge(const json& doc, RunConfig& cfg) {
    const json& s = section(doc, "converge");
    reject_unknown(s, "converge", {"cutoffs", "kpoint"});
    auto& c = cfg.converge;
    c.kpoint = canonical_label(text(s, "converge", "kpoint", "Γ"));
    if (!resolve_label(cfg, c.kpoint)) {
        throw ConfigError("converge.kpoint", "unresolvable label \"" + c.kpoint + "\"");
    }
    if (s.contains("cutoffs")) {
        const json& list = s.at("cutoffs");
        if (!list.is_array()) throw ConfigError("converge.cutoffs", "expected an array");
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string where = "converge.cutoffs[" + std::to_string(i) + "]";
            if (!list[i].is_number()) throw ConfigError(where, "expected a number");
            const double x = list[i].get<double>();
            if (!(x >= 0.0) || !std::isfinite(x)) throw ConfigError(where, "must be non-negative");
            if (!c.cutoffs.empty() && x < c.cutoffs.back()) {
                throw ConfigError(where, "cutoffs must be ascending");
            }
            c.cutoffs.push_back(x);
        }
    }
}

}  // namespace

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("<root>", "expected a JSON object");
    reject_unknown(doc, "", {"lattice", "potential", "basis", "path", "output", "converge"});

    RunConfig cfg;
    cfg.source = doc;
    parse_lattice(doc, cfg);
    parse_potential(doc, cfg);

    const json& basis = section(doc, "basis");
    reject_unknown(basis, "basis", {"g2_max"});
    cfg.g2_max = number(basis, "basis", "g2_max", 76.0);
    if (cfg.g2_max < 0.0) throw ConfigError("basis.g2_max", "must be non-negative");

    parse_path(doc, cfg);
    parse_output(doc, cfg);
    parse_converge(doc, cfg);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("<file>", "cannot open " + file.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("<file>", std::string("invalid JSON: ") + e.what());
    }
    return parse_config(doc);
}

bool wants(const RunConfig& cfg, OutputFormat format) {
    const auto& f = cfg.output.formats;
    return std::find(f.begin(), f.end(), format) != f.end();
}

RealLattice make_lattice(const RunConfig& cfg) { return make_cubic(cfg.lattice.kind, cfg.lattice.a); }

PotentialModel make_model(const RunConfig& cfg) {
    const auto& p = cfg.potential;
    const auto base = [&]() -> std::variant<Coulomb, Yukawa> {
        const std::string& tag = p.model == "empirical" ? p.base_model : p.model;
        if (tag == "yukawa") return Yukawa{p.z_eff, p.mu};
        return Coulomb{p.z_eff};
    }();
    if (p.model == "empirical") return Empirical{base, p.overrides, p.override_mode};
    if (const auto* y = std::get_if<Yukawa>(&base)) return *y;
    return std::get<Coulomb>(base);
}

double absolute_g2_max(const RunConfig& cfg, double units) {
    const double unit = std::numbers::pi / cfg.lattice.a;
    return units * unit * unit;
}

std::optional<PathVertex> resolve_label(const RunConfig& cfg, const std::string& raw) {
    const std::string label = canonical_label(raw);
    const double scale = 2.0 * std::numbers::pi / cfg.lattice.a;
    if (auto it = cfg.path.coordinates.find(label); it != cfg.path.coordinates.end()) {
        return PathVertex{label, it->second * scale, false};
    }
    const auto kind = cfg.lattice.kind;
    if (kind == LatticeKind::FCC || kind == LatticeKind::Diamond) {
        const auto table = fcc_symmetry_points(cfg.lattice.a);
        if (auto it = table.find(label); it != table.end()) {
            return PathVertex{label, it->second, false};
        }
    }
    return std::nullopt;
}

KPath make_path(const RunConfig& cfg) {
    std::vector<PathVertex> vertices;
    for (const auto& entry : cfg.path.points) {
        std::size_t start = 0;
        bool first = true;
        while (true) {
            const std::size_t bar = entry.find('|', start);
            PathVertex v = *resolve_label(cfg, entry.substr(start, bar - start));
            v.break_before = !first;
            vertices.push_back(std::move(v));
            first = false;
            if (bar == std::string::npos) break;
            start = bar + 1;
        }
    }
    return make_kpath(vertices, cfg.path.samples_per_segment);
}

}  // namespace pwbands
