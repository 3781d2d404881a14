#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "maglap/errors.hpp"
#include "maglap/geometry.hpp"
#include "maglap/pencil.hpp"

namespace maglap::harness {

using nlohmann::json;

/// Named tolerances with defaults. Unknown names are configuration errors.
class Tolerances {
public:
    Tolerances()
        : values_{{"inequality_slack", 0.0},  // added to every mesh-derived inequality tolerance
                  {"simplicity_gap", 1e-6},   // relative gap for a simple eigenvalue
                  {"crossing", 1e-8},         // b = 2 triple crossing at 6
                  {"hand_values", 1e-10},     // fiber functions at the crossing
                  {"laguerre_closed_form", 1e-12},
                  {"oracle_rel", 1e-2},       // Laguerre path vs radial oracle
                  {"bessel_limit", 1e-2},     // lambda_01(1e-3) vs j01^2
                  {"scaling_rel", 1e-8},
                  {"conjugation_rel", 1e-12},
                  {"gauge_rel", 5e-2},
                  {"identity_rel", 1e-6},     // Hessian integral identity
                  {"ratio_abs", 1e-4},        // derivative Rayleigh quotient
                  {"tie", 1e-12},             // counting tie window
                  {"scan_ceiling", 0.0}} {}   // 0: automatic fiber root ceiling

    double get(const std::string& name) const {
        auto it = values_.find(name);
        if (it == values_.end()) throw ConfigurationError("unknown tolerance '" + name + "'");
        return it->second;
    }

    void set(const std::string& name, double v) {
        if (!values_.count(name)) throw ConfigurationError("unknown tolerance '" + name + "'");
        if (!std::isfinite(v)) throw ConfigurationError("tolerance '" + name + "' must be finite");
        values_[name] = v;
    }

    /// Parses "name=value".
    void set_assignment(const std::string& text) {
        const auto eq = text.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigurationError("--tol expects name=value, got '" + text + "'");
        const std::string name = text.substr(0, eq), value = text.substr(eq + 1);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != value.size())
            throw ConfigurationError("--tol " + name + ": '" + value + "' is not a number");
        set(name, v);
    }

    const std::map<std::string, double>& all() const noexcept { return values_; }

private:
    std::map<std::string, double> values_;
};

struct DomainSpec {
    std::string kind;  // square | regular | random | polygon | circumscribed | disk
    std::string name;
    int sides = 0;
    double radius = 1.0;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::vector<Vec2> vertices;
    double length = 0.0;  // cylinder axis length (cylinder command)
};

struct ExperimentConfig {
    std::string command;
    std::vector<DomainSpec> domains;
    std::vector<double> b;
    int k = 1;
    std::vector<int> refine;
    Gauge gauge = Gauge::Landau;
    Tolerances tol;
    std::string out = "maglap-out";
    std::vector<int> n;  // angular indices (disk-curves) or polygon edge counts (semicontinuity)
    std::vector<int> q;  // Landau level indices (counting)
    int grid = 2000;     // radial oracle grid
    std::uint64_t seed = 1;

    int finest() const { return refine.back(); }
    int coarse() const { return refine[refine.size() - 2]; }
};

inline DomainSpec domain_square() { return {"square", "square", 4, 1.0, 0, false, {}, 0.0}; }
inline DomainSpec domain_regular(int sides, double radius = 1.0) {
    return {"regular", "regular" + std::to_string(sides), sides, radius, 0, false, {}, 0.0};
}
inline DomainSpec domain_random(int sides, std::uint64_t seed) {
    return {"random", "", sides, 1.0, seed, true, {}, 0.0};
}
inline DomainSpec domain_disk(double length = 0.0) {
    return {"disk", "disk", 0, 1.0, 0, false, {}, length};
}

/// Centrally symmetric, non-regular hexagon used as a cylinder cross-section.
inline DomainSpec domain_symmetric_hexagon(double length = 0.0) {
    DomainSpec d{"polygon", "hexagon_sym", 6, 1.0, 0, false, {}, length};
    d.vertices = {{1.2, 0.0}, {0.5, 0.9}, {-0.6, 0.8}, {-1.2, 0.0}, {-0.5, -0.9}, {0.6, -0.8}};
    return d;
}

inline std::string domain_name(const DomainSpec& d) {
    if (!d.name.empty()) return d.name;
    if (d.kind == "random") return "hexagon_seed" + std::to_string(d.seed);
    return d.kind;
}

/// Builds the polygon for a (non-disk) domain.
inline ConvexPolygon build_polygon(const DomainSpec& d) {
    if (d.kind == "square") return ConvexPolygon::from_vertices({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    if (d.kind == "regular") {
        if (d.sides < 3) throw ConfigurationError("regular domain needs sides >= 3");
        return regular_polygon(d.sides, d.radius);
    }
    if (d.kind == "circumscribed") {
        if (d.sides < 3) throw ConfigurationError("circumscribed domain needs sides >= 3");
        return circumscribed_polygon(d.radius, d.sides);
    }
    if (d.kind == "random") return random_convex_polygon(d.sides, d.seed);
    if (d.kind == "polygon") return ConvexPolygon::from_vertices(d.vertices);
    throw ConfigurationError("domain kind '" + d.kind + "' has no polygon");
}

inline json to_json(const DomainSpec& d) {
    json j{{"kind", d.kind}, {"name", domain_name(d)}};
    if (d.kind == "regular" || d.kind == "random" || d.kind == "circumscribed") j["sides"] = d.sides;
    if (d.kind == "regular" || d.kind == "circumscribed") j["radius"] = d.radius;
    if (d.kind == "random") j["seed"] = d.seed;
    if (d.kind == "polygon") {
        json v = json::array();
        for (auto p : d.vertices) v.push_back({p.x, p.y});
        j["vertices"] = v;
    }
    if (d.length > 0.0) j["length"] = d.length;
    return j;
}

inline json to_json(const ExperimentConfig& c) {
    json domains = json::array();
    for (const auto& d : c.domains) domains.push_back(to_json(d));
    json tol = json::object();
    for (const auto& [k, v] : c.tol.all()) tol[k] = v;
    return json{{"command", c.command}, {"domains", domains},   {"b", c.b},
                {"k", c.k},             {"refine", c.refine},   {"gauge", std::string(to_string(c.gauge))},
                {"tolerances", tol},    {"out", c.out},         {"n", c.n},
                {"q", c.q},             {"grid", c.grid},       {"seed", c.seed}};
}

namespace detail {

template <class T>
T read(const json& j, const char* key, const std::string& where) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigurationError(where + "." + key + ": " + e.what());
    }
}

inline DomainSpec parse_domain(const json& j) {
    if (!j.is_object()) throw ConfigurationError("domains: each entry must be an object");
    DomainSpec d;
    d.kind = read<std::string>(j, "kind", "domain");
    if (j.contains("name")) d.name = read<std::string>(j, "name", "domain");
    if (j.contains("sides")) d.sides = read<int>(j, "sides", "domain");
    if (j.contains("radius")) d.radius = read<double>(j, "radius", "domain");
    if (j.contains("seed")) {
        d.seed = read<std::uint64_t>(j, "seed", "domain");
        d.seed_given = true;
    }
    if (j.contains("length")) d.length = read<double>(j, "length", "domain");
    if (j.contains("vertices"))
        for (const auto& p : j.at("vertices")) {
            if (!p.is_array() || p.size() != 2)
                throw ConfigurationError("domain.vertices: expected [x, y] pairs");
            d.vertices.push_back({p[0].get<double>(), p[1].get<double>()});
        }
    static const char* kinds[] = {"square", "regular", "random", "polygon", "circumscribed", "disk"};
    if (std::find(std::begin(kinds), std::end(kinds), d.kind) == std::end(kinds))
        throw ConfigurationError("domain kind '" + d.kind + "' is not known");
    if (d.kind == "random" && d.sides == 0) d.sides = 6;
    return d;
}

}  // namespace detail

/// Applies the keys present in `j` on top of `c`.
inline void apply_json(ExperimentConfig& c, const json& j) {
    if (!j.is_object()) throw ConfigurationError("config: top level must be an object");
    static const char* known[] = {"command", "domains", "b",    "k",    "refine", "gauge",
                                  "tolerances", "out",  "n",    "q",    "grid",   "seed"};
    for (const auto& [key, _] : j.items())
        if (std::find(std::begin(known), std::end(known), key) == std::end(known))
            throw ConfigurationError("config: unknown key '" + key + "'");
    if (j.contains("domains")) {
        c.domains.clear();
        for (const auto& d : j.at("domains")) c.domains.push_back(detail::parse_domain(d));
    }
    if (j.contains("b")) c.b = detail::read<std::vector<double>>(j, "b", "config");
    if (j.contains("k")) c.k = detail::read<int>(j, "k", "config");
    if (j.contains("refine")) c.refine = detail::read<std::vector<int>>(j, "refine", "config");
    if (j.contains("gauge")) {
        const auto g = detail::read<std::string>(j, "gauge", "config");
        if (g == "landau")
            c.gauge = Gauge::Landau;
        else if (g == "symmetric")
            c.gauge = Gauge::Symmetric;
        else
            throw ConfigurationError("config.gauge: expected 'landau' or 'symmetric'");
    }
    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        if (!t.is_object()) throw ConfigurationError("config.tolerances must be an object");
        for (const auto& [name, v] : t.items()) {
            if (!v.is_number()) throw ConfigurationError("config.tolerances." + name + ": not a number");
            c.tol.set(name, v.get<double>());
        }
    }
    if (j.contains("out")) c.out = detail::read<std::string>(j, "out", "config");
    if (j.contains("n")) c.n = detail::read<std::vector<int>>(j, "n", "config");
    if (j.contains("q")) c.q = detail::read<std::vector<int>>(j, "q", "config");
    if (j.contains("grid")) c.grid = detail::read<int>(j, "grid", "config");
    if (j.contains("seed")) c.seed = detail::read<std::uint64_t>(j, "seed", "config");
}

inline json load_json_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigurationError("cannot read config file '" + path + "'");
    try {
        return json::parse(is);
    } catch (const json::exception& e) {
        throw ConfigurationError("config file '" + path + "': " + e.what());
    }
}

/// Random domains without an explicit seed take seed, seed + 1, ... in order.
inline void assign_seeds(ExperimentConfig& c) {
    std::uint64_t next = c.seed;
    for (auto& d : c.domains)
        if (d.kind == "random" && !d.seed_given) d.seed = next++;
}

inline void validate(const ExperimentConfig& c) {
    for (double b : c.b)
        if (!(b > 0.0) || !std::isfinite(b))
            throw ConfigurationError("config.b: every field strength must be positive and finite");
    if (c.k < 1) throw ConfigurationError("config.k must be >= 1");
    for (std::size_t i = 1; i < c.refine.size(); ++i)
        if (c.refine[i] < c.refine[i - 1])
            throw ConfigurationError("config.refine must be nondecreasing");
    for (int r : c.refine)
        if (r < 0 || r > 7) throw ConfigurationError("config.refine levels must lie in [0, 7]");
    if (c.grid < 100) throw ConfigurationError("config.grid must be >= 100");
}

}  // namespace maglap::harness
