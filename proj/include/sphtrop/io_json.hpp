#pragma once

#include <json.hpp>

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sphtrop/spherical.hpp"

namespace sphtrop {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// schema helpers
// ---------------------------------------------------------------------------

inline void check_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw SchemaError(where + ": expected an object");
}

/// Unknown fields are rejected so typos cannot silently change a problem.
inline void check_keys(const json& j, const std::set<std::string>& allowed,
                       const std::string& where) {
    check_object(j, where);
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key()))
            throw SchemaError(where + ": unknown field '" + it.key() + "'");
    }
}

inline const json& require(const json& j, const std::string& key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(where + ": missing field '" + key + "'");
    return *it;
}

// ---------------------------------------------------------------------------
// scalars and vectors
// ---------------------------------------------------------------------------

inline json rational_to_json(const Rational& q) { return q.str(); }

inline Rational rational_from_json(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw SchemaError(where + ": expected a rational as integer or \"p/q\" string");
}

inline json ext_rational_to_json(const ExtRational& q) { return q.str(); }

inline ExtRational ext_rational_from_json(const json& j, const std::string& where) {
    if (j.is_string() && j.get<std::string>() == "inf") return ExtRational::infinity();
    return ExtRational(rational_from_json(j, where));
}

inline json qvector_to_json(const QVector& v) {
    json a = json::array();
    for (std::size_t i = 0; i < v.dim(); ++i) a.push_back(rational_to_json(v[i]));
    return a;
}

inline QVector qvector_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw SchemaError(where + ": expected an array of rationals");
    std::vector<Rational> cs;
    for (const auto& c : j) cs.push_back(rational_from_json(c, where));
    return QVector(std::move(cs));
}

inline json qvectors_to_json(const std::vector<QVector>& vs) {
    json a = json::array();
    for (const auto& v : vs) a.push_back(qvector_to_json(v));
    return a;
}

inline std::vector<QVector> qvectors_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw SchemaError(where + ": expected an array of vectors");
    std::vector<QVector> vs;
    for (const auto& v : j) vs.push_back(qvector_from_json(v, where));
    return vs;
}

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(qvector_to_json(m.row(i)));
    return rows;
}

inline Matrix matrix_from_json(const json& j, std::size_t cols, const std::string& where) {
    auto rows = qvectors_from_json(j, where);
    for (const auto& r : rows)
        if (r.dim() != cols) throw SchemaError(where + ": row has wrong length");
    if (rows.empty()) return Matrix(0, cols);
    return Matrix::from_rows(rows);
}

// ---------------------------------------------------------------------------
// cones, polyhedra, complexes
// ---------------------------------------------------------------------------

inline json cone_to_json(const Cone& c) {
    json j;
    j["dim"] = c.dim();
    j["rays"] = qvectors_to_json(c.rays());
    j["lineality"] = qvectors_to_json(c.lineality());
    j["facets"] = qvectors_to_json(c.facets());
    j["span_equations"] = qvectors_to_json(c.span_equations());
    return j;
}

/// Accepts either a generator description or an inequality description; a
/// serialized cone (which carries both) reads back through its V-side.
inline Cone cone_from_json(const json& j, std::size_t dim, const std::string& where) {
    check_keys(j, {"dim", "generators", "lineality", "inequalities", "equations", "rays",
                   "facets", "span_equations"},
               where);
    if (j.contains("dim") && j["dim"].get<std::size_t>() != dim)
        throw SchemaError(where + ": cone dimension mismatch");
    bool has_v = j.contains("generators") || j.contains("rays");
    bool has_h = j.contains("inequalities");
    if (has_v || !has_h) {
        std::vector<QVector> gens, lin;
        if (j.contains("generators")) gens = qvectors_from_json(j["generators"], where);
        if (j.contains("rays")) {
            auto extra = qvectors_from_json(j["rays"], where);
            gens.insert(gens.end(), extra.begin(), extra.end());
        }
        if (j.contains("lineality")) lin = qvectors_from_json(j["lineality"], where);
        for (const auto& v : gens)
            if (v.dim() != dim) throw SchemaError(where + ": generator dimension");
        for (const auto& v : lin)
            if (v.dim() != dim) throw SchemaError(where + ": lineality dimension");
        return Cone::from_generators(dim, gens, lin);
    }
    std::vector<QVector> ineqs = qvectors_from_json(j["inequalities"], where);
    std::vector<QVector> eqs;
    if (j.contains("equations")) eqs = qvectors_from_json(j["equations"], where);
    return Cone::from_inequalities(dim, ineqs, eqs);
}

inline json polyhedron_to_json(const Polyhedron& p) {
    json j;
    j["dim"] = p.dim();
    j["empty"] = p.is_empty();
    json ineqs = json::array();
    for (const auto& c : p.inequalities())
        ineqs.push_back({{"normal", qvector_to_json(c.normal)}, {"rhs", rational_to_json(c.rhs)}});
    json eqs = json::array();
    for (const auto& c : p.equalities())
        eqs.push_back({{"normal", qvector_to_json(c.normal)}, {"rhs", rational_to_json(c.rhs)}});
    j["inequalities"] = ineqs;
    j["equations"] = eqs;
    j["vertices"] = qvectors_to_json(p.points());
    j["rays"] = qvectors_to_json(p.recession_rays());
    j["lineality"] = qvectors_to_json(p.lineality());
    return j;
}

inline AffineConstraint constraint_from_json(const json& j, std::size_t dim,
                                             const std::string& where) {
    check_keys(j, {"normal", "rhs"}, where);
    AffineConstraint c{qvector_from_json(require(j, "normal", where), where),
                       j.contains("rhs") ? rational_from_json(j["rhs"], where) : Rational(0)};
    if (c.normal.dim() != dim) throw SchemaError(where + ": constraint dimension");
    return c;
}

inline Polyhedron polyhedron_from_json(const json& j, std::size_t dim, const std::string& where) {
    check_keys(j, {"dim", "empty", "inequalities", "equations", "vertices", "rays", "lineality"},
               where);
    if (j.contains("vertices") || (j.contains("rays") && !j.contains("inequalities"))) {
        std::vector<QVector> pts, rays, lin;
        if (j.contains("vertices")) pts = qvectors_from_json(j["vertices"], where);
        if (j.contains("rays")) rays = qvectors_from_json(j["rays"], where);
        if (j.contains("lineality")) lin = qvectors_from_json(j["lineality"], where);
        return Polyhedron::from_vrep(dim, pts, rays, lin);
    }
    std::vector<AffineConstraint> ineqs, eqs;
    if (j.contains("inequalities"))
        for (const auto& c : j["inequalities"]) ineqs.push_back(constraint_from_json(c, dim, where));
    if (j.contains("equations"))
        for (const auto& c : j["equations"]) eqs.push_back(constraint_from_json(c, dim, where));
    return Polyhedron::from_constraints(dim, ineqs, eqs);
}

inline json complex_to_json(const PolyhedralComplex& c) {
    json j;
    j["dim"] = c.dim;
    json cells = json::array();
    for (const auto& cell : c.cells) cells.push_back(polyhedron_to_json(cell));
    j["cells"] = cells;
    return j;
}

inline PolyhedralComplex complex_from_json(const json& j, const std::string& where) {
    check_keys(j, {"dim", "cells"}, where);
    std::size_t dim = require(j, "dim", where).get<std::size_t>();
    std::vector<Polyhedron> cells;
    for (const auto& c : require(j, "cells", where))
        cells.push_back(polyhedron_from_json(c, dim, where + ".cells"));
    return PolyhedralComplex(dim, std::move(cells));
}

// ---------------------------------------------------------------------------
// tropical polynomials and descriptors
// ---------------------------------------------------------------------------

inline json polynomial_to_json(const TropicalPolynomial& f) {
    json terms = json::array();
    for (const auto& t : f.terms()) {
        json e = json::array();
        for (std::size_t i = 0; i < t.exponents.dim(); ++i)
            e.push_back(static_cast<long long>(t.exponents[i].num()));
        terms.push_back({{"exponents", e}, {"valuation", rational_to_json(t.valuation)}});
    }
    return json{{"terms", terms}};
}

inline TropicalPolynomial polynomial_from_json(const json& j, std::size_t nvars,
                                               const std::string& where) {
    check_keys(j, {"terms"}, where);
    std::vector<TropicalTerm> terms;
    for (const auto& t : require(j, "terms", where)) {
        check_keys(t, {"exponents", "valuation"}, where + ".terms");
        QVector e = qvector_from_json(require(t, "exponents", where), where);
        if (e.dim() != nvars) throw SchemaError(where + ": exponent vector has wrong length");
        for (std::size_t i = 0; i < e.dim(); ++i)
            if (e[i].den() != 1) throw SchemaError(where + ": exponents must be integers");
        Rational v = t.contains("valuation") ? rational_from_json(t["valuation"], where)
                                             : Rational(0);
        terms.push_back({std::move(e), std::move(v)});
    }
    return TropicalPolynomial(nvars, std::move(terms));
}

inline json descriptor_to_json(const SpaceDescriptor& d) {
    json j;
    j["r"] = d.layout.r;
    j["s"] = d.layout.s;
    j["m"] = d.layout.m;
    json ideal = json::array();
    for (const auto& f : d.ideal) ideal.push_back(polynomial_to_json(f));
    j["ideal"] = ideal;
    return j;
}

inline SpaceDescriptor descriptor_from_json(const json& j) {
    check_keys(j, {"r", "s", "m", "ideal"}, "descriptor");
    SpaceDescriptor d;
    d.layout.r = require(j, "r", "descriptor").get<int>();
    d.layout.s = require(j, "s", "descriptor").get<std::vector<int>>();
    d.layout.m = require(j, "m", "descriptor").get<int>();
    d.layout.validate();
    if (j.contains("ideal"))
        for (const auto& f : j["ideal"])
            d.ideal.push_back(polynomial_from_json(f, d.layout.dim_big(), "descriptor.ideal"));
    d.validate();
    return d;
}

// ---------------------------------------------------------------------------
// palettes and colored fans
// ---------------------------------------------------------------------------

inline json palette_to_json(const Palette& p) {
    json colors = json::array();
    for (const auto& c : p.colors)
        colors.push_back(
            {{"id", c.id}, {"rho", qvector_to_json(c.rho)}, {"rank", c.rank}});
    return colors;
}

inline Palette palette_from_json(const json& j, std::size_t dim, const std::string& where) {
    Palette p;
    for (const auto& c : j) {
        check_keys(c, {"id", "rho", "rank"}, where);
        Color color{require(c, "id", where).get<std::string>(),
                    qvector_from_json(require(c, "rho", where), where),
                    require(c, "rank", where).get<int>()};
        if (color.rho.dim() != dim) throw SchemaError(where + ": rho dimension");
        if (color.rank < 1) throw SchemaError(where + ": rank must be >= 1");
        if (p.has(color.id)) throw SchemaError(where + ": duplicate color id " + color.id);
        p.colors.push_back(std::move(color));
    }
    return p;
}

inline json colored_cone_to_json(const ColoredCone& cc) {
    json j;
    j["cone"] = cone_to_json(cc.sigma);
    j["colors"] = json::array();
    for (const auto& id : cc.colors) j["colors"].push_back(id);
    return j;
}

inline json colored_fan_to_json(const ColoredFan& fan) {
    json j;
    j["palette"] = palette_to_json(fan.palette);
    j["valuation_cone"] = cone_to_json(fan.valuation_cone);
    json cones = json::array();
    for (const auto& cc : fan.maximal) cones.push_back(colored_cone_to_json(cc));
    j["cones"] = cones;
    return j;
}

/// Palette and valuation cone may be omitted when a descriptor is present;
/// the caller then fills them from the descriptor.
inline ColoredFan colored_fan_from_json(const json& j, std::size_t dim,
                                        std::optional<Palette> default_palette,
                                        std::optional<Cone> default_vcone) {
    check_keys(j, {"palette", "valuation_cone", "cones"}, "colored_fan");
    ColoredFan fan;
    if (j.contains("palette"))
        fan.palette = palette_from_json(j["palette"], dim, "colored_fan.palette");
    else if (default_palette)
        fan.palette = std::move(*default_palette);
    else
        throw SchemaError("colored_fan: no palette given and none derivable");
    if (j.contains("valuation_cone"))
        fan.valuation_cone = cone_from_json(j["valuation_cone"], dim, "colored_fan.valuation_cone");
    else if (default_vcone)
        fan.valuation_cone = std::move(*default_vcone);
    else
        throw SchemaError("colored_fan: no valuation cone given and none derivable");
    for (const auto& c : require(j, "cones", "colored_fan")) {
        check_keys(c, {"cone", "generators", "lineality", "inequalities", "equations", "colors"},
                   "colored_fan.cones");
        ColoredCone cc;
        if (c.contains("cone")) {
            cc.sigma = cone_from_json(c["cone"], dim, "colored_fan.cones.cone");
        } else {
            json cone_part = c;
            cone_part.erase("colors");
            cc.sigma = cone_from_json(cone_part, dim, "colored_fan.cones");
        }
        if (c.contains("colors"))
            for (const auto& id : c["colors"]) {
                std::string s = id.get<std::string>();
                if (!fan.palette.has(s))
                    throw SchemaError("colored_fan: unknown color '" + s + "'");
                cc.colors.insert(s);
            }
        fan.maximal.push_back(std::move(cc));
    }
    return fan;
}

// ---------------------------------------------------------------------------
// derived objects
// ---------------------------------------------------------------------------

/// Fans serialize as a global list of primitive rays plus ray-index lists per
/// maximal cone, with the provenance annotations attached.
inline json toric_fan_to_json(const ToricFan& z) {
    json j;
    j["dim"] = z.layout.dim_big();
    j["layout"] = {{"r", z.layout.r}, {"s", z.layout.s}, {"m", z.layout.m}};
    std::vector<QVector> rays;
    for (const auto& tc : z.maximal)
        for (const auto& r : tc.cone.rays())
            if (std::find(rays.begin(), rays.end(), r) == rays.end()) rays.push_back(r);
    std::sort(rays.begin(), rays.end());
    j["rays"] = qvectors_to_json(rays);
    json cones = json::array();
    for (const auto& tc : z.maximal) {
        std::vector<std::size_t> idx;
        for (const auto& r : tc.cone.rays())
            idx.push_back(static_cast<std::size_t>(
                std::find(rays.begin(), rays.end(), r) - rays.begin()));
        std::sort(idx.begin(), idx.end());
        json prov = json::array();
        for (const auto& p : tc.provenance)
            prov.push_back({{"colored_cone", p.colored_index}, {"subset", p.a}});
        cones.push_back({{"ray_indices", idx}, {"provenance", prov}});
    }
    j["maximal_cones"] = cones;
    j["uncolored_rays"] = qvectors_to_json(z.fan_uncolored_rays);
    return j;
}

inline ToricFan toric_fan_from_json(const json& j, const std::string& where) {
    check_keys(j, {"dim", "layout", "rays", "maximal_cones", "uncolored_rays"}, where);
    ToricFan z;
    const json& layout = require(j, "layout", where);
    check_keys(layout, {"r", "s", "m"}, where + ".layout");
    z.layout.r = require(layout, "r", where).get<int>();
    z.layout.s = require(layout, "s", where).get<std::vector<int>>();
    z.layout.m = require(layout, "m", where).get<int>();
    z.layout.validate();
    auto rays = qvectors_from_json(require(j, "rays", where), where);
    for (const auto& c : require(j, "maximal_cones", where)) {
        check_keys(c, {"ray_indices", "provenance"}, where + ".maximal_cones");
        ToricCone tc;
        std::vector<QVector> gens;
        for (std::size_t i : require(c, "ray_indices", where).get<std::vector<std::size_t>>()) {
            if (i >= rays.size()) throw SchemaError(where + ": ray index out of range");
            gens.push_back(rays[i]);
        }
        tc.cone = Cone::from_generators(z.layout.dim_big(), gens);
        for (const auto& p : require(c, "provenance", where)) {
            check_keys(p, {"colored_cone", "subset"}, where + ".provenance");
            tc.provenance.push_back({require(p, "colored_cone", where).get<std::size_t>(),
                                     require(p, "subset", where).get<CoordSubset>()});
        }
        z.maximal.push_back(std::move(tc));
    }
    z.fan_uncolored_rays = qvectors_from_json(require(j, "uncolored_rays", where), where);
    return z;
}

inline json hat_fan_to_json(const HatFan& hat) {
    json j;
    j["dim"] = hat.dim;
    j["extra_rays"] = hat.n;
    json cones = json::array();
    for (const auto& hc : hat.maximal)
        cones.push_back({{"generator_coords", hc.generator_coords},
                         {"cone", cone_to_json(hc.cone)}});
    j["maximal_cones"] = cones;
    j["p_star"] = matrix_to_json(hat.p_star);
    return j;
}

inline json spherical_trop_to_json(const SphericalTrop& t) {
    json pieces = json::array();
    for (const auto& p : t.pieces)
        pieces.push_back({{"orbit", colored_cone_to_json(p.orbit)},
                          {"cells", complex_to_json(p.cells)}});
    return json{{"pieces", pieces}};
}

inline SphericalTrop spherical_trop_from_json(const json& j, std::size_t dim,
                                              const std::string& where) {
    check_keys(j, {"pieces"}, where);
    SphericalTrop t;
    for (const auto& p : require(j, "pieces", where)) {
        check_keys(p, {"orbit", "cells"}, where + ".pieces");
        const json& o = require(p, "orbit", where);
        check_keys(o, {"cone", "colors"}, where + ".orbit");
        ColoredCone orbit;
        orbit.sigma = cone_from_json(require(o, "cone", where), dim, where + ".orbit.cone");
        for (const auto& id : require(o, "colors", where)) orbit.colors.insert(id.get<std::string>());
        t.pieces.push_back({std::move(orbit),
                            complex_from_json(require(p, "cells", where), where + ".cells")});
    }
    return t;
}

inline json validation_report_to_json(const ValidationReport& r) {
    json issues = json::array();
    for (const auto& i : r.issues) {
        json issue{{"what", i.what}};
        if (i.witness) issue["witness"] = qvector_to_json(*i.witness);
        issues.push_back(issue);
    }
    return json{{"ok", r.ok()}, {"issues", issues}};
}

// ---------------------------------------------------------------------------
// problem and result files
// ---------------------------------------------------------------------------

struct ProblemFile {
    std::string version;
    std::string operation;
    std::optional<SpaceDescriptor> descriptor;
    json colored_fan;    // raw block; resolved against the descriptor at dispatch
    std::vector<json> subvariety_raw;
    std::optional<Matrix> pi_star;
    std::vector<std::pair<std::string, std::string>> lift_colors;
    std::vector<int> lift_eta;
    json push_block;
    json options;

    bool has_fan() const { return !colored_fan.is_null(); }
};

inline ProblemFile problem_from_json(const json& j) {
    check_keys(j, {"version", "operation", "descriptor", "colored_fan", "subvariety", "lift",
                   "push", "options"},
               "problem");
    ProblemFile p;
    p.version = require(j, "version", "problem").get<std::string>();
    if (p.version != "1") throw SchemaError("problem: unsupported version '" + p.version + "'");
    p.operation = require(j, "operation", "problem").get<std::string>();
    if (j.contains("descriptor")) p.descriptor = descriptor_from_json(j["descriptor"]);
    if (j.contains("colored_fan")) p.colored_fan = j["colored_fan"];
    if (j.contains("subvariety")) {
        check_keys(j["subvariety"], {"generators"}, "subvariety");
        for (const auto& f : require(j["subvariety"], "generators", "subvariety"))
            p.subvariety_raw.push_back(f);
    }
    if (j.contains("lift")) {
        check_keys(j["lift"], {"pi_star", "colors", "eta"}, "lift");
        if (!p.descriptor) throw SchemaError("lift: requires a descriptor");
        p.pi_star = matrix_from_json(require(j["lift"], "pi_star", "lift"),
                                     p.descriptor->layout.dim_script(), "lift.pi_star");
        if (j["lift"].contains("colors"))
            for (const auto& c : j["lift"]["colors"]) {
                check_keys(c, {"bold", "color"}, "lift.colors");
                p.lift_colors.emplace_back(require(c, "bold", "lift").get<std::string>(),
                                           require(c, "color", "lift").get<std::string>());
            }
        if (j["lift"].contains("eta")) p.lift_eta = j["lift"]["eta"].get<std::vector<int>>();
    }
    if (j.contains("push")) p.push_block = j["push"];
    if (j.contains("options")) {
        check_keys(j["options"], {"exact_one_variant", "per_cone", "render_target"}, "options");
        p.options = j["options"];
    }
    return p;
}

/// Deterministic result envelope: operation echo, status, payload, and a
/// provenance tag per top-level payload field.
inline json make_result(const std::string& operation, const json& payload,
                        const json& provenance) {
    json r;
    r["operation"] = operation;
    r["status"] = "ok";
    r["payload"] = payload;
    r["provenance"] = provenance;
    return r;
}

inline json make_error_result(const std::string& operation, const std::string& kind,
                              const std::string& message) {
    json r;
    r["operation"] = operation;
    r["status"] = "error";
    r["error"] = {{"kind", kind}, {"message", message}};
    return r;
}

} // namespace sphtrop
