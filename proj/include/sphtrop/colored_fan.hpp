#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sphtrop/cone.hpp"

namespace sphtrop {

/// A color: a B-stable prime divisor of the homogeneous space, recorded by
/// its induced valuation rho in the lattice and the rank of the module it
/// spans in the coordinate construction.
struct Color {
    std::string id;
    QVector rho;
    int rank = 1;
};

struct Palette {
    std::vector<Color> colors;

    const Color& find(const std::string& id) const {
        for (const auto& c : colors)
            if (c.id == id) return c;
        throw DomainError("Palette: unknown color id '" + id + "'");
    }
    bool has(const std::string& id) const {
        for (const auto& c : colors)
            if (c.id == id) return true;
        return false;
    }
};

/// Cone in the valuation lattice together with a set of palette colors.
struct ColoredCone {
    Cone sigma;
    std::set<std::string> colors;

    friend bool operator==(const ColoredCone& a, const ColoredCone& b) {
        return a.sigma == b.sigma && a.colors == b.colors;
    }
    friend bool operator<(const ColoredCone& a, const ColoredCone& b) {
        if (!(a.sigma == b.sigma)) return a.sigma < b.sigma;
        return a.colors < b.colors;
    }
};

struct ValidationIssue {
    std::string what;
    std::optional<QVector> witness;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    void add(std::string what, std::optional<QVector> witness = std::nullopt) {
        issues.push_back({std::move(what), std::move(witness)});
    }
    std::string describe() const {
        std::string s;
        for (const auto& i : issues) {
            s += i.what;
            if (i.witness) s += " at " + i.witness->str();
            s += "; ";
        }
        return s;
    }
};

/// Colored fan over a fixed palette and valuation cone. Maximal colored cones
/// are stored; faces are generated on demand.
struct ColoredFan {
    Palette palette;
    Cone valuation_cone;
    std::vector<ColoredCone> maximal;
};

/// The colored face (tau, F ∩ rho^{-1}(tau)); throws when tau is not a face.
inline ColoredCone colored_face(const ColoredCone& cc, const Cone& tau, const Palette& palette) {
    if (!is_face_of(tau, cc.sigma)) throw DomainError("colored_face: not a face of the cone");
    ColoredCone out{tau, {}};
    for (const auto& id : cc.colors) {
        if (tau.contains(palette.find(id).rho)) out.colors.insert(id);
    }
    return out;
}

/// All colored faces of a colored cone, including itself.
inline std::vector<ColoredCone> colored_faces(const ColoredCone& cc, const Palette& palette) {
    std::vector<ColoredCone> out;
    for (const auto& tau : faces(cc.sigma)) out.push_back(colored_face(cc, tau, palette));
    return out;
}

/// Checks the two colored-cone axioms against the valuation cone:
///   (i)  sigma is generated by rho(F) together with sigma ∩ V, decided via
///        the cone equality sigma = cone(rho(F) ∪ generators(sigma ∩ V));
///   (ii) the relative interior of sigma meets V, decided exactly.
/// Strict convexity (pointed cone, 0 ∉ rho(F)) is checked only on request.
inline ValidationReport validate_colored_cone(const ColoredCone& cc, const Cone& valuation_cone,
                                              const Palette& palette,
                                              bool require_strictly_convex = false) {
    ValidationReport report;
    std::vector<QVector> gens;
    for (const auto& id : cc.colors) gens.push_back(palette.find(id).rho);  // throws on unknown id

    Cone meet = intersect(cc.sigma, valuation_cone);
    for (const auto& g : meet.generators_with_lineality()) gens.push_back(g);
    Cone span = Cone::from_generators(cc.sigma.dim(), gens);
    if (!(span == cc.sigma))
        report.add("condition (i): cone is not generated by its colors and sigma ∩ V");

    std::vector<QVector> eqs = cc.sigma.span_equations();
    eqs.insert(eqs.end(), valuation_cone.span_equations().begin(),
               valuation_cone.span_equations().end());
    if (!strict_feasible_point(cc.sigma.dim(), eqs, cc.sigma.facets(), valuation_cone.facets())
             .has_value())
        report.add("condition (ii): relint(sigma) misses the valuation cone");

    if (require_strictly_convex) {
        if (!cc.sigma.is_strictly_convex()) report.add("cone has nontrivial lineality");
        for (const auto& id : cc.colors) {
            if (palette.find(id).rho.is_zero())
                report.add("color '" + id + "' maps to 0 in a strictly convex cone");
        }
    }
    return report;
}

/// Distinct colored faces of all members, deduplicated.
inline std::vector<ColoredCone> all_colored_faces(const ColoredFan& fan) {
    std::vector<ColoredCone> out;
    for (const auto& cc : fan.maximal) {
        for (auto& f : colored_faces(cc, fan.palette)) {
            if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(std::move(f));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Fan validity: members individually valid, and no point of the valuation
/// cone lies in the relative interior of two distinct colored faces.
inline ValidationReport validate_colored_fan(const ColoredFan& fan,
                                             bool require_strictly_convex = true) {
    ValidationReport report;
    std::vector<ColoredCone> maximal = fan.maximal;
    std::sort(maximal.begin(), maximal.end());
    maximal.erase(std::unique(maximal.begin(), maximal.end()), maximal.end());

    for (const auto& cc : maximal) {
        auto r = validate_colored_cone(cc, fan.valuation_cone, fan.palette,
                                       require_strictly_convex);
        for (auto& i : r.issues) report.issues.push_back(std::move(i));
    }
    if (!report.ok()) return report;

    auto faces_list = all_colored_faces(fan);
    for (std::size_t i = 0; i < faces_list.size(); ++i) {
        for (std::size_t j = i + 1; j < faces_list.size(); ++j) {
            auto w = relint_intersection_point(faces_list[i].sigma, faces_list[j].sigma,
                                               &fan.valuation_cone);
            if (w) {
                report.add("two distinct colored cones share a relative interior point inside V",
                           *w);
            }
        }
    }
    return report;
}

/// Polyhedrality (the A2 test): relative interiors of distinct colored faces
/// are disjoint over the whole lattice, not just inside the valuation cone.
inline bool is_polyhedral(const ColoredFan& fan) {
    auto faces_list = all_colored_faces(fan);
    for (std::size_t i = 0; i < faces_list.size(); ++i) {
        for (std::size_t j = i + 1; j < faces_list.size(); ++j) {
            if (relint_intersection_point(faces_list[i].sigma, faces_list[j].sigma).has_value())
                return false;
        }
    }
    return true;
}

} // namespace sphtrop
