#pragma once

#include <algorithm>
#include <vector>

#include "sphtrop/complex.hpp"
#include "sphtrop/tropical.hpp"

namespace sphtrop {

/// Every face of every cone in the list, deduplicated and canonically sorted.
/// The trivial cone (when present, i.e. some cone is strictly convex) sorts
/// first.
inline std::vector<Cone> all_fan_cones(const std::vector<Cone>& maximal) {
    std::vector<Cone> out;
    for (const auto& c : maximal) {
        for (auto& f : faces(c)) {
            if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(std::move(f));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Point of the partial compactification of N_Q defined by a fan: a fan cone
/// together with a representative modulo its span. Two representatives on the
/// same cone describe the same point iff their difference lies in span(cone).
struct ExtendedPoint {
    std::size_t cone_id = 0;
    QVector rep;
};

/// Projection killing span(cone): canonical representatives have zeros in the
/// pivot coordinates of the span's echelon basis.
inline Matrix span_quotient(const Cone& c) {
    std::vector<QVector> gens = c.rays();
    for (const auto& l : c.lineality()) gens.push_back(l);
    return quotient_projection(c.dim(), gens);
}

inline bool extended_points_equal(const ExtendedPoint& a, const ExtendedPoint& b,
                                  const Cone& cone) {
    if (a.cone_id != b.cone_id) return false;
    return span_quotient(cone).apply(a.rep - b.rep).is_zero();
}

/// Value of the extended point on a monomial m of the dual lattice: finite
/// pairing when m is orthogonal to the cone, infinity on the rest of the dual
/// cone, and undefined (an error) outside the dual cone.
inline ExtRational evaluate(const QVector& rep, const Cone& cone, const QVector& m) {
    bool orthogonal = true;
    for (const auto& r : cone.rays()) {
        Rational s = dot(m, r);
        if (s.sign() < 0) throw DomainError("evaluate: monomial outside the dual cone");
        if (!s.is_zero()) orthogonal = false;
    }
    for (const auto& l : cone.lineality()) {
        if (!dot(m, l).is_zero()) throw DomainError("evaluate: monomial outside the dual cone");
    }
    if (!orthogonal) return ExtRational::infinity();
    return ExtRational(dot(rep, m));
}

struct ExtendedPiece {
    Cone cone;
    PolyhedralComplex cells;  // representatives in N_Q, canonical modulo span(cone)
};

/// Tropical compactification data of a complex over a fan: one piece per fan
/// cone, the trivial piece being the finite part itself.
struct ExtendedComplex {
    std::vector<ExtendedPiece> pieces;

    const ExtendedPiece* piece_for(const Cone& c) const {
        for (const auto& p : pieces)
            if (p.cone == c) return &p;
        return nullptr;
    }
};

/// Closure of a complex in the partial compactification given by the fan:
/// a cell P escapes to the boundary stratum of sigma exactly when the
/// relative interior of sigma meets the recession cone of P, and its trace
/// there is the image of P modulo span(sigma).
inline ExtendedComplex extended_closure(const PolyhedralComplex& c,
                                        const std::vector<Cone>& fan_maximal_cones) {
    ExtendedComplex out;
    for (const auto& sigma : all_fan_cones(fan_maximal_cones)) {
        if (sigma.dim() != c.dim)
            throw DimensionMismatch("extended_closure: fan and complex dimensions differ");
        ExtendedPiece piece{sigma, PolyhedralComplex::empty(c.dim)};
        if (sigma.is_trivial()) {
            piece.cells = c;
        } else {
            Matrix q = span_quotient(sigma);
            std::vector<Polyhedron> cells;
            for (const auto& cell : c.cells) {
                if (cell.is_empty()) continue;
                Cone rec = cell.recession_cone();
                std::vector<QVector> eqs = sigma.span_equations();
                eqs.insert(eqs.end(), rec.span_equations().begin(), rec.span_equations().end());
                if (strict_feasible_point(c.dim, eqs, sigma.facets(), rec.facets()).has_value())
                    cells.push_back(cell.linear_image(q));
            }
            piece.cells = PolyhedralComplex(c.dim, std::move(cells));
        }
        out.pieces.push_back(std::move(piece));
    }
    return out;
}

} // namespace sphtrop
