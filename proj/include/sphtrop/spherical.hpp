#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sphtrop/extended.hpp"
#include "sphtrop/fan_builder.hpp"
#include "sphtrop/tropical.hpp"

namespace sphtrop {

/// Combinatorial descriptor of a spherical homogeneous space with trivial
/// divisor class group: the lattice layout plus the generators of the kernel
/// ideal in the toric coordinates. Colors map to the coordinate rays of the
/// valuation lattice.
struct SpaceDescriptor {
    LatticeLayout layout;
    std::vector<TropicalPolynomial> ideal;

    void validate() const {
        layout.validate();
        for (const auto& f : ideal)
            if (f.nvars() != layout.dim_big())
                throw DimensionMismatch("SpaceDescriptor: ideal generator variable layout");
    }

    Palette palette() const {
        Palette p;
        for (std::size_t i = 0; i < static_cast<std::size_t>(layout.r); ++i) {
            QVector rho(layout.dim_script());
            rho[i] = Rational(1);
            p.colors.push_back({"D" + std::to_string(i + 1), std::move(rho), layout.s[i]});
        }
        return p;
    }

    ColoredCone trivial_orbit() const {
        return ColoredCone{Cone::from_generators(layout.dim_script(), {}), {}};
    }
};

/// Selector of one coordinate per group, iterated in odometer order. Masked
/// coordinates are skipped; fully masked groups carry no selector.
class Omega {
public:
    Omega(const LatticeLayout& layout, const CoordSubset& mask = {}) : layout_(layout) {
        free_.resize(layout.s.size());
        for (std::size_t i = 0; i < layout_.s.size(); ++i) {
            for (std::size_t j = 0; j < static_cast<std::size_t>(layout_.s[i]); ++j) {
                std::size_t c = layout_.v_coord(i, j);
                if (std::find(mask.begin(), mask.end(), c) == mask.end())
                    free_[i].push_back(c);
            }
        }
        pos_.assign(free_.size(), 0);
        done_ = false;
    }

    /// Number of selections: the product of the free block sizes.
    std::size_t cardinality() const {
        std::size_t n = 1;
        for (const auto& f : free_)
            if (!f.empty()) n *= f.size();
        return n;
    }

    /// Selected coordinate per group; nullopt entries mark fully masked groups.
    std::optional<std::vector<std::optional<std::size_t>>> next() {
        if (done_) return std::nullopt;
        std::vector<std::optional<std::size_t>> sel(free_.size());
        for (std::size_t i = 0; i < free_.size(); ++i)
            if (!free_[i].empty()) sel[i] = free_[i][pos_[i]];
        for (std::size_t i = 0;; ++i) {
            if (i == free_.size()) {
                done_ = true;
                break;
            }
            if (free_[i].empty()) continue;
            if (++pos_[i] < free_[i].size()) break;
            pos_[i] = 0;
        }
        return sel;
    }

private:
    LatticeLayout layout_;
    std::vector<std::vector<std::size_t>> free_;
    std::vector<std::size_t> pos_;
    bool done_;
};

/// An invariant valuation of the homogeneous space, as its coordinate vector
/// on the basis characters of the valuation lattice.
using GValuation = QVector;

/// The groupwise-minimum projection on extended coordinate tuples. Defined on
/// the tropicalization of the model toric variety: no group may be entirely
/// infinite and the unit coordinates must be finite.
inline QVector psi_point(const LatticeLayout& layout, const std::vector<ExtRational>& coords) {
    if (coords.size() != layout.dim_big())
        throw DimensionMismatch("psi_point: coordinate count mismatch");
    QVector out(layout.dim_script());
    for (std::size_t i = 0; i < static_cast<std::size_t>(layout.r); ++i) {
        ExtRational best = ExtRational::infinity();
        for (std::size_t j = 0; j < static_cast<std::size_t>(layout.s[i]); ++j)
            best = min(best, coords[layout.v_coord(i, j)]);
        if (best.is_inf())
            throw DomainError("psi_point: a color block is entirely infinite");
        out[i] = best.finite();
    }
    for (std::size_t k = 0; k < static_cast<std::size_t>(layout.m); ++k) {
        const ExtRational& b = coords[layout.w_coord(k)];
        if (b.is_inf()) throw DomainError("psi_point: infinite unit coordinate");
        out[static_cast<std::size_t>(layout.r) + k] = b.finite();
    }
    return out;
}

/// psi of a finite rational point.
inline QVector psi_point(const LatticeLayout& layout, const QVector& coords) {
    std::vector<ExtRational> ext;
    ext.reserve(coords.dim());
    for (std::size_t i = 0; i < coords.dim(); ++i) ext.emplace_back(coords[i]);
    return psi_point(layout, ext);
}

/// Piecewise-linear image of a complex under the groupwise minimum: each cell
/// is subdivided by the intra-group comparison arrangement so the selected
/// coordinate is the minimum on each region, then pushed through the linear
/// selection map. Masked coordinates are excluded from the minima; output
/// coordinates of fully masked groups (or masked unit coordinates) are set to
/// zero and must be quotiented away by the caller.
inline PolyhedralComplex psi_complex(const PolyhedralComplex& c, const LatticeLayout& layout,
                                     const CoordSubset& mask = {}) {
    if (c.dim != layout.dim_big())
        throw DimensionMismatch("psi_complex: complex lives in the wrong space");
    const std::size_t script = layout.dim_script();
    const std::size_t big = layout.dim_big();
    std::vector<Polyhedron> out;

    Omega omega(layout, mask);
    while (auto sel = omega.next()) {
        // region where each selected coordinate is the group minimum
        std::vector<AffineConstraint> region;
        for (std::size_t i = 0; i < sel->size(); ++i) {
            if (!(*sel)[i]) continue;
            std::size_t chosen = *(*sel)[i];
            for (std::size_t j = 0; j < static_cast<std::size_t>(layout.s[i]); ++j) {
                std::size_t other = layout.v_coord(i, j);
                if (other == chosen) continue;
                if (std::find(mask.begin(), mask.end(), other) != mask.end()) continue;
                QVector n(big);
                n[other] = Rational(1);
                n[chosen] = Rational(-1);
                region.push_back({std::move(n), Rational(0)});
            }
        }
        Matrix sel_map(script, big);
        for (std::size_t i = 0; i < sel->size(); ++i)
            if ((*sel)[i]) sel_map.at(i, *(*sel)[i]) = Rational(1);
        for (std::size_t k = 0; k < static_cast<std::size_t>(layout.m); ++k) {
            std::size_t wc = layout.w_coord(k);
            if (std::find(mask.begin(), mask.end(), wc) == mask.end())
                sel_map.at(static_cast<std::size_t>(layout.r) + k, wc) = Rational(1);
        }
        Polyhedron region_poly = Polyhedron::from_constraints(big, region);
        for (const auto& cell : c.cells) {
            Polyhedron piece = intersect(cell, region_poly);
            if (!piece.is_empty()) out.push_back(piece.linear_image(sel_map));
        }
    }
    return PolyhedralComplex(script, std::move(out));
}

/// The valuation cone: tropicalize the ideal, restrict to the image of the
/// lattice inclusion, and pull back. The result must be a convex cone; a
/// non-convex union signals that the prevariety differs from the variety and
/// is reported as an error rather than hulled.
inline Cone valuation_cone(const SpaceDescriptor& d) {
    d.validate();
    PolyhedralComplex pre = prevariety(d.ideal, d.layout.dim_big());
    Matrix inc_t = d.layout.inclusion_matrix().transpose();

    std::vector<Polyhedron> pulled;
    for (const auto& cell : pre.cells) {
        std::vector<AffineConstraint> ineqs, eqs;
        for (const auto& in : cell.inequalities()) ineqs.push_back({inc_t.apply(in.normal), in.rhs});
        for (const auto& eq : cell.equalities()) eqs.push_back({inc_t.apply(eq.normal), eq.rhs});
        Polyhedron p = Polyhedron::from_constraints(d.layout.dim_script(), ineqs, eqs);
        if (!p.is_empty()) pulled.push_back(std::move(p));
    }
    PolyhedralComplex restricted(d.layout.dim_script(), pulled);

    std::vector<QVector> gens, lins;
    for (const auto& cell : restricted.cells) {
        for (const auto& p : cell.points())
            if (!p.is_zero()) gens.push_back(p);
        for (const auto& r : cell.recession_rays()) gens.push_back(r);
        for (const auto& l : cell.lineality()) lins.push_back(l);
    }
    Cone candidate = Cone::from_generators(d.layout.dim_script(), gens, lins);
    if (!support_equal(restricted, PolyhedralComplex(d.layout.dim_script(),
                                                     {Polyhedron::from_cone(candidate)})))
        throw DomainError("valuation_cone: restricted tropicalization is not a convex cone");
    return candidate;
}

/// Tropicalization of a subvariety of the homogeneous space: the ideal
/// generators are implicitly adjoined to the subvariety generators.
inline PolyhedralComplex trop_subvariety(const SpaceDescriptor& d,
                                         const std::vector<TropicalPolynomial>& ygens) {
    d.validate();
    std::vector<TropicalPolynomial> all = d.ideal;
    for (const auto& f : ygens) {
        if (f.nvars() != d.layout.dim_big())
            throw DimensionMismatch("trop_subvariety: generator variable layout");
        all.push_back(f);
    }
    return psi_complex(prevariety(all, d.layout.dim_big()), d.layout);
}

struct LiftedTropResult {
    PolyhedralComplex psi_image;  // in the trivial-class-group lattice
    PolyhedralComplex pushed;     // in the bold lattice
};

/// Tropicalization over a nontrivial divisor class group: tropicalize the
/// preimage in the associated trivial-class-group space, then push forward.
inline LiftedTropResult trop_subvariety_lifted(const SpaceDescriptor& d, const Matrix& pi_star,
                                               const std::vector<TropicalPolynomial>& ygens) {
    if (pi_star.cols() != d.layout.dim_script())
        throw DimensionMismatch("trop_subvariety_lifted: pi_star domain");
    LiftedTropResult out;
    out.psi_image = trop_subvariety(d, ygens);
    out.pushed = linear_image(pi_star, out.psi_image);
    return out;
}

/// Extended valuation on the orbit of a colored cone: a representative of the
/// functional on the orthogonal part of the dual lattice, canonical modulo
/// span(orbit cone).
struct ExtendedGValuation {
    ColoredCone orbit;
    QVector rep;
};

/// Basis coordinates of the big lattice lying inside a toric cone; these are
/// the coordinates an extended point of that stratum sends to infinity.
inline CoordSubset infinite_coords(const Cone& toric_cone) {
    CoordSubset mask;
    for (std::size_t c = 0; c < toric_cone.dim(); ++c)
        if (toric_cone.contains(unit_vector(toric_cone.dim(), c))) mask.push_back(c);
    return mask;
}

/// The extension of psi to a boundary stratum: groupwise minimum over the
/// finite coordinates, reduced modulo the span of the target orbit cone.
/// Blocks that are entirely infinite must be absorbed by that span.
inline ExtendedGValuation psi_bar_point(const LatticeLayout& layout, const QVector& rep_big,
                                        const Cone& toric_cone, const ColoredCone& target) {
    if (rep_big.dim() != layout.dim_big())
        throw DimensionMismatch("psi_bar_point: representative dimension");
    CoordSubset mask = infinite_coords(toric_cone);
    Matrix q = span_quotient(target.sigma);

    QVector out(layout.dim_script());
    for (std::size_t i = 0; i < static_cast<std::size_t>(layout.r); ++i) {
        bool any_free = false;
        Rational best;
        for (std::size_t j = 0; j < static_cast<std::size_t>(layout.s[i]); ++j) {
            std::size_t c = layout.v_coord(i, j);
            if (std::find(mask.begin(), mask.end(), c) != mask.end()) continue;
            if (!any_free || rep_big[c] < best) best = rep_big[c];
            any_free = true;
        }
        if (any_free) {
            out[i] = best;
        } else if (!q.apply(unit_vector(layout.dim_script(), i)).is_zero()) {
            throw DomainError("psi_bar_point: infinite block not absorbed by the orbit cone");
        }
    }
    for (std::size_t k = 0; k < static_cast<std::size_t>(layout.m); ++k) {
        std::size_t wc = layout.w_coord(k);
        std::size_t sc = static_cast<std::size_t>(layout.r) + k;
        if (std::find(mask.begin(), mask.end(), wc) == mask.end()) {
            out[sc] = rep_big[wc];
        } else if (!q.apply(unit_vector(layout.dim_script(), sc)).is_zero()) {
            throw DomainError("psi_bar_point: infinite unit coordinate not absorbed");
        }
    }
    return {target, q.apply(out)};
}

struct OmegaDeviation {
    QVector monomial;
    ExtRational direct;
    ExtRational omega_min;
};

/// Compare the groupwise-minimum representative against the selector-indexed
/// minimum formula on sample monomials of the orbit's finite lattice. Lifts
/// outside the dual of the toric cone are skipped. Deviations (possible for
/// mixed-sign exponents) are reported, not thrown.
inline std::vector<OmegaDeviation> psi_bar_omega_check(const LatticeLayout& layout,
                                                       const QVector& rep_big,
                                                       const Cone& toric_cone,
                                                       const ExtendedGValuation& value,
                                                       const std::vector<QVector>& monomials) {
    std::vector<OmegaDeviation> deviations;
    for (const auto& me : monomials) {
        ExtRational direct = evaluate(value.rep, value.orbit.sigma, me);
        ExtRational best = ExtRational::infinity();
        bool any_defined = false;
        Omega omega(layout);
        while (auto sel = omega.next()) {
            QVector lift(layout.dim_big());
            for (std::size_t i = 0; i < sel->size(); ++i) lift[*(*sel)[i]] = me[i];
            for (std::size_t k = 0; k < static_cast<std::size_t>(layout.m); ++k)
                lift[layout.w_coord(k)] = me[static_cast<std::size_t>(layout.r) + k];
            ExtRational v;
            try {
                v = evaluate(rep_big, toric_cone, lift);
            } catch (const DomainError&) {
                continue;  // lift outside the dual cone: not an admissible selector
            }
            any_defined = true;
            best = min(best, v);
        }
        if (!any_defined) continue;
        if (!(best == direct)) deviations.push_back({me, direct, best});
    }
    return deviations;
}

/// A primitive lattice basis of sigma^perp in the dual of the script lattice.
inline std::vector<QVector> orthogonal_character_basis(const Cone& sigma) {
    std::vector<QVector> gens = sigma.rays();
    for (const auto& l : sigma.lineality()) gens.push_back(l);
    if (gens.empty()) {
        std::vector<QVector> basis;
        for (std::size_t i = 0; i < sigma.dim(); ++i) basis.push_back(unit_vector(sigma.dim(), i));
        return basis;
    }
    Rref r = rref(gens);
    // kernel of the pairing with span(sigma): free columns give basis vectors
    std::vector<QVector> basis;
    std::vector<bool> is_pivot(sigma.dim(), false);
    for (std::size_t p : r.pivots) is_pivot[p] = true;
    for (std::size_t c = 0; c < sigma.dim(); ++c) {
        if (is_pivot[c]) continue;
        QVector v(sigma.dim());
        v[c] = Rational(1);
        for (std::size_t i = 0; i < r.rows.size(); ++i) v[r.pivots[i]] = -r.rows[i][c];
        basis.push_back(v.primitive_signless());
    }
    return basis;
}

struct SphericalTropPiece {
    ColoredCone orbit;
    PolyhedralComplex cells;  // representatives, canonical modulo span(orbit cone)
};

struct SphericalTrop {
    std::vector<SphericalTropPiece> pieces;

    const SphericalTropPiece* find(const ColoredCone& orbit) const {
        for (const auto& p : pieces)
            if (p.orbit == orbit) return &p;
        return nullptr;
    }
};

struct TropClosureResult {
    SphericalTrop trop;
    /// One entry per nonempty toric boundary stratum, recording where its
    /// extended points land.
    struct Contribution {
        Cone fan_cone;
        CoordSubset mask;
        ColoredCone orbit;
        PolyhedralComplex cells;
    };
    std::vector<Contribution> contributions;
};

namespace detail {

/// Target orbit of a toric fan cone: the colored cone whose relative interior
/// contains the psi image of the stratum's interior directions.
inline const ColoredCone* resolve_orbit(const std::vector<ColoredCone>& orbits,
                                        const LatticeLayout& layout, const Cone& fan_cone) {
    QVector witness = psi_point(layout, fan_cone.relint_point());
    for (const auto& orbit : orbits)
        if (orbit.sigma.relint_contains(witness)) return &orbit;
    return nullptr;
}

inline void run_global_closure(const SpaceDescriptor& d, const ColoredFan& fan,
                               const PolyhedralComplex& finite_trop,
                               std::map<ColoredCone, std::vector<Polyhedron>>& acc,
                               std::vector<TropClosureResult::Contribution>& contributions) {
    ToricFan z = build_fan_Z(fan, d.layout);
    std::vector<Cone> maximal;
    for (const auto& tc : z.maximal) maximal.push_back(tc.cone);
    ExtendedComplex ec = extended_closure(finite_trop, maximal);
    auto orbits = all_colored_faces(fan);

    for (const auto& piece : ec.pieces) {
        if (piece.cells.is_empty()) continue;
        const ColoredCone* orbit = resolve_orbit(orbits, d.layout, piece.cone);
        if (!orbit)
            throw DomainError("trop_closure: stratum direction escapes every orbit cone");
        CoordSubset mask = infinite_coords(piece.cone);
        PolyhedralComplex projected = psi_complex(piece.cells, d.layout, mask);
        // absorb placeholder coordinates of fully masked blocks
        Matrix q = span_quotient(orbit->sigma);
        for (std::size_t i = 0; i < static_cast<std::size_t>(d.layout.r); ++i) {
            bool fully_masked = true;
            for (std::size_t j = 0; j < static_cast<std::size_t>(d.layout.s[i]); ++j)
                if (std::find(mask.begin(), mask.end(), d.layout.v_coord(i, j)) == mask.end())
                    fully_masked = false;
            if (fully_masked && !q.apply(unit_vector(d.layout.dim_script(), i)).is_zero())
                throw DomainError("trop_closure: infinite block not absorbed by the orbit cone");
        }
        for (std::size_t k = 0; k < static_cast<std::size_t>(d.layout.m); ++k) {
            bool masked = std::find(mask.begin(), mask.end(), d.layout.w_coord(k)) != mask.end();
            std::size_t sc = static_cast<std::size_t>(d.layout.r) + k;
            if (masked && !q.apply(unit_vector(d.layout.dim_script(), sc)).is_zero())
                throw DomainError("trop_closure: infinite unit coordinate not absorbed");
        }
        PolyhedralComplex reduced = linear_image(q, projected);
        auto& cells = acc[*orbit];
        for (const auto& cell : reduced.cells) cells.push_back(cell);
        contributions.push_back({piece.cone, mask, *orbit, reduced});
    }
    // make sure every orbit of this fan is present, possibly empty
    for (const auto& orbit : orbits) acc.try_emplace(orbit);
}

} // namespace detail

/// Extended tropicalization of the closure of a subvariety in the embedding
/// described by the colored fan. Global mode requires a polyhedral fan; the
/// per-cone mode processes each maximal colored cone as a simple embedding
/// and glues the pieces along shared orbits.
inline TropClosureResult trop_closure(const SpaceDescriptor& d, const ColoredFan& fan,
                                      const std::vector<TropicalPolynomial>& ygens,
                                      bool per_cone = false) {
    d.validate();
    std::vector<TropicalPolynomial> all = d.ideal;
    for (const auto& f : ygens) all.push_back(f);
    PolyhedralComplex finite_trop = prevariety(all, d.layout.dim_big());

    std::map<ColoredCone, std::vector<Polyhedron>> acc;
    TropClosureResult out;
    if (per_cone) {
        auto report = validate_colored_fan(fan);
        if (!report.ok()) throw DomainError("trop_closure: invalid fan: " + report.describe());
        for (const auto& cc : fan.maximal) {
            ColoredFan simple{fan.palette, fan.valuation_cone, {cc}};
            detail::run_global_closure(d, simple, finite_trop, acc, out.contributions);
        }
    } else {
        detail::run_global_closure(d, fan, finite_trop, acc, out.contributions);
    }
    for (auto& [orbit, cells] : acc)
        out.trop.pieces.push_back({orbit, PolyhedralComplex(d.layout.dim_script(), cells)});
    return out;
}

/// Pushforward of a spherical tropicalization along per-orbit linear maps.
struct PushMapEntry {
    std::size_t source_piece;
    std::size_t target_orbit;
    Matrix map;
};

inline SphericalTrop push_tropicalization(const SphericalTrop& t,
                                          const std::vector<ColoredCone>& target_orbits,
                                          const std::vector<PushMapEntry>& entries) {
    std::vector<std::vector<Polyhedron>> acc(target_orbits.size());
    for (std::size_t s = 0; s < t.pieces.size(); ++s) {
        if (t.pieces[s].cells.is_empty()) continue;
        bool mapped = false;
        for (const auto& e : entries) {
            if (e.source_piece != s) continue;
            if (e.target_orbit >= target_orbits.size())
                throw DomainError("push_tropicalization: target orbit out of range");
            Matrix q = span_quotient(target_orbits[e.target_orbit].sigma);
            PolyhedralComplex img = linear_image(q.compose(e.map), t.pieces[s].cells);
            for (const auto& cell : img.cells) acc[e.target_orbit].push_back(cell);
            mapped = true;
        }
        if (!mapped)
            throw DomainError("push_tropicalization: unmapped orbit carries a nonempty piece");
    }
    SphericalTrop out;
    for (std::size_t i = 0; i < target_orbits.size(); ++i) {
        std::size_t dim = target_orbits[i].sigma.dim();
        out.pieces.push_back({target_orbits[i], PolyhedralComplex(dim, acc[i])});
    }
    return out;
}

/// Independently computed right-hand side of the closure-commutation law:
/// the closure of the finite tropicalization inside the orbit decomposition
/// of the embedding, via recession against the colored cones themselves.
inline SphericalTrop closure_in_spherical_trop(const SpaceDescriptor& d, const ColoredFan& fan,
                                               const PolyhedralComplex& finite_trop) {
    SphericalTrop out;
    for (const auto& orbit : all_colored_faces(fan)) {
        PolyhedralComplex cells = PolyhedralComplex::empty(d.layout.dim_script());
        if (orbit.sigma.is_trivial()) {
            cells = finite_trop;
        } else {
            Matrix q = span_quotient(orbit.sigma);
            std::vector<Polyhedron> collected;
            for (const auto& cell : finite_trop.cells) {
                Cone rec = cell.recession_cone();
                std::vector<QVector> eqs = orbit.sigma.span_equations();
                eqs.insert(eqs.end(), rec.span_equations().begin(), rec.span_equations().end());
                if (strict_feasible_point(d.layout.dim_script(), eqs, orbit.sigma.facets(),
                                          rec.facets())
                        .has_value())
                    collected.push_back(cell.linear_image(q));
            }
            cells = PolyhedralComplex(d.layout.dim_script(), collected);
        }
        out.pieces.push_back({orbit, std::move(cells)});
    }
    return out;
}

struct ClosureCommuteReport {
    bool equal = true;
    struct OrbitComparison {
        ColoredCone orbit;
        bool equal;
        std::size_t lhs_cells;
        std::size_t rhs_cells;
    };
    std::vector<OrbitComparison> orbits;
};

/// Checks trop of the closure against the closure of the trop through two
/// independent code paths: the toric pipeline with the piecewise extension
/// on one side, recession against the colored fan itself on the other.
inline ClosureCommuteReport check_closure_commutes(const SpaceDescriptor& d,
                                                   const ColoredFan& fan,
                                                   const std::vector<TropicalPolynomial>& ygens,
                                                   bool per_cone = false) {
    TropClosureResult lhs = trop_closure(d, fan, ygens, per_cone);
    SphericalTrop rhs = closure_in_spherical_trop(d, fan, trop_subvariety(d, ygens));

    ClosureCommuteReport report;
    for (const auto& rp : rhs.pieces) {
        const SphericalTropPiece* lp = lhs.trop.find(rp.orbit);
        PolyhedralComplex lcells = lp ? lp->cells : PolyhedralComplex::empty(d.layout.dim_script());
        bool eq = support_equal(lcells, rp.cells);
        report.orbits.push_back({rp.orbit, eq, lcells.cells.size(), rp.cells.cells.size()});
        if (!eq) report.equal = false;
    }
    for (const auto& lp : lhs.trop.pieces) {
        if (!rhs.find(lp.orbit)) {
            report.orbits.push_back({lp.orbit, lp.cells.is_empty(), lp.cells.cells.size(), 0});
            if (!lp.cells.is_empty()) report.equal = false;
        }
    }
    return report;
}

} // namespace sphtrop
