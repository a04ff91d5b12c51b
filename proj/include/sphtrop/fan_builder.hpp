#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sphtrop/colored_fan.hpp"

namespace sphtrop {

/// Index bookkeeping for the two lattices of the toric model: the valuation
/// lattice (one coordinate per color plus one per unit generator) and the big
/// lattice with one coordinate per basis element v_ij of each color module
/// plus the shared unit coordinates w_k. The inclusion sends v_i to the sum
/// of its block and fixes the w_k.
struct LatticeLayout {
    int r = 0;
    std::vector<int> s;
    int m = 0;

    void validate() const {
        if (r < 0 || m < 0 || static_cast<std::size_t>(r) != s.size())
            throw DomainError("LatticeLayout: r must match the number of module ranks");
        for (int si : s)
            if (si < 1) throw DomainError("LatticeLayout: every rank s_i must be >= 1");
    }

    std::size_t total_s() const {
        std::size_t t = 0;
        for (int si : s) t += static_cast<std::size_t>(si);
        return t;
    }
    std::size_t dim_script() const { return static_cast<std::size_t>(r + m); }
    std::size_t dim_big() const { return total_s() + static_cast<std::size_t>(m); }

    std::size_t group_offset(std::size_t i) const {
        std::size_t off = 0;
        for (std::size_t g = 0; g < i; ++g) off += static_cast<std::size_t>(s[g]);
        return off;
    }
    std::size_t v_coord(std::size_t i, std::size_t j) const { return group_offset(i) + j; }
    std::size_t w_coord(std::size_t k) const { return total_s() + k; }

    /// Group of a big-lattice coordinate, or nullopt for a w coordinate.
    std::optional<std::size_t> group_of(std::size_t coord) const {
        std::size_t off = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            off += static_cast<std::size_t>(s[i]);
            if (coord < off) return i;
        }
        return std::nullopt;
    }

    /// Matrix of the inclusion of the valuation lattice into the big lattice.
    Matrix inclusion_matrix() const {
        Matrix inc(dim_big(), dim_script());
        for (std::size_t i = 0; i < static_cast<std::size_t>(r); ++i)
            for (std::size_t j = 0; j < static_cast<std::size_t>(s[i]); ++j)
                inc.at(v_coord(i, j), i) = Rational(1);
        for (std::size_t k = 0; k < static_cast<std::size_t>(m); ++k)
            inc.at(w_coord(k), static_cast<std::size_t>(r) + k) = Rational(1);
        return inc;
    }

    QVector include(const QVector& v) const { return inclusion_matrix().apply(v); }
};

/// Subset of the v_ij coordinates, as sorted flat indices into the big lattice.
using CoordSubset = std::vector<std::size_t>;

/// Streams the admissible subsets of {v_ij}: for every group i without a
/// color in F at least one v_ij stays out. Groups whose color lies in F may
/// contribute their whole block. The exact_one variant instead removes
/// exactly one coordinate from each uncolored group.
class AEnumerator {
public:
    AEnumerator(const LatticeLayout& layout, const std::vector<bool>& colored,
                bool exact_one = false)
        : layout_(layout), exact_one_(exact_one), done_(false) {
        layout_.validate();
        if (colored.size() != static_cast<std::size_t>(layout_.r))
            throw DomainError("AEnumerator: colored flags must match the group count");
        colored_ = colored;
        masks_.assign(colored_.size(), 0);
        for (std::size_t i = 0; i < masks_.size(); ++i) {
            masks_[i] = first_mask(i);
            if (masks_[i] == kNoMask) {
                done_ = true;
                return;
            }
        }
    }

    /// Next subset in odometer order; nullopt when exhausted.
    std::optional<CoordSubset> next() {
        if (done_) return std::nullopt;
        CoordSubset out;
        for (std::size_t i = 0; i < masks_.size(); ++i) {
            for (std::size_t j = 0; j < static_cast<std::size_t>(layout_.s[i]); ++j)
                if (masks_[i] & (std::uint64_t(1) << j)) out.push_back(layout_.v_coord(i, j));
        }
        advance();
        return out;
    }

private:
    static constexpr std::uint64_t kNoMask = ~std::uint64_t(0);

    bool mask_ok(std::size_t i, std::uint64_t mask) const {
        std::uint64_t full = (std::uint64_t(1) << layout_.s[i]) - 1;
        if (exact_one_ && !colored_[i]) {
            std::uint64_t missing = full & ~mask;
            return missing != 0 && (missing & (missing - 1)) == 0;
        }
        if (!colored_[i]) return mask != full;
        return true;
    }

    std::uint64_t first_mask(std::size_t i) const {
        std::uint64_t full = (std::uint64_t(1) << layout_.s[i]) - 1;
        for (std::uint64_t mask = 0; mask <= full; ++mask)
            if (mask_ok(i, mask)) return mask;
        return kNoMask;
    }

    void advance() {
        for (std::size_t i = 0; i < masks_.size(); ++i) {
            std::uint64_t full = (std::uint64_t(1) << layout_.s[i]) - 1;
            std::uint64_t mask = masks_[i];
            do {
                ++mask;
            } while (mask <= full && !mask_ok(i, mask));
            if (mask <= full) {
                masks_[i] = mask;
                return;
            }
            masks_[i] = first_mask(i);
        }
        done_ = true;  // odometer wrapped
    }

    LatticeLayout layout_;
    std::vector<bool> colored_;
    bool exact_one_;
    bool done_;
    std::vector<std::uint64_t> masks_;
};

inline std::vector<CoordSubset> enumerate_A(const LatticeLayout& layout,
                                            const std::vector<bool>& colored,
                                            bool exact_one = false) {
    AEnumerator e(layout, colored, exact_one);
    std::vector<CoordSubset> out;
    while (auto a = e.next()) out.push_back(std::move(*a));
    return out;
}

/// Inclusion-maximal admissible subsets: full blocks on colored groups, all
/// but one coordinate on the others. These are the subsets whose cones are
/// materialized into the fan of Z.
inline std::vector<CoordSubset> maximal_A_subsets(const LatticeLayout& layout,
                                                  const std::vector<bool>& colored) {
    std::vector<CoordSubset> out{{}};
    for (std::size_t i = 0; i < colored.size(); ++i) {
        std::vector<CoordSubset> next;
        const std::size_t si = static_cast<std::size_t>(layout.s[i]);
        if (colored[i]) {
            for (auto base : out) {
                for (std::size_t j = 0; j < si; ++j) base.push_back(layout.v_coord(i, j));
                next.push_back(std::move(base));
            }
        } else {
            for (std::size_t miss = 0; miss < si; ++miss) {
                for (auto base : out) {
                    for (std::size_t j = 0; j < si; ++j)
                        if (j != miss) base.push_back(layout.v_coord(i, j));
                    next.push_back(std::move(base));
                }
            }
        }
        out = std::move(next);
    }
    for (auto& a : out) std::sort(a.begin(), a.end());
    std::sort(out.begin(), out.end());
    return out;
}

/// Filter a subset family down to its inclusion-maximal members.
inline std::vector<CoordSubset> inclusion_maximal(std::vector<CoordSubset> family) {
    for (auto& a : family) std::sort(a.begin(), a.end());
    std::vector<CoordSubset> out;
    for (const auto& a : family) {
        bool dominated = false;
        for (const auto& b : family) {
            if (a == b) continue;
            if (std::includes(b.begin(), b.end(), a.begin(), a.end())) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Which groups of the layout carry a color of the given colored cone. The
/// palette order fixes the group order: group i belongs to palette color i.
inline std::vector<bool> colored_groups(const ColoredCone& cc, const Palette& palette,
                                        const LatticeLayout& layout) {
    if (palette.colors.size() != static_cast<std::size_t>(layout.r))
        throw DomainError("palette size does not match the layout color count");
    for (std::size_t i = 0; i < palette.colors.size(); ++i)
        if (palette.colors[i].rank != layout.s[i])
            throw DomainError("palette ranks do not match the layout");
    std::vector<bool> flags(palette.colors.size(), false);
    for (const auto& id : cc.colors) {
        bool found = false;
        for (std::size_t i = 0; i < palette.colors.size(); ++i) {
            if (palette.colors[i].id == id) {
                flags[i] = true;
                found = true;
            }
        }
        if (!found) throw DomainError("colored cone uses unknown color '" + id + "'");
    }
    return flags;
}

/// The non-colored rays sigma(1) of a colored cone, as primitive vectors in
/// the valuation lattice. A ray is colored when some color of the cone maps
/// onto it.
inline std::vector<QVector> uncolored_rays(const ColoredCone& cc, const Palette& palette) {
    std::vector<QVector> out;
    for (const auto& ray : cc.sigma.rays()) {
        bool colored = false;
        for (const auto& id : cc.colors) {
            const QVector& rho = palette.find(id).rho;
            if (!rho.is_zero() && rho.primitive() == ray) colored = true;
        }
        if (!colored) out.push_back(ray);
    }
    return out;
}

/// cone(a ∪ sigma(1)) inside the big lattice.
inline Cone build_sigma_a(const ColoredCone& cc, const CoordSubset& a,
                          const LatticeLayout& layout, const Palette& palette) {
    auto flags = colored_groups(cc, palette, layout);
    // membership check: a must be admissible for the cone's colors
    std::vector<bool> missing(flags.size(), false);
    for (std::size_t i = 0; i < flags.size(); ++i) {
        for (std::size_t j = 0; j < static_cast<std::size_t>(layout.s[i]); ++j) {
            if (std::find(a.begin(), a.end(), layout.v_coord(i, j)) == a.end()) missing[i] = true;
        }
        if (!flags[i] && !missing[i])
            throw DomainError("build_sigma_a: subset keeps a full uncolored block");
    }
    std::vector<QVector> gens;
    for (std::size_t c : a) {
        if (c >= layout.total_s()) throw DomainError("build_sigma_a: index outside the v blocks");
        gens.push_back(unit_vector(layout.dim_big(), c));
    }
    for (const auto& u : uncolored_rays(cc, palette)) gens.push_back(layout.include(u));
    return Cone::from_generators(layout.dim_big(), gens);
}

struct ToricCone {
    Cone cone;
    struct Provenance {
        std::size_t colored_index;  // index into the source fan's maximal cones
        CoordSubset a;
    };
    std::vector<Provenance> provenance;
};

struct ToricFan {
    LatticeLayout layout;
    std::vector<ToricCone> maximal;
    std::vector<QVector> fan_uncolored_rays;  // global u_l list in the valuation lattice
};

namespace detail {

inline void require_valid_polyhedral(const ColoredFan& fan) {
    auto report = validate_colored_fan(fan);
    if (!report.ok())
        throw DomainError("colored fan is invalid: " + report.describe());
    if (!is_polyhedral(fan))
        throw NonPolyhedralFan(
            "colored fan is not polyhedral: no toric embedding exists");
}

} // namespace detail

/// The fan of the ambient toric variety attached to a polyhedral colored fan:
/// maximal cones cone(a ∪ sigma(1)) over all maximal colored cones and
/// maximal admissible subsets, deduplicated with provenance. Fan axioms are
/// verified on the result.
inline ToricFan build_fan_Z(const ColoredFan& fan, const LatticeLayout& layout,
                            bool exact_one = false) {
    layout.validate();
    detail::require_valid_polyhedral(fan);

    ToricFan out;
    out.layout = layout;
    for (const auto& cc : fan.maximal) {
        for (const auto& u : uncolored_rays(cc, fan.palette)) {
            if (std::find(out.fan_uncolored_rays.begin(), out.fan_uncolored_rays.end(), u) ==
                out.fan_uncolored_rays.end())
                out.fan_uncolored_rays.push_back(u);
        }
    }
    std::sort(out.fan_uncolored_rays.begin(), out.fan_uncolored_rays.end());

    for (std::size_t ci = 0; ci < fan.maximal.size(); ++ci) {
        const ColoredCone& cc = fan.maximal[ci];
        if (!cc.sigma.is_strictly_convex())
            throw DomainError("build_fan_Z: colored cones must be strictly convex");
        auto flags = colored_groups(cc, fan.palette, layout);
        std::vector<CoordSubset> maximal_subsets = maximal_A_subsets(layout, flags);
        if (exact_one) {
            // Cross-check: the at-least-one and exactly-one definitions of the
            // admissible family have the same inclusion-maximal members, hence
            // the same maximal cones.
            if (inclusion_maximal(enumerate_A(layout, flags, false)) != maximal_subsets ||
                inclusion_maximal(enumerate_A(layout, flags, true)) != maximal_subsets)
                throw DomainError("exact-one variant disagrees on maximal subsets");
        }
        for (auto& a : maximal_subsets) {
            Cone cone = build_sigma_a(cc, a, layout, fan.palette);
            auto it = std::find_if(out.maximal.begin(), out.maximal.end(),
                                   [&](const ToricCone& t) { return t.cone == cone; });
            if (it == out.maximal.end()) {
                out.maximal.push_back({std::move(cone), {{ci, a}}});
            } else {
                it->provenance.push_back({ci, a});
            }
        }
    }

    // fan axioms on the stored cones: pairwise intersections are faces
    for (std::size_t i = 0; i < out.maximal.size(); ++i) {
        for (std::size_t j = i + 1; j < out.maximal.size(); ++j) {
            Cone meet = intersect(out.maximal[i].cone, out.maximal[j].cone);
            if (!is_face_of(meet, out.maximal[i].cone) || !is_face_of(meet, out.maximal[j].cone))
                throw DomainError("build_fan_Z: produced cones do not intersect in faces");
        }
    }
    return out;
}

/// Cover fan: every non-colored ray u_l of the colored fan is replaced by an
/// orthogonal basis vector e_l, so the hat cones are spanned by coordinate
/// vectors. p_star projects back onto the fan of Z.
struct HatFan {
    std::size_t dim = 0;  // dim_big + n
    std::size_t n = 0;    // number of non-colored rays
    struct HatCone {
        std::vector<std::size_t> generator_coords;  // sorted basis indices
        Cone cone;
    };
    std::vector<HatCone> maximal;
    Matrix p_star;
};

/// Exponent matrix of the quotient torus: one row per non-colored ray. The
/// row pairs to zero with every character pulled back through p_star.
struct GammaTorus {
    Matrix exponents;  // n x (dim_big + n)
};

inline std::pair<HatFan, GammaTorus> build_fan_Zhat(const ColoredFan& fan,
                                                    const LatticeLayout& layout) {
    ToricFan z = build_fan_Z(fan, layout);
    const std::size_t big = layout.dim_big();
    const std::size_t n = z.fan_uncolored_rays.size();

    HatFan hat;
    hat.dim = big + n;
    hat.n = n;
    hat.p_star = Matrix(big, big + n);
    for (std::size_t i = 0; i < big; ++i) hat.p_star.at(i, i) = Rational(1);
    for (std::size_t l = 0; l < n; ++l) {
        QVector u = layout.include(z.fan_uncolored_rays[l]);
        for (std::size_t i = 0; i < big; ++i) hat.p_star.at(i, big + l) = u[i];
    }

    auto ray_index = [&](const QVector& u) {
        auto it = std::find(z.fan_uncolored_rays.begin(), z.fan_uncolored_rays.end(), u);
        if (it == z.fan_uncolored_rays.end())
            throw DomainError("build_fan_Zhat: missing global ray index");
        return static_cast<std::size_t>(it - z.fan_uncolored_rays.begin());
    };

    std::vector<std::vector<std::size_t>> seen;
    for (const auto& tc : z.maximal) {
        for (const auto& prov : tc.provenance) {
            const ColoredCone& cc = fan.maximal[prov.colored_index];
            std::vector<std::size_t> coords = prov.a;
            for (const auto& u : uncolored_rays(cc, fan.palette))
                coords.push_back(big + ray_index(u));
            std::sort(coords.begin(), coords.end());
            if (std::find(seen.begin(), seen.end(), coords) != seen.end()) continue;
            seen.push_back(coords);
            std::vector<QVector> gens;
            for (std::size_t c : coords) gens.push_back(unit_vector(big + n, c));
            hat.maximal.push_back({coords, Cone::from_generators(big + n, gens)});
        }
    }

    GammaTorus gamma;
    gamma.exponents = Matrix(n, big + n);
    for (std::size_t l = 0; l < n; ++l) {
        QVector u = layout.include(z.fan_uncolored_rays[l]);
        for (std::size_t i = 0; i < big; ++i) gamma.exponents.at(l, i) = -u[i];
        gamma.exponents.at(l, big + l) = Rational(1);
    }
    return {std::move(hat), std::move(gamma)};
}

/// One squarefree monomial per maximal hat cone: the product of all
/// coordinates whose ray is absent from the cone.
inline std::vector<QVector> irrelevant_monomials(const HatFan& hat) {
    std::vector<QVector> out;
    for (const auto& hc : hat.maximal) {
        QVector mono(hat.dim);
        for (std::size_t c = 0; c < hat.dim; ++c) {
            if (std::find(hc.generator_coords.begin(), hc.generator_coords.end(), c) ==
                hc.generator_coords.end())
                mono[c] = Rational(1);
        }
        out.push_back(std::move(mono));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Colored cone of a fan over the bold (nontrivial divisor class group)
/// lattice: explicit non-colored rays plus bold color ids.
struct BoldCone {
    std::vector<QVector> rays;
    std::set<std::string> colors;
};

struct LiftData {
    Matrix pi_star;                                            // script N -> bold N
    std::vector<std::pair<std::string, std::string>> colors;   // bold id -> color id
    std::vector<int> eta_indices;                              // carried descriptor data
};

/// Rebuild a bold colored fan over the trivial-class-group lattice: colored
/// rays come from the identified colors, non-colored rays are lifted through
/// the inverse of pi_star restricted to the unit-coordinate subspace, and
/// higher cones are rebuilt between these rays when present in the bold fan.
inline ColoredFan lift_colored_fan(const std::vector<BoldCone>& bold_fan, const LiftData& lift,
                                   const LatticeLayout& layout, const Palette& palette,
                                   const Cone& valuation_cone) {
    layout.validate();
    const std::size_t script = layout.dim_script();
    if (lift.pi_star.cols() != script)
        throw DimensionMismatch("lift_colored_fan: pi_star domain mismatch");
    const std::size_t bold_dim = lift.pi_star.rows();
    if (bold_dim != static_cast<std::size_t>(layout.m))
        throw DomainError(
            "lift_colored_fan: pi_star restricted to the unit subspace must be square");

    // Restriction of pi_star to span{w_k}.
    Matrix w_block(bold_dim, layout.m);
    for (std::size_t k = 0; k < static_cast<std::size_t>(layout.m); ++k)
        for (std::size_t i = 0; i < bold_dim; ++i)
            w_block.at(i, k) = lift.pi_star.at(i, static_cast<std::size_t>(layout.r) + k);

    auto lift_ray = [&](const QVector& u) {
        auto x = solve(w_block, u);
        if (!x) throw DomainError("lift_colored_fan: pi_star restriction not invertible");
        if (!(w_block.apply(*x) == u))
            throw DomainError("lift_colored_fan: pi_star restriction not invertible");
        QVector v(script);
        for (std::size_t k = 0; k < static_cast<std::size_t>(layout.m); ++k)
            v[static_cast<std::size_t>(layout.r) + k] = (*x)[k];
        return v;
    };
    auto unbold_color = [&](const std::string& bold_id) -> const std::string& {
        for (const auto& [b, u] : lift.colors)
            if (b == bold_id) return u;
        throw DomainError("lift_colored_fan: bold color '" + bold_id + "' has no identification");
    };

    ColoredFan out{palette, valuation_cone, {}};
    for (const auto& bc : bold_fan) {
        ColoredCone cc;
        std::vector<QVector> gens;
        for (const auto& u : bc.rays) {
            if (u.dim() != bold_dim)
                throw DimensionMismatch("lift_colored_fan: bold ray dimension");
            gens.push_back(lift_ray(u));
        }
        for (const auto& bold_id : bc.colors) {
            const std::string& id = unbold_color(bold_id);
            cc.colors.insert(id);
            gens.push_back(palette.find(id).rho);
        }
        cc.sigma = Cone::from_generators(script, gens);
        out.maximal.push_back(std::move(cc));
    }
    return out;
}

} // namespace sphtrop
