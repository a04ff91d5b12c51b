// Acceptance suite: one pass/fail line per criterion, exact arithmetic
// throughout (tolerance zero: set equality of rational polyhedra).
#include <exception>
#include <functional>
#include <iostream>
#include <string>

#include "sphtrop/cli.hpp"
#include "sphtrop/spherical.hpp"

#include "oracles.hpp"

using namespace sphtrop;

namespace {

QVector qv(std::initializer_list<long> cs) { return QVector::of_ints(cs); }

SpaceDescriptor sl3_sl2() {
    LatticeLayout layout{2, {3, 3}, 0};
    auto f = TropicalPolynomial::of_exponents(6, {{0, 0, 1, 1, 0, 0},
                                                  {0, 1, 0, 0, 1, 0},
                                                  {1, 0, 0, 0, 0, 1},
                                                  {0, 0, 0, 0, 0, 0}});
    return {layout, {f}};
}

SpaceDescriptor punctured_plane() { return {LatticeLayout{1, {2}, 0}, {}}; }

SpaceDescriptor sl2_space() {
    LatticeLayout layout{1, {4}, 0};
    auto f = TropicalPolynomial::of_exponents(4, {{1, 0, 0, 1}, {0, 1, 1, 0}, {0, 0, 0, 0}});
    return {layout, {f}};
}

SpaceDescriptor p1xp1_cover() {
    LatticeLayout layout{2, {2, 2}, 1};
    auto f = TropicalPolynomial::of_exponents(5, {{0, 1, 1, 0, 0},
                                                  {1, 0, 0, 1, 0},
                                                  {0, 0, 0, 0, 1}});
    return {layout, {f}};
}

TropicalPolynomial line_x_plus_y_plus_1() {
    return TropicalPolynomial::of_exponents(2, {{0, 1}, {1, 0}, {0, 0}});
}
TropicalPolynomial line_x_plus_y() {
    return TropicalPolynomial::of_exponents(2, {{0, 1}, {1, 0}});
}

ColoredFan blowup_embedding(const SpaceDescriptor& d) {
    return ColoredFan{d.palette(), Cone::from_inequalities(1, {}),
                      {{Cone::from_generators(1, {qv({1})}), {}}}};
}

ColoredFan redblue_fan(const SpaceDescriptor& d) {
    // valuation cone computed from the descriptor, not hard-coded
    return ColoredFan{d.palette(), valuation_cone(d),
                      {{Cone::from_generators(2, {qv({1, 0}), qv({-2, 1})}), {"D1"}},
                       {Cone::from_generators(2, {qv({0, 1}), qv({1, -2})}), {"D2"}}}};
}

bool support_is(const PolyhedralComplex& got, const Polyhedron& expected) {
    return support_equal(got, PolyhedralComplex(expected.dim(), {expected}));
}

int failures = 0;

void criterion(int num, const std::string& what, const std::function<bool()>& check) {
    bool ok = false;
    std::string detail;
    try {
        ok = check();
    } catch (const std::exception& e) {
        detail = std::string(" (") + e.what() + ")";
    }
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << num << ": " << what << detail
              << std::endl;
    if (!ok) ++failures;
}

} // namespace

int main() {
    criterion(1, "Sl3/Sl2 valuation cone is {v1 + v2 <= 0}", [] {
        return valuation_cone(sl3_sl2()) == Cone::from_inequalities(2, {qv({-1, -1})});
    });

    criterion(2, "punctured plane: V = Q, trop(x+y+1) = (-inf,0], trop(x+y) = Q", [] {
        SpaceDescriptor d = punctured_plane();
        if (!valuation_cone(d).is_full_space()) return false;
        Polyhedron left = Polyhedron::from_constraints(1, {{qv({-1}), Rational(0)}});
        if (!support_is(trop_subvariety(d, {line_x_plus_y_plus_1()}), left)) return false;
        return support_is(trop_subvariety(d, {line_x_plus_y()}), Polyhedron::full_space(1));
    });

    criterion(3, "Sl2 valuation cone is the half-space {a <= 0}", [] {
        return valuation_cone(sl2_space()) == Cone::from_inequalities(1, {qv({-1})});
    });

    criterion(4, "P1 x P1 minus diagonal: psi image {a1+a2 <= b1}, pushforward = nonneg ray", [] {
        SpaceDescriptor d = p1xp1_cover();
        Matrix pi_star(1, 3);
        pi_star.at(0, 0) = Rational(-1);
        pi_star.at(0, 1) = Rational(-1);
        pi_star.at(0, 2) = Rational(1);
        auto res = trop_subvariety_lifted(d, pi_star, {});
        Polyhedron half = Polyhedron::from_constraints(3, {{qv({-1, -1, 1}), Rational(0)}});
        if (!support_is(res.psi_image, half)) return false;
        Polyhedron nonneg = Polyhedron::from_constraints(1, {{qv({1}), Rational(0)}});
        return support_is(res.pushed, nonneg);
    });

    criterion(5, "fan construction: blowup and P^2-minus-origin fans with their gamma rows", [] {
        SpaceDescriptor d = punctured_plane();
        ToricFan bl = build_fan_Z(blowup_embedding(d), d.layout);
        Cone c1 = Cone::from_generators(2, {qv({1, 0}), qv({1, 1})});
        Cone c2 = Cone::from_generators(2, {qv({0, 1}), qv({1, 1})});
        if (bl.maximal.size() != 2) return false;
        auto has_cone = [](const ToricFan& z, const Cone& c) {
            for (const auto& tc : z.maximal)
                if (tc.cone == c) return true;
            return false;
        };
        if (!has_cone(bl, c1) || !has_cone(bl, c2)) return false;

        ColoredFan p2{d.palette(), Cone::from_inequalities(1, {}),
                      {{Cone::from_generators(1, {qv({-1})}), {}}}};
        ToricFan zp2 = build_fan_Z(p2, d.layout);
        Cone a = Cone::from_generators(2, {qv({1, 0}), qv({-1, -1})});
        Cone b = Cone::from_generators(2, {qv({0, 1}), qv({-1, -1})});
        if (zp2.maximal.size() != 2 || !has_cone(zp2, a) || !has_cone(zp2, b)) return false;

        auto [hat_p2, gamma_p2] = build_fan_Zhat(p2, d.layout);
        if (!(gamma_p2.exponents.rows() == 1 && gamma_p2.exponents.row(0) == qv({1, 1, 1})))
            return false;
        auto [hat_bl, gamma_bl] = build_fan_Zhat(blowup_embedding(d), d.layout);
        return gamma_bl.exponents.rows() == 1 && gamma_bl.exponents.row(0) == qv({-1, -1, 1});
    });

    criterion(6, "red+blue fan: valid colored fan, not polyhedral, build rejects it", [] {
        SpaceDescriptor d = sl3_sl2();
        ColoredFan fan = redblue_fan(d);
        if (!validate_colored_fan(fan).ok()) return false;
        if (is_polyhedral(fan)) return false;
        try {
            build_fan_Z(fan, d.layout);
            return false;
        } catch (const NonPolyhedralFan&) {
            return true;
        }
    });

    criterion(7, "trop closure of G/H in the blowup: Q plus one boundary point from 3 strata", [] {
        SpaceDescriptor d = punctured_plane();
        auto res = trop_closure(d, blowup_embedding(d), {});
        ColoredCone exceptional{Cone::from_generators(1, {qv({1})}), {}};
        const auto* dense = res.trop.find(d.trivial_orbit());
        if (!dense || !support_equal(dense->cells, PolyhedralComplex::full_space(1)))
            return false;
        const auto* boundary = res.trop.find(exceptional);
        if (!boundary || boundary->cells.cells.size() != 1) return false;
        if (!(boundary->cells.cells[0] == Polyhedron::from_vrep(1, {qv({0})}, {}))) return false;
        std::size_t sources = 0;
        for (const auto& c : res.contributions)
            if (c.orbit == exceptional && !c.fan_cone.is_trivial()) ++sources;
        return sources == 3;
    });

    criterion(8, "closure commutes for Y = G/H and Y = V(x+y) in the blowup", [] {
        SpaceDescriptor d = punctured_plane();
        ColoredFan fan = blowup_embedding(d);
        if (!check_closure_commutes(d, fan, {}).equal) return false;
        return check_closure_commutes(d, fan, {line_x_plus_y()}).equal;
    });

    criterion(9, "property suites: >= 200 randomized cases each, zero failures", [] {
        // dual involution
        {
            auto rng = oracles::make_rng(2024);
            std::uniform_int_distribution<int> dims(1, 4), counts(0, 6);
            int n = 0;
            for (int iter = 0; iter < 220; ++iter) {
                std::size_t dim = dims(rng);
                auto gens = oracles::random_generators(rng, dim, counts(rng), -3, 3);
                std::vector<QVector> lin;
                if (iter % 5 == 0) lin = oracles::random_generators(rng, dim, 1, -2, 2);
                Cone c = Cone::from_generators(dim, gens, lin);
                if (!(dual_cone(dual_cone(c)) == c)) return false;
                ++n;
            }
            if (n < 200) return false;
        }
        // psi inverts the lattice inclusion
        {
            auto rng = oracles::make_rng(606);
            std::vector<LatticeLayout> layouts{
                {1, {2}, 0}, {2, {3, 3}, 0}, {2, {2, 2}, 1}, {0, {}, 2}};
            int n = 0;
            for (const auto& layout : layouts) {
                for (int iter = 0; iter < 60; ++iter) {
                    QVector v = oracles::random_int_vector(rng, layout.dim_script(), -5, 5);
                    if (!(psi_point(layout, layout.include(v)) == v)) return false;
                    ++n;
                }
            }
            if (n < 200) return false;
        }
        // psi_bar coincides with psi on the dense orbit
        {
            auto rng = oracles::make_rng(2718);
            SpaceDescriptor d = punctured_plane();
            SpaceDescriptor d2 = sl3_sl2();
            Cone trivial1 = Cone::from_generators(2, {});
            Cone trivial2 = Cone::from_generators(6, {});
            int n = 0;
            for (int iter = 0; iter < 110; ++iter) {
                QVector rep = oracles::random_int_vector(rng, 2, -5, 5);
                if (!(psi_bar_point(d.layout, rep, trivial1, d.trivial_orbit()).rep ==
                      psi_point(d.layout, rep)))
                    return false;
                QVector rep2 = oracles::random_int_vector(rng, 6, -5, 5);
                if (!(psi_bar_point(d2.layout, rep2, trivial2, d2.trivial_orbit()).rep ==
                      psi_point(d2.layout, rep2)))
                    return false;
                n += 2;
            }
            if (n < 200) return false;
        }
        // prevariety support = intersection of hypersurface supports
        {
            auto rng = oracles::make_rng(4242);
            std::uniform_int_distribution<int> nterms(2, 3), coord(-2, 2), nv(2, 3);
            int n = 0;
            for (int iter = 0; iter < 40; ++iter) {
                std::size_t vars = nv(rng);
                std::vector<TropicalPolynomial> fs;
                for (int k = 0; k < 2; ++k) {
                    std::vector<TropicalTerm> ts;
                    for (int t = 0; t < nterms(rng); ++t)
                        ts.push_back({oracles::random_int_vector(rng, vars, 0, 2),
                                      Rational(coord(rng))});
                    fs.emplace_back(vars, std::move(ts));
                }
                auto pv = prevariety(fs, vars);
                auto rng2 = oracles::make_rng(1000 + iter);
                for (const auto& w : oracles::sample_points_near(pv, rng2, 60)) {
                    bool in_all = oracles::min_attained_twice(fs[0], w) &&
                                  oracles::min_attained_twice(fs[1], w);
                    if (pv.contains_point(w) != in_all) return false;
                    ++n;
                }
            }
            if (n < 200) return false;
        }
        // face closure and the provenance intersection law on built fans
        {
            auto rng = oracles::make_rng(909);
            std::uniform_int_distribution<int> rank(1, 3), rpick(1, 2), npick(1, 2);
            int built = 0, law = 0, faces_checked = 0;
            for (int iter = 0; iter < 1400 && built < 210; ++iter) {
                int r = rpick(rng);
                LatticeLayout layout{r, {}, 0};
                Palette palette;
                for (int i = 0; i < r; ++i) {
                    layout.s.push_back(rank(rng));
                    QVector rho(r);
                    rho[static_cast<std::size_t>(i)] = Rational(1);
                    palette.colors.push_back({"D" + std::to_string(i + 1), rho, layout.s.back()});
                }
                Cone v = Cone::from_inequalities(r, {});
                std::vector<ColoredCone> cones;
                int ncones = npick(rng);
                for (int c = 0; c < ncones; ++c) {
                    auto gens = oracles::random_generators(rng, r, 2, -2, 2);
                    Cone sigma = Cone::from_generators(r, gens);
                    if (!sigma.is_strictly_convex()) continue;
                    ColoredCone cc{sigma, {}};
                    for (int i = 0; i < r; ++i) {
                        QVector rho(r);
                        rho[static_cast<std::size_t>(i)] = Rational(1);
                        bool on_ray = false;
                        for (const auto& ray : sigma.rays())
                            if (ray == rho) on_ray = true;
                        if (on_ray && (iter % 2 == 0)) cc.colors.insert(palette.colors[i].id);
                    }
                    cones.push_back(std::move(cc));
                }
                if (cones.empty()) continue;
                ColoredFan fan{palette, v, cones};
                if (!validate_colored_fan(fan).ok() || !is_polyhedral(fan)) continue;
                ToricFan z = build_fan_Z(fan, layout);
                ++built;

                // face closure: every geometric face of a maximal cone is some
                // sigma'_a' over a colored face and an admissible subset
                for (const auto& tc : z.maximal) {
                    const auto& prov = tc.provenance[0];
                    const ColoredCone& cc = fan.maximal[prov.colored_index];
                    std::vector<Cone> labelled;
                    for (const auto& tau : faces(cc.sigma)) {
                        ColoredCone cface = colored_face(cc, tau, fan.palette);
                        auto flags = colored_groups(cface, fan.palette, layout);
                        std::vector<CoordSubset> subs{{}};
                        for (std::size_t c : prov.a) {
                            std::size_t before = subs.size();
                            for (std::size_t k = 0; k < before; ++k) {
                                CoordSubset with = subs[k];
                                with.push_back(c);
                                subs.push_back(std::move(with));
                            }
                        }
                        for (auto& a : subs) {
                            std::sort(a.begin(), a.end());
                            bool admissible = true;
                            for (std::size_t g = 0; g < flags.size(); ++g) {
                                if (flags[g]) continue;
                                bool missing = false;
                                for (int jj = 0; jj < layout.s[g]; ++jj)
                                    if (std::find(a.begin(), a.end(),
                                                  layout.v_coord(
                                                      g, static_cast<std::size_t>(jj))) ==
                                        a.end())
                                        missing = true;
                                if (!missing) admissible = false;
                            }
                            if (!admissible) continue;
                            Cone built_face = build_sigma_a(cface, a, layout, fan.palette);
                            if (!is_face_of(built_face, tc.cone)) return false;
                            labelled.push_back(std::move(built_face));
                        }
                    }
                    for (const auto& f : faces(tc.cone)) {
                        if (std::find(labelled.begin(), labelled.end(), f) == labelled.end())
                            return false;
                        ++faces_checked;
                    }
                }

                // provenance intersection law
                for (std::size_t i = 0; i < z.maximal.size(); ++i) {
                    for (std::size_t j = i + 1; j < z.maximal.size(); ++j) {
                        const auto& pi = z.maximal[i].provenance[0];
                        const auto& pj = z.maximal[j].provenance[0];
                        Cone tau = intersect(fan.maximal[pi.colored_index].sigma,
                                             fan.maximal[pj.colored_index].sigma);
                        if (!is_face_of(tau, fan.maximal[pi.colored_index].sigma) ||
                            !is_face_of(tau, fan.maximal[pj.colored_index].sigma))
                            continue;
                        ColoredCone shared =
                            colored_face(fan.maximal[pi.colored_index], tau, fan.palette);
                        CoordSubset meet_a;
                        std::set_intersection(pi.a.begin(), pi.a.end(), pj.a.begin(), pj.a.end(),
                                              std::back_inserter(meet_a));
                        auto flags = colored_groups(shared, fan.palette, layout);
                        bool admissible = true;
                        for (std::size_t g = 0; g < flags.size(); ++g) {
                            if (flags[g]) continue;
                            bool missing = false;
                            for (int jj = 0; jj < layout.s[g]; ++jj)
                                if (std::find(meet_a.begin(), meet_a.end(),
                                              layout.v_coord(g, static_cast<std::size_t>(jj))) ==
                                    meet_a.end())
                                    missing = true;
                            if (!missing) admissible = false;
                        }
                        if (!admissible) continue;
                        if (!(intersect(z.maximal[i].cone, z.maximal[j].cone) ==
                              build_sigma_a(shared, meet_a, layout, fan.palette)))
                            return false;
                        ++law;
                    }
                }
            }
            if (built < 200 || faces_checked < 200 || law < 200) return false;
        }
        return true;
    });

    std::cout << (failures == 0 ? "acceptance: all criteria passed"
                                : "acceptance: " + std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
