#include <catch2/catch.hpp>

#include "sphtrop/colored_fan.hpp"

#include "oracles.hpp"

using namespace sphtrop;

namespace {

QVector qv(std::initializer_list<long> cs) { return QVector::of_ints(cs); }

// Combinatorial data of Sl3/Sl2: two colors with rho the coordinate rays and
// valuation cone {v1 + v2 <= 0}.
Palette sl3_palette() {
    return Palette{{{"V(x3)", qv({1, 0}), 3}, {"V(y1)", qv({0, 1}), 3}}};
}
Cone sl3_valuation_cone() { return Cone::from_inequalities(2, {qv({-1, -1})}); }

ColoredCone red_cone() {
    return ColoredCone{Cone::from_generators(2, {qv({1, 0}), qv({-2, 1})}), {"V(x3)"}};
}
ColoredCone blue_cone() {
    return ColoredCone{Cone::from_generators(2, {qv({0, 1}), qv({1, -2})}), {"V(y1)"}};
}

} // namespace

TEST_CASE("validate_colored_cone on the Sl3/Sl2 example") {
    Palette p = sl3_palette();
    Cone v = sl3_valuation_cone();

    CHECK(validate_colored_cone(red_cone(), v, p, true).ok());
    CHECK(validate_colored_cone(blue_cone(), v, p, true).ok());

    // Without its color the red cone is not generated by sigma ∩ V alone:
    // rho(V(x3)) = (1,0) lies outside V.
    CHECK(dot(qv({-1, -1}), qv({1, 0})).sign() < 0);
    ColoredCone colorless{red_cone().sigma, {}};
    auto report = validate_colored_cone(colorless, v, p);
    CHECK(!report.ok());
    // oracle for condition (i): cone(generators of sigma ∩ V) is a proper subcone
    Cone meet = intersect(colorless.sigma, v);
    Cone generated = Cone::from_generators(2, meet.generators_with_lineality());
    CHECK(!(generated == colorless.sigma));

    ColoredCone trivial{Cone::from_generators(2, {}), {}};
    auto tr = validate_colored_cone(trivial, v, p, true);
    CHECK(tr.ok());
    CHECK(trivial.sigma.is_strictly_convex());

    ColoredCone unknown{red_cone().sigma, {"V(z9)"}};
    CHECK_THROWS_AS(validate_colored_cone(unknown, v, p), DomainError);
}

TEST_CASE("colored_face") {
    Palette p = sl3_palette();
    ColoredCone red = red_cone();

    Cone origin = Cone::from_generators(2, {});
    ColoredCone f0 = colored_face(red, origin, p);
    CHECK(f0.sigma.is_trivial());
    CHECK(f0.colors.empty());

    ColoredCone self = colored_face(red, red.sigma, p);
    CHECK(self == red);

    Cone color_ray = Cone::from_generators(2, {qv({1, 0})});
    ColoredCone fr = colored_face(red, color_ray, p);
    CHECK(fr.sigma == color_ray);
    CHECK(fr.colors == std::set<std::string>{"V(x3)"});

    Cone not_a_face = Cone::from_generators(2, {qv({1, 1})});
    CHECK_THROWS_AS(colored_face(red, not_a_face, p), DomainError);
}

TEST_CASE("validate_colored_fan accepts the red+blue fan") {
    ColoredFan fan{sl3_palette(), sl3_valuation_cone(), {red_cone(), blue_cone()}};
    auto report = validate_colored_fan(fan);
    INFO(report.describe());
    CHECK(report.ok());

    // duplicate maximal cones are deduplicated, not an error
    ColoredFan doubled{sl3_palette(), sl3_valuation_cone(),
                       {red_cone(), red_cone(), blue_cone()}};
    CHECK(validate_colored_fan(doubled).ok());
}

TEST_CASE("validate_colored_fan rejects overlap inside the valuation cone") {
    // horospherical-style setup: V is the whole plane, no colors involved
    Palette p{};
    Cone v = Cone::from_inequalities(2, {});
    ColoredCone c1{Cone::from_generators(2, {qv({1, 0}), qv({0, 1})}), {}};
    ColoredCone c2{Cone::from_generators(2, {qv({1, 1}), qv({1, -1})}), {}};
    ColoredFan fan{p, v, {c1, c2}};
    auto report = validate_colored_fan(fan);
    REQUIRE(!report.ok());
    // some witness is an exactly-computed point interior to both maximal
    // cones and inside V (face pairs contribute further witnesses)
    bool witnessed = false;
    for (const auto& issue : report.issues) {
        if (!issue.witness) continue;
        CHECK(v.contains(*issue.witness));
        if (c1.sigma.relint_contains(*issue.witness) && c2.sigma.relint_contains(*issue.witness))
            witnessed = true;
    }
    CHECK(witnessed);
}

TEST_CASE("is_polyhedral") {
    ColoredFan redblue{sl3_palette(), sl3_valuation_cone(), {red_cone(), blue_cone()}};
    CHECK(validate_colored_fan(redblue).ok());
    CHECK(!is_polyhedral(redblue));

    // symmetric in the cone order
    ColoredFan bluered{sl3_palette(), sl3_valuation_cone(), {blue_cone(), red_cone()}};
    CHECK(is_polyhedral(bluered) == is_polyhedral(redblue));

    ColoredFan red_only{sl3_palette(), sl3_valuation_cone(), {red_cone()}};
    CHECK(is_polyhedral(red_only));

    // blowup of C^2: one uncolored ray in a one-dimensional lattice
    Palette punctured{{{"V(y)", qv({1}), 2}}};
    Cone full_line = Cone::from_inequalities(1, {});
    ColoredCone exceptional{Cone::from_generators(1, {qv({1})}), {}};
    ColoredFan blowup{punctured, full_line, {exceptional}};
    CHECK(validate_colored_fan(blowup).ok());
    CHECK(is_polyhedral(blowup));
}

TEST_CASE("face closure of colored fans is literally assertable") {
    ColoredFan fan{sl3_palette(), sl3_valuation_cone(), {red_cone(), blue_cone()}};
    auto members = all_colored_faces(fan);
    for (const auto& cc : members) {
        for (const auto& f : colored_faces(cc, fan.palette)) {
            CHECK(std::find(members.begin(), members.end(), f) != members.end());
        }
    }
}
