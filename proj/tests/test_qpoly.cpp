#include <catch2/catch.hpp>

#include "sphtrop/cone.hpp"
#include "sphtrop/complex.hpp"
#include "sphtrop/polyhedron.hpp"

#include "oracles.hpp"

using namespace sphtrop;

namespace {

QVector qv(std::initializer_list<long> cs) { return QVector::of_ints(cs); }

Cone cone2(std::initializer_list<long> a, std::initializer_list<long> b) {
    return Cone::from_generators(2, {qv(a), qv(b)});
}

} // namespace

TEST_CASE("Rational normalization and arithmetic") {
    Rational q(BigInt(6), BigInt(-4));
    CHECK(q.num() == -3);
    CHECK(q.den() == 2);
    CHECK(Rational(0) == Rational(BigInt(0), BigInt(7)));
    CHECK(Rational(BigInt(0), BigInt(7)).den() == 1);
    CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
    CHECK((Rational(2, 3) * Rational(9, 4)) == Rational(3, 2));
    CHECK((Rational(1) / Rational(-2)).str() == "-1/2");
    CHECK_THROWS_AS(Rational(1) / Rational(0), DomainError);
    CHECK(Rational::parse("22/7") == Rational(22, 7));
    CHECK(Rational::parse("-5") == Rational(-5));
    CHECK_THROWS_AS(Rational::parse("x"), SchemaError);

    auto rng = oracles::make_rng(11);
    std::uniform_int_distribution<int> d(-40, 40);
    for (int i = 0; i < 300; ++i) {
        int a = d(rng), b = d(rng);
        if (b == 0) continue;
        Rational r{BigInt(a), BigInt(b)};
        CHECK(r.den() >= 1);
        BigInt absnum = r.num() < 0 ? BigInt(-r.num()) : r.num();
        CHECK((absnum == 0 || boost::multiprecision::gcd(absnum, r.den()) == 1));
    }
}

TEST_CASE("ExtRational follows the tropical conventions") {
    ExtRational inf = ExtRational::infinity();
    ExtRational two(Rational(2));
    CHECK((inf + two).is_inf());
    CHECK((two + inf).is_inf());
    CHECK(min(inf, two) == two);
    CHECK(min(two, inf) == two);
    CHECK(two < inf);
    CHECK(!(inf < inf));
    CHECK(inf == ExtRational::infinity());
    CHECK(ExtRational::parse("inf").is_inf());
    CHECK(ExtRational::parse("3/2") == ExtRational(Rational(3, 2)));
}

TEST_CASE("QVector primitive scaling") {
    QVector v{Rational(2, 3), Rational(-4, 3)};
    CHECK(v.primitive() == qv({1, -2}));
    CHECK(v.primitive_signless() == qv({1, -2}));
    CHECK(QVector{Rational(-1, 2), Rational(0)}.primitive_signless() == qv({1, 0}));
    CHECK(QVector(3).primitive() == QVector(3));
}

TEST_CASE("rref, solve and quotient projection") {
    auto basis = canonical_subspace_basis({qv({1, 1, 0}), qv({2, 2, 0}), qv({0, 0, 3})});
    REQUIRE(basis.size() == 2);
    CHECK(basis[0] == qv({1, 1, 0}));
    CHECK(basis[1] == qv({0, 0, 1}));

    Matrix m = Matrix::from_rows({qv({1, 2}), qv({3, 4})});
    auto x = solve(m, qv({5, 6}));
    REQUIRE(x.has_value());
    CHECK(m.apply(*x) == qv({5, 6}));
    Matrix sing = Matrix::from_rows({qv({1, 1}), qv({2, 2})});
    CHECK(!solve(sing, qv({1, 3})).has_value());

    Matrix p = quotient_projection(2, {qv({1, 1})});
    CHECK(p.apply(qv({3, 5})) == qv({0, 2}));
    CHECK(p.apply(qv({1, 1})) == qv({0, 0}));
}

TEST_CASE("dual_cone on basic cones") {
    Cone quadrant = cone2({1, 0}, {0, 1});
    CHECK(dual_cone(quadrant) == quadrant);  // self-dual

    Cone origin = Cone::from_generators(2, {});
    CHECK(dual_cone(origin).is_full_space());
    CHECK(dual_cone(origin).cone_dim() == 2);

    // cone((1,0),(1,1)): facets found independently by rotating generators.
    Cone c = cone2({1, 0}, {1, 1});
    auto expected_facets = oracles::two_d_facets_by_rotation(qv({1, 0}), qv({1, 1}));
    Cone dual = dual_cone(c);
    CHECK(dual.rays() == expected_facets);
    CHECK(dual == cone2({0, 1}, {1, -1}));
}

TEST_CASE("dual_cone is an involution on random cones") {
    auto rng = oracles::make_rng(2024);
    std::uniform_int_distribution<int> dims(1, 4), counts(0, 6);
    int checked = 0;
    for (int iter = 0; iter < 220; ++iter) {
        std::size_t dim = dims(rng);
        auto gens = oracles::random_generators(rng, dim, counts(rng), -3, 3);
        std::vector<QVector> lin;
        if (iter % 5 == 0) lin = oracles::random_generators(rng, dim, 1, -2, 2);
        Cone c = Cone::from_generators(dim, gens, lin);
        CHECK(dual_cone(dual_cone(c)) == c);
        ++checked;
    }
    CHECK(checked >= 200);
}

TEST_CASE("the two constructors describe the same cones") {
    auto rng = oracles::make_rng(40400);
    std::uniform_int_distribution<int> dims(1, 4), counts(0, 6);
    for (int iter = 0; iter < 120; ++iter) {
        std::size_t dim = dims(rng);
        Cone c = Cone::from_generators(dim, oracles::random_generators(rng, dim, counts(rng), -3, 3));
        CHECK(Cone::from_inequalities(dim, c.facets(), c.span_equations()) == c);
        CHECK(Cone::from_generators(dim, c.rays(), c.lineality()) == c);
        QVector ri = c.relint_point();
        CHECK(c.relint_contains(ri));
    }
}

TEST_CASE("faces of simple cones") {
    Cone quadrant = cone2({1, 0}, {0, 1});
    auto fs = faces(quadrant);
    CHECK(fs.size() == 4);  // {0}, two rays, the cone

    Cone ray = Cone::from_generators(2, {qv({1, 2})});
    CHECK(faces(ray).size() == 2);

    Cone origin = Cone::from_generators(2, {});
    CHECK(faces(origin).size() == 1);
}

TEST_CASE("faces are closed under intersection and match the oracle count") {
    auto rng = oracles::make_rng(77);
    std::uniform_int_distribution<int> dims(2, 3), counts(1, 5);
    int checked = 0;
    for (int iter = 0; iter < 210; ++iter) {
        std::size_t dim = dims(rng);
        auto gens = oracles::random_generators(rng, dim, counts(rng), -1, 1);
        Cone c = Cone::from_generators(dim, gens);
        if (!c.is_strictly_convex()) continue;  // oracle counts tight generator sets
        auto fs = faces(c);
        std::size_t oracle = oracles::face_count_by_supporting_hyperplanes(
            c.rays(), dim, /*box=*/dim == 2 ? 8 : 12);
        CHECK(fs.size() == oracle);
        for (std::size_t i = 0; i < fs.size(); ++i) {
            for (std::size_t j = i; j < fs.size(); ++j) {
                Cone meet = intersect(fs[i], fs[j]);
                CHECK(std::find(fs.begin(), fs.end(), meet) != fs.end());
            }
        }
        ++checked;
    }
    CHECK(checked >= 150);
}

TEST_CASE("generator canonicalization handles redundancy and hidden lineality") {
    // duplicate and interior generators disappear
    Cone c = Cone::from_generators(2, {qv({1, 0}), qv({1, 0}), qv({1, 1}), qv({0, 1})});
    CHECK(c == cone2({1, 0}, {0, 1}));

    // opposite rays collapse into lineality
    Cone line = Cone::from_generators(2, {qv({2, 0}), qv({-1, 0})});
    CHECK(line.rays().empty());
    REQUIRE(line.lineality().size() == 1);
    CHECK(line.lineality()[0] == qv({1, 0}));

    // a halfplane assembled from three rays
    Cone half = Cone::from_generators(2, {qv({1, 0}), qv({0, 1}), qv({-1, 0})});
    CHECK(half == Cone::from_inequalities(2, {qv({0, 1})}));

    // zero generators are ignored
    Cone z = Cone::from_generators(2, {QVector(2), qv({1, 0})});
    CHECK(z == Cone::from_generators(2, {qv({1, 0})}));
}

TEST_CASE("intersect on cones") {
    Cone quadrant = cone2({1, 0}, {0, 1});
    CHECK(intersect(quadrant, quadrant) == quadrant);  // idempotence

    Cone rx = Cone::from_generators(2, {qv({1, 0})});
    Cone ry = Cone::from_generators(2, {qv({0, 1})});
    CHECK(intersect(rx, ry).is_trivial());

    CHECK_THROWS_AS(intersect(rx, Cone::from_generators(3, {qv({1, 0, 0})})),
                    DimensionMismatch);

    auto rng = oracles::make_rng(5150);
    std::uniform_int_distribution<int> dims(2, 3), counts(1, 4);
    for (int iter = 0; iter < 60; ++iter) {
        std::size_t dim = dims(rng);
        Cone a = Cone::from_generators(dim, oracles::random_generators(rng, dim, counts(rng), -2, 2));
        Cone b = Cone::from_generators(dim, oracles::random_generators(rng, dim, counts(rng), -2, 2));
        Cone c = Cone::from_generators(dim, oracles::random_generators(rng, dim, counts(rng), -2, 2));
        CHECK(intersect(a, b) == intersect(b, a));
        CHECK(intersect(intersect(a, b), c) == intersect(a, intersect(b, c)));
        CHECK(intersect(a, a) == a);
    }
}

TEST_CASE("relint_contains") {
    Cone quadrant = cone2({1, 0}, {0, 1});
    CHECK(quadrant.relint_contains(qv({1, 1})));
    CHECK(!quadrant.relint_contains(qv({1, 0})));  // boundary
    Cone diag = Cone::from_generators(2, {qv({1, 1})});
    CHECK(diag.relint_contains(qv({1, 1})));
    CHECK(!diag.relint_contains(qv({0, 0})));
    Cone origin = Cone::from_generators(2, {});
    CHECK(origin.relint_contains(qv({0, 0})));
    CHECK(!origin.relint_contains(qv({1, 0})));
}

TEST_CASE("linear_image of cones") {
    Cone quadrant = cone2({1, 0}, {0, 1});
    CHECK(linear_image(Matrix::identity(2), quadrant) == quadrant);

    Matrix proj(1, 2);
    proj.at(0, 0) = Rational(1);
    CHECK(linear_image(proj, quadrant) == Cone::from_generators(1, {qv({1})}));

    Matrix diag(2, 1);
    diag.at(0, 0) = Rational(1);
    diag.at(1, 0) = Rational(1);
    CHECK(linear_image(diag, Cone::from_generators(1, {qv({1})})) ==
          Cone::from_generators(2, {qv({1, 1})}));

    auto rng = oracles::make_rng(31337);
    for (int iter = 0; iter < 60; ++iter) {
        Cone c = Cone::from_generators(3, oracles::random_generators(rng, 3, 4, -2, 2));
        Matrix a(2, 3), b(3, 3);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 3; ++j) a.at(i, j) = oracles::random_int_vector(rng, 1, -2, 2)[0];
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) b.at(i, j) = oracles::random_int_vector(rng, 1, -2, 2)[0];
        CHECK(linear_image(a.compose(b), c) == linear_image(a, linear_image(b, c)));
    }
}

TEST_CASE("polyhedra: emptiness, recession cones") {
    auto half = [](long a, long rhs) {
        return Polyhedron::from_constraints(1, {{qv({a}), Rational(rhs)}});
    };
    Polyhedron ge1 = half(1, 1);
    Polyhedron le0 = half(-1, 0);
    CHECK(intersect(ge1, le0).is_empty());
    CHECK(!ge1.is_empty());

    // bounded polytope -> trivial recession cone
    Polyhedron box = Polyhedron::from_constraints(
        2, {{qv({1, 0}), Rational(0)}, {qv({-1, 0}), Rational(-1)},
            {qv({0, 1}), Rational(0)}, {qv({0, -1}), Rational(-1)}});
    CHECK(box.recession_cone().is_trivial());

    CHECK(ge1.recession_cone() == Cone::from_generators(1, {qv({1})}));

    Polyhedron hp = Polyhedron::from_constraints(2, {{qv({1, 1}), Rational(0)}});
    CHECK(hp.recession_cone() == Cone::from_inequalities(2, {qv({1, 1})}));

    CHECK_THROWS_AS(intersect(ge1, le0).recession_cone(), DomainError);

    auto rng = oracles::make_rng(99);
    int checked = 0;
    for (int iter = 0; iter < 120 && checked < 60; ++iter) {
        std::vector<AffineConstraint> ca, cb;
        for (int k = 0; k < 3; ++k) {
            ca.push_back({oracles::random_int_vector(rng, 2, -2, 2),
                          oracles::random_int_vector(rng, 1, -2, 2)[0]});
            cb.push_back({oracles::random_int_vector(rng, 2, -2, 2),
                          oracles::random_int_vector(rng, 1, -2, 2)[0]});
        }
        Polyhedron a = Polyhedron::from_constraints(2, ca);
        Polyhedron b = Polyhedron::from_constraints(2, cb);
        Polyhedron meet = intersect(a, b);
        if (a.is_empty() || b.is_empty() || meet.is_empty()) continue;
        CHECK(meet.recession_cone() == intersect(a.recession_cone(), b.recession_cone()));
        ++checked;
    }
    CHECK(checked >= 40);
}

TEST_CASE("polyhedron vrep/hrep round trips and relint points") {
    Polyhedron p = Polyhedron::from_vrep(2, {qv({0, 0}), qv({1, 0})}, {qv({0, 1})});
    CHECK(p.contains(qv({0, 0})));
    CHECK(p.contains(qv({1, 5})));
    CHECK(!p.contains(qv({2, 0})));
    QVector ri = p.relint_point();
    CHECK(p.contains(ri));
    for (const auto& in : p.inequalities()) CHECK(dot(in.normal, ri) > in.rhs);

    Polyhedron again = Polyhedron::from_constraints(2, p.inequalities(), p.equalities());
    CHECK(again == p);
}

TEST_CASE("common refinement of complexes") {
    // one complex refined with the full space is itself
    Polyhedron cell = Polyhedron::from_constraints(
        2, {{qv({1, 0}), Rational(0)}, {qv({0, 1}), Rational(0)}});
    PolyhedralComplex quad(2, {cell});
    auto same = common_refinement({quad, PolyhedralComplex::full_space(2)});
    CHECK(same == quad);

    // two transverse lines meet in a point
    Polyhedron lx = Polyhedron::from_constraints(2, {}, {{qv({0, 1}), Rational(0)}});
    Polyhedron ly = Polyhedron::from_constraints(2, {}, {{qv({1, 0}), Rational(0)}});
    auto pt = common_refinement({PolyhedralComplex(2, {lx}), PolyhedralComplex(2, {ly})});
    REQUIRE(pt.cells.size() == 1);
    CHECK(pt.cells[0] == Polyhedron::from_vrep(2, {qv({0, 0})}, {}));

    CHECK(common_refinement({quad, quad}) == quad);  // idempotence
}

TEST_CASE("support containment splits along the arrangement") {
    // union of the two halves covers the plane even though neither cell does
    Polyhedron left = Polyhedron::from_constraints(2, {{qv({-1, 0}), Rational(0)}});
    Polyhedron right = Polyhedron::from_constraints(2, {{qv({1, 0}), Rational(0)}});
    PolyhedralComplex both(2, {left, right});
    CHECK(support_contains(both, Polyhedron::full_space(2)));
    CHECK(support_equal(both, PolyhedralComplex::full_space(2)));

    PolyhedralComplex only_left(2, {left});
    auto witness = support_covers(only_left.cells, Polyhedron::full_space(2));
    REQUIRE(witness.has_value());
    CHECK(!left.contains(*witness));
}

TEST_CASE("strict feasibility witnesses") {
    // relint of the quadrant meets the halfplane x+y <= 0 only at... nowhere
    Cone quadrant = cone2({1, 0}, {0, 1});
    Cone lower = Cone::from_inequalities(2, {qv({-1, -1})});
    CHECK(!relint_intersection_point(quadrant, quadrant, &lower).has_value());

    Cone diag = Cone::from_generators(2, {qv({1, 1})});
    auto w = relint_intersection_point(diag, quadrant);
    REQUIRE(w.has_value());
    CHECK(diag.relint_contains(*w));
    CHECK(quadrant.relint_contains(*w));

    // trivial cone: relint({0}) = {0} lies inside any cone containing 0
    Cone origin = Cone::from_generators(2, {});
    auto z = relint_intersection_point(origin, origin, &lower);
    REQUIRE(z.has_value());
    CHECK(z->is_zero());
}
