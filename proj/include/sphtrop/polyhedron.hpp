#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "sphtrop/cone.hpp"

namespace sphtrop {

/// Inequality <normal, x> >= rhs (equality when used in the eqs list).
struct AffineConstraint {
    QVector normal;
    Rational rhs;

    friend bool operator==(const AffineConstraint& a, const AffineConstraint& b) {
        return a.normal == b.normal && a.rhs == b.rhs;
    }
    friend bool operator<(const AffineConstraint& a, const AffineConstraint& b) {
        if (a.normal != b.normal) return a.normal < b.normal;
        return a.rhs < b.rhs;
    }
};

/// Rational polyhedron, stored as the canonicalized cone over it: coordinate 0
/// of the homogenization is the level, so P = {x : (1, x) in hom}. The empty
/// polyhedron is a first-class value.
class Polyhedron {
public:
    Polyhedron() : dim_(0) {}

    static Polyhedron from_constraints(std::size_t dim, const std::vector<AffineConstraint>& ineqs,
                                       const std::vector<AffineConstraint>& eqs = {}) {
        std::vector<QVector> hi, he;
        for (const auto& c : ineqs) hi.push_back(homogenize(dim, c));
        for (const auto& c : eqs) he.push_back(homogenize(dim, c));
        hi.push_back(unit_vector(dim + 1, 0));  // level >= 0
        Polyhedron p;
        p.dim_ = dim;
        p.hom_ = Cone::from_inequalities(dim + 1, hi, he);
        return p;
    }

    static Polyhedron from_vrep(std::size_t dim, const std::vector<QVector>& points,
                                const std::vector<QVector>& rays,
                                const std::vector<QVector>& lineality = {}) {
        std::vector<QVector> gens, lins;
        for (const auto& p : points) gens.push_back(prepend(Rational(1), p));
        for (const auto& r : rays) gens.push_back(prepend(Rational(0), r));
        for (const auto& l : lineality) lins.push_back(prepend(Rational(0), l));
        Polyhedron p;
        p.dim_ = dim;
        p.hom_ = Cone::from_generators(dim + 1, gens, lins);
        return p;
    }

    /// The whole ambient space.
    static Polyhedron full_space(std::size_t dim) { return from_constraints(dim, {}, {}); }

    static Polyhedron from_cone(const Cone& c) {
        return from_vrep(c.dim(), {QVector(c.dim())}, c.rays(), c.lineality());
    }

    std::size_t dim() const { return dim_; }

    bool is_empty() const {
        for (const auto& r : hom_.rays())
            if (r[0].sign() > 0) return false;
        return true;
    }

    /// Generating points: one per extreme homogenization ray at level 1.
    std::vector<QVector> points() const { return split_vrep().first; }
    std::vector<QVector> recession_rays() const { return split_vrep().second; }
    std::vector<QVector> lineality() const {
        std::vector<QVector> out;
        for (const auto& l : hom_.lineality()) out.push_back(dehom(l));
        return out;
    }

    std::vector<AffineConstraint> inequalities() const {
        std::vector<AffineConstraint> out;
        for (const auto& f : hom_.facets()) {
            QVector n = dehom(f);
            if (n.is_zero()) continue;  // the level facet
            out.push_back({std::move(n), -f[0]});
        }
        return out;
    }

    std::vector<AffineConstraint> equalities() const {
        std::vector<AffineConstraint> out;
        for (const auto& e : hom_.span_equations()) {
            QVector n = dehom(e);
            if (n.is_zero()) continue;  // level = 0: only for empty polyhedra
            out.push_back({std::move(n), -e[0]});
        }
        return out;
    }

    bool contains(const QVector& x) const { return hom_.contains(prepend(Rational(1), x)); }

    /// {d : <a,d> >= 0 for every inequality, <c,d> = 0 for every equality}.
    Cone recession_cone() const {
        if (is_empty()) throw DomainError("recession_cone: empty polyhedron");
        std::vector<QVector> ineqs, eqs;
        for (const auto& c : inequalities()) ineqs.push_back(c.normal);
        for (const auto& c : equalities()) eqs.push_back(c.normal);
        return Cone::from_inequalities(dim_, ineqs, eqs);
    }

    /// A point in the relative interior; throws on the empty polyhedron.
    QVector relint_point() const {
        QVector acc(dim_ + 1);
        std::size_t npts = 0;
        for (const auto& r : hom_.rays()) {
            if (r[0].sign() > 0) {
                acc = acc + (Rational(1) / r[0]) * r;
                ++npts;
            } else {
                acc = acc + r;
            }
        }
        if (npts == 0) throw DomainError("relint_point: empty polyhedron");
        QVector x(dim_);
        Rational inv = Rational(1) / Rational(static_cast<long>(npts));
        for (std::size_t i = 0; i < dim_; ++i) x[i] = acc[i + 1] * inv;
        return x;
    }

    Polyhedron linear_image(const Matrix& m) const {
        if (m.cols() != dim_) throw DimensionMismatch("Polyhedron::linear_image: map domain");
        std::vector<QVector> pts, rys, lns;
        auto v = split_vrep();
        for (const auto& p : v.first) pts.push_back(m.apply(p));
        for (const auto& r : v.second) rys.push_back(m.apply(r));
        for (const auto& l : lineality()) lns.push_back(m.apply(l));
        return from_vrep(m.rows(), pts, rys, lns);
    }

    /// Exact set containment via the V-representation of other.
    bool contains_polyhedron(const Polyhedron& other) const {
        if (other.dim() != dim_) throw DimensionMismatch("contains_polyhedron: dimensions");
        if (other.is_empty()) return true;
        for (const auto& r : other.hom_.rays())
            if (!hom_.contains(r)) return false;
        for (const auto& l : other.hom_.lineality())
            if (!hom_.contains(l) || !hom_.contains(-l)) return false;
        return true;
    }

    const Cone& homogenization() const { return hom_; }

    friend Polyhedron intersect(const Polyhedron& a, const Polyhedron& b) {
        if (a.dim_ != b.dim_) throw DimensionMismatch("intersect: polyhedron dimensions");
        Polyhedron p;
        p.dim_ = a.dim_;
        p.hom_ = intersect(a.hom_, b.hom_);
        return p;
    }

    friend bool operator==(const Polyhedron& a, const Polyhedron& b) {
        return a.dim_ == b.dim_ && a.hom_ == b.hom_;
    }
    friend bool operator!=(const Polyhedron& a, const Polyhedron& b) { return !(a == b); }
    friend bool operator<(const Polyhedron& a, const Polyhedron& b) {
        if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
        return a.hom_ < b.hom_;
    }

private:
    static QVector prepend(const Rational& first, const QVector& v) {
        QVector h(v.dim() + 1);
        h[0] = first;
        for (std::size_t i = 0; i < v.dim(); ++i) h[i + 1] = v[i];
        return h;
    }
    static QVector homogenize(std::size_t dim, const AffineConstraint& c) {
        if (c.normal.dim() != dim) throw DimensionMismatch("Polyhedron: constraint dimension");
        return prepend(-c.rhs, c.normal);
    }
    QVector dehom(const QVector& h) const {
        QVector v(dim_);
        for (std::size_t i = 0; i < dim_; ++i) v[i] = h[i + 1];
        return v;
    }

    std::pair<std::vector<QVector>, std::vector<QVector>> split_vrep() const {
        std::pair<std::vector<QVector>, std::vector<QVector>> out;
        for (const auto& r : hom_.rays()) {
            if (r[0].sign() > 0) {
                out.first.push_back(dehom((Rational(1) / r[0]) * r));
            } else {
                out.second.push_back(dehom(r));
            }
        }
        return out;
    }

    std::size_t dim_;
    Cone hom_;
};

/// Intersect with a single halfspace / hyperplane, used by refinement sweeps.
inline Polyhedron clip(const Polyhedron& p, const AffineConstraint& c, bool flip,
                       bool as_equality = false) {
    AffineConstraint cc = c;
    if (flip) {
        cc.normal = -cc.normal;
        cc.rhs = -cc.rhs;
    }
    Polyhedron half = as_equality ? Polyhedron::from_constraints(p.dim(), {}, {cc})
                                  : Polyhedron::from_constraints(p.dim(), {cc}, {});
    return intersect(p, half);
}

} // namespace sphtrop
