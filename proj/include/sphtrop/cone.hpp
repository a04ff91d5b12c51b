#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "sphtrop/linalg.hpp"

namespace sphtrop {

namespace detail {

/// Set of constraint indices a ray satisfies with equality.
class TightSet {
public:
    explicit TightSet(std::size_t n = 0) : bits_((n + 63) / 64, 0) {}

    void set(std::size_t i) { bits_[i / 64] |= std::uint64_t(1) << (i % 64); }

    TightSet intersect(const TightSet& o) const {
        TightSet r(*this);
        for (std::size_t k = 0; k < bits_.size(); ++k) r.bits_[k] &= o.bits_[k];
        return r;
    }

    bool subset_of(const TightSet& o) const {
        for (std::size_t k = 0; k < bits_.size(); ++k)
            if (bits_[k] & ~o.bits_[k]) return false;
        return true;
    }

    bool operator==(const TightSet& o) const { return bits_ == o.bits_; }

private:
    std::vector<std::uint64_t> bits_;
};

struct DDRay {
    QVector v;
    TightSet tight;
};

} // namespace detail

/// V-representation produced by the double description method: the cone is
/// cone(rays) + span(lineality).
struct DDPair {
    std::vector<QVector> rays;
    std::vector<QVector> lineality;
};

/// Double description method. Computes extreme rays and a lineality basis of
/// {x : <a,x> >= 0 for a in ineqs, <e,x> = 0 for e in eqs}, inserting one
/// constraint at a time and combining adjacent rays across the new hyperplane.
inline DDPair dual_description(std::size_t dim, const std::vector<QVector>& ineqs,
                               const std::vector<QVector>& eqs) {
    using detail::DDRay;
    using detail::TightSet;

    const std::size_t total = ineqs.size() + eqs.size();
    std::vector<QVector> lin;
    lin.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) lin.push_back(unit_vector(dim, i));
    std::vector<DDRay> rays;

    std::size_t idx = 0;
    auto insert = [&](const QVector& a, bool is_eq) {
        if (a.dim() != dim) throw DimensionMismatch("dual_description: constraint dimension");
        // Pivot on a lineality vector not orthogonal to the new hyperplane.
        std::size_t pivot = lin.size();
        for (std::size_t i = 0; i < lin.size(); ++i) {
            if (!dot(a, lin[i]).is_zero()) {
                pivot = i;
                break;
            }
        }
        if (pivot < lin.size()) {
            QVector l0 = lin[pivot];
            Rational d0 = dot(a, l0);
            if (!is_eq && d0.sign() < 0) {
                l0 = -l0;
                d0 = -d0;
            }
            std::vector<QVector> new_lin;
            new_lin.reserve(lin.size() - 1);
            for (std::size_t i = 0; i < lin.size(); ++i) {
                if (i == pivot) continue;
                QVector l = lin[i] - (dot(a, lin[i]) / d0) * l0;
                new_lin.push_back(l.primitive_signless());
            }
            lin = std::move(new_lin);
            std::vector<DDRay> projected;
            projected.reserve(rays.size());
            for (DDRay& r : rays) {
                r.v = (r.v - (dot(a, r.v) / d0) * l0).primitive();
                r.tight.set(idx);
                if (!r.v.is_zero()) projected.push_back(std::move(r));
            }
            rays = std::move(projected);
            if (!is_eq) {
                DDRay nr{l0.primitive(), TightSet(total)};
                for (std::size_t c = 0; c < idx; ++c) nr.tight.set(c);
                rays.push_back(std::move(nr));
            }
        } else {
            std::vector<DDRay> pos, zero, neg;
            for (DDRay& r : rays) {
                int s = dot(a, r.v).sign();
                if (s > 0) {
                    pos.push_back(std::move(r));
                } else if (s < 0) {
                    neg.push_back(std::move(r));
                } else {
                    r.tight.set(idx);
                    zero.push_back(std::move(r));
                }
            }
            rays.clear();
            for (auto& r : pos) rays.push_back(std::move(r));
            for (auto& r : neg) rays.push_back(std::move(r));
            // The adjacency scan must see the full minimal pair: pos+neg live
            // in rays, the zero rays in kept.
            std::vector<DDRay> kept = std::move(zero);
            std::vector<DDRay> combos;
            for (std::size_t i = 0; i < pos.size(); ++i) {
                // pos/neg were moved from; use the stable copies inside rays.
                const DDRay& p = rays[i];
                for (std::size_t j = 0; j < neg.size(); ++j) {
                    const DDRay& q = rays[pos.size() + j];
                    bool adj = true;
                    TightSet common = p.tight.intersect(q.tight);
                    for (const DDRay& r : rays) {
                        if (&r == &p || &r == &q) continue;
                        if (common.subset_of(r.tight)) {
                            adj = false;
                            break;
                        }
                    }
                    for (const DDRay& r : kept) {
                        if (!adj) break;
                        if (common.subset_of(r.tight)) adj = false;
                    }
                    if (!adj) continue;
                    DDRay w;
                    w.v = (dot(a, p.v) * q.v - dot(a, q.v) * p.v).primitive();
                    w.tight = common;
                    w.tight.set(idx);
                    combos.push_back(std::move(w));
                }
            }
            std::vector<DDRay> next;
            if (!is_eq) {
                for (std::size_t i = 0; i < pos.size(); ++i) next.push_back(std::move(rays[i]));
            }
            for (auto& r : kept) next.push_back(std::move(r));
            for (auto& r : combos) next.push_back(std::move(r));
            rays = std::move(next);
        }
        ++idx;
    };

    for (const auto& e : eqs) insert(e, true);
    for (const auto& a : ineqs) insert(a, false);

    // Minimality sweep: drop rays whose tight set is properly dominated, and
    // exact duplicates.
    std::vector<bool> drop(rays.size(), false);
    for (std::size_t i = 0; i < rays.size(); ++i) {
        for (std::size_t j = 0; j < rays.size() && !drop[i]; ++j) {
            if (i == j || drop[j]) continue;
            if (!rays[i].tight.subset_of(rays[j].tight)) continue;
            if (rays[j].tight.subset_of(rays[i].tight)) {
                if (j < i && rays[i].v == rays[j].v) drop[i] = true;
            } else {
                drop[i] = true;
            }
        }
    }
    DDPair out;
    for (std::size_t i = 0; i < rays.size(); ++i)
        if (!drop[i]) out.rays.push_back(std::move(rays[i].v));
    out.lineality = std::move(lin);
    return out;
}

/// Rational polyhedral cone with canonical dual pair of representations.
///
/// V side: extreme rays (primitive, reduced modulo the lineality space,
/// lexicographically sorted) and an echelon lineality basis. H side: facet
/// normals (primitive, reduced modulo the span equations, sorted) and an
/// echelon basis of span(cone)^perp. Two cones are equal as sets iff their
/// representations are componentwise equal.
class Cone {
public:
    Cone() : dim_(0) {}

    static Cone from_generators(std::size_t dim, const std::vector<QVector>& gens,
                                const std::vector<QVector>& lin = {}) {
        check_dims(dim, gens, "generator");
        check_dims(dim, lin, "lineality generator");
        Cone c;
        c.dim_ = dim;
        DDPair dual = dual_description(dim, gens, lin);
        c.set_h_side(dual);
        DDPair primal = dual_description(dim, c.facets_, c.span_eqs_);
        c.set_v_side(primal);
        return c;
    }

    static Cone from_inequalities(std::size_t dim, const std::vector<QVector>& ineqs,
                                  const std::vector<QVector>& eqs = {}) {
        check_dims(dim, ineqs, "inequality normal");
        check_dims(dim, eqs, "equation normal");
        Cone c;
        c.dim_ = dim;
        DDPair primal = dual_description(dim, ineqs, eqs);
        c.set_v_side(primal);
        DDPair dual = dual_description(dim, c.rays_, c.lineality_);
        c.set_h_side(dual);
        return c;
    }

    std::size_t dim() const { return dim_; }
    const std::vector<QVector>& rays() const { return rays_; }
    const std::vector<QVector>& lineality() const { return lineality_; }
    const std::vector<QVector>& facets() const { return facets_; }
    const std::vector<QVector>& span_equations() const { return span_eqs_; }

    /// Dimension of the cone as a set (dimension of its linear span).
    std::size_t cone_dim() const { return dim_ - span_eqs_.size(); }

    bool is_trivial() const { return rays_.empty() && lineality_.empty(); }
    bool is_strictly_convex() const { return lineality_.empty(); }
    bool is_full_space() const { return facets_.empty() && span_eqs_.empty(); }

    bool contains(const QVector& v) const {
        require_dim(v);
        for (const auto& e : span_eqs_)
            if (!dot(e, v).is_zero()) return false;
        for (const auto& f : facets_)
            if (dot(f, v).sign() < 0) return false;
        return true;
    }

    /// True iff v lies in span(cone) and satisfies every facet strictly.
    /// For the trivial cone this means v = 0.
    bool relint_contains(const QVector& v) const {
        require_dim(v);
        for (const auto& e : span_eqs_)
            if (!dot(e, v).is_zero()) return false;
        for (const auto& f : facets_)
            if (dot(f, v).sign() <= 0) return false;
        return true;
    }

    /// A point in the relative interior (the origin for linear subspaces).
    QVector relint_point() const {
        QVector p(dim_);
        for (const auto& r : rays_) p = p + r;
        return p;
    }

    /// All generators of the cone as a set: rays plus +/- lineality.
    std::vector<QVector> generators_with_lineality() const {
        std::vector<QVector> g = rays_;
        for (const auto& l : lineality_) {
            g.push_back(l);
            g.push_back(-l);
        }
        return g;
    }

    friend bool operator==(const Cone& a, const Cone& b) {
        return a.dim_ == b.dim_ && a.lineality_ == b.lineality_ && a.rays_ == b.rays_;
    }
    friend bool operator!=(const Cone& a, const Cone& b) { return !(a == b); }
    friend bool operator<(const Cone& a, const Cone& b) {
        if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
        if (a.lineality_ != b.lineality_) return a.lineality_ < b.lineality_;
        return a.rays_ < b.rays_;
    }

private:
    static void check_dims(std::size_t dim, const std::vector<QVector>& vs, const char* what) {
        for (const auto& v : vs)
            if (v.dim() != dim)
                throw DimensionMismatch(std::string("Cone: ") + what + " has wrong dimension");
    }
    void require_dim(const QVector& v) const {
        if (v.dim() != dim_) throw DimensionMismatch("Cone: point has wrong dimension");
    }

    void set_v_side(const DDPair& p) {
        lineality_ = canonical_subspace_basis(p.lineality);
        Rref lr = rref(lineality_);
        rays_ = canonical_rays(p.rays, lr);
    }
    void set_h_side(const DDPair& d) {
        span_eqs_ = canonical_subspace_basis(d.lineality);
        Rref sr = rref(span_eqs_);
        facets_ = canonical_rays(d.rays, sr);
    }

    static std::vector<QVector> canonical_rays(const std::vector<QVector>& raw, const Rref& mod) {
        std::vector<QVector> out;
        out.reserve(raw.size());
        for (const auto& r : raw) {
            QVector red = reduce_mod_subspace(r, mod).primitive();
            if (!red.is_zero()) out.push_back(std::move(red));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    std::size_t dim_;
    std::vector<QVector> rays_;
    std::vector<QVector> lineality_;
    std::vector<QVector> facets_;
    std::vector<QVector> span_eqs_;
};

/// {u : <u,v> >= 0 for all v in c}; an involution on canonical cones.
inline Cone dual_cone(const Cone& c) {
    return Cone::from_inequalities(c.dim(), c.rays(), c.lineality());
}

inline Cone intersect(const Cone& a, const Cone& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("intersect: ambient dimensions differ");
    std::vector<QVector> ineqs = a.facets();
    ineqs.insert(ineqs.end(), b.facets().begin(), b.facets().end());
    std::vector<QVector> eqs = a.span_equations();
    eqs.insert(eqs.end(), b.span_equations().begin(), b.span_equations().end());
    return Cone::from_inequalities(a.dim(), ineqs, eqs);
}

/// The face of c where the facets indexed by tight hold with equality.
inline Cone face_of(const Cone& c, const std::vector<std::size_t>& tight) {
    std::vector<QVector> eqs = c.span_equations();
    for (std::size_t i : tight) eqs.push_back(c.facets()[i]);
    return Cone::from_inequalities(c.dim(), c.facets(), eqs);
}

/// All faces of c, including the minimal face and c itself.
inline std::vector<Cone> faces(const Cone& c) {
    const std::size_t nf = c.facets().size();
    std::vector<Cone> out;
    std::map<std::pair<std::vector<QVector>, std::vector<QVector>>, bool> seen;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << nf); ++mask) {
        std::vector<std::size_t> tight;
        for (std::size_t i = 0; i < nf; ++i)
            if (mask & (std::uint64_t(1) << i)) tight.push_back(i);
        Cone f = face_of(c, tight);
        auto key = std::make_pair(f.lineality(), f.rays());
        if (seen.emplace(std::move(key), true).second) out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline bool is_face_of(const Cone& tau, const Cone& sigma) {
    if (tau.dim() != sigma.dim()) throw DimensionMismatch("is_face_of: ambient dimensions differ");
    for (const auto& r : tau.rays())
        if (!sigma.contains(r)) return false;
    for (const auto& l : tau.lineality())
        if (!sigma.contains(l) || !sigma.contains(-l)) return false;
    std::vector<std::size_t> tight;
    for (std::size_t i = 0; i < sigma.facets().size(); ++i) {
        const QVector& f = sigma.facets()[i];
        bool all_zero = true;
        for (const auto& r : tau.rays())
            if (!dot(f, r).is_zero()) all_zero = false;
        for (const auto& l : tau.lineality())
            if (!dot(f, l).is_zero()) all_zero = false;
        if (all_zero) tight.push_back(i);
    }
    return face_of(sigma, tight) == tau;
}

inline Cone linear_image(const Matrix& m, const Cone& c) {
    if (m.cols() != c.dim()) throw DimensionMismatch("linear_image: map domain mismatch");
    std::vector<QVector> gens, lins;
    for (const auto& r : c.rays()) gens.push_back(m.apply(r));
    for (const auto& l : c.lineality()) lins.push_back(m.apply(l));
    return Cone::from_generators(m.rows(), gens, lins);
}

/// Exact witness for the system {<e,x> = 0, <s,x> > 0, <w,x> >= 0}.
/// Homogenizes the strict inequalities with a slack coordinate and asks the
/// double description output for a ray with positive slack.
inline std::optional<QVector> strict_feasible_point(std::size_t dim,
                                                    const std::vector<QVector>& eqs,
                                                    const std::vector<QVector>& stricts,
                                                    const std::vector<QVector>& weaks) {
    std::vector<QVector> hom_eqs, hom_ineqs;
    auto lift = [&](const QVector& v, const Rational& slack) {
        QVector h(dim + 1);
        for (std::size_t i = 0; i < dim; ++i) h[i] = v[i];
        h[dim] = slack;
        return h;
    };
    for (const auto& e : eqs) hom_eqs.push_back(lift(e, Rational(0)));
    for (const auto& s : stricts) hom_ineqs.push_back(lift(s, Rational(-1)));
    for (const auto& w : weaks) hom_ineqs.push_back(lift(w, Rational(0)));
    hom_ineqs.push_back(unit_vector(dim + 1, dim));  // slack >= 0

    DDPair dd = dual_description(dim + 1, hom_ineqs, hom_eqs);
    QVector acc(dim + 1);
    bool found = false;
    for (const auto& r : dd.rays) {
        if (r[dim].sign() > 0) {
            acc = acc + r;
            found = true;
        }
    }
    if (!found) return std::nullopt;
    QVector x(dim);
    for (std::size_t i = 0; i < dim; ++i) x[i] = acc[i] / acc[dim];
    return x;
}

/// Witness for relint(a) ∩ relint(b) (∩ within, when provided) being nonempty.
inline std::optional<QVector> relint_intersection_point(const Cone& a, const Cone& b,
                                                        const Cone* within = nullptr) {
    std::vector<QVector> eqs = a.span_equations();
    eqs.insert(eqs.end(), b.span_equations().begin(), b.span_equations().end());
    std::vector<QVector> stricts = a.facets();
    stricts.insert(stricts.end(), b.facets().begin(), b.facets().end());
    std::vector<QVector> weaks;
    if (within) {
        eqs.insert(eqs.end(), within->span_equations().begin(), within->span_equations().end());
        weaks = within->facets();
    }
    return strict_feasible_point(a.dim(), eqs, stricts, weaks);
}

} // namespace sphtrop
