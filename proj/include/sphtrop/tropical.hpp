#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "sphtrop/complex.hpp"

namespace sphtrop {

struct TropicalTerm {
    QVector exponents;    // integer exponent vector
    Rational valuation;   // coefficient valuation; 0 for constants over C

    friend bool operator==(const TropicalTerm& a, const TropicalTerm& b) {
        return a.exponents == b.exponents && a.valuation == b.valuation;
    }
    friend bool operator<(const TropicalTerm& a, const TropicalTerm& b) {
        if (a.exponents != b.exponents) return a.exponents < b.exponents;
        return a.valuation < b.valuation;
    }
};

/// Min-plus polynomial: a valuated term list over a fixed variable layout.
/// Duplicate exponent vectors are merged keeping the minimal valuation.
class TropicalPolynomial {
public:
    TropicalPolynomial(std::size_t nvars, std::vector<TropicalTerm> terms) : nvars_(nvars) {
        if (terms.empty()) throw DomainError("TropicalPolynomial: needs at least one term");
        std::map<QVector, Rational> merged;
        for (auto& t : terms) {
            if (t.exponents.dim() != nvars_)
                throw DimensionMismatch("TropicalPolynomial: exponent dimension");
            auto it = merged.find(t.exponents);
            if (it == merged.end()) {
                merged.emplace(std::move(t.exponents), std::move(t.valuation));
            } else if (t.valuation < it->second) {
                it->second = std::move(t.valuation);
            }
        }
        for (auto& [e, v] : merged) terms_.push_back({e, v});
    }

    /// Monomial list with zero valuations, one row of exponents per term.
    static TropicalPolynomial of_exponents(std::size_t nvars,
                                           const std::vector<std::vector<long>>& rows) {
        std::vector<TropicalTerm> ts;
        for (const auto& row : rows) {
            QVector e(nvars);
            for (std::size_t i = 0; i < row.size(); ++i) e[i] = Rational(row[i]);
            ts.push_back({std::move(e), Rational(0)});
        }
        return TropicalPolynomial(nvars, std::move(ts));
    }

    std::size_t nvars() const { return nvars_; }
    const std::vector<TropicalTerm>& terms() const { return terms_; }

private:
    std::size_t nvars_;
    std::vector<TropicalTerm> terms_;
};

/// Locus where the minimum over the terms is attained at least twice: one
/// candidate cell per unordered term pair, empties and non-maximal cells
/// dropped. A single-term polynomial has an empty hypersurface.
inline PolyhedralComplex hypersurface(const TropicalPolynomial& f) {
    const auto& ts = f.terms();
    std::vector<Polyhedron> cells;
    for (std::size_t p = 0; p < ts.size(); ++p) {
        for (std::size_t q = p + 1; q < ts.size(); ++q) {
            std::vector<AffineConstraint> eqs{
                {ts[p].exponents - ts[q].exponents, ts[q].valuation - ts[p].valuation}};
            std::vector<AffineConstraint> ineqs;
            for (std::size_t l = 0; l < ts.size(); ++l) {
                if (l == p || l == q) continue;
                ineqs.push_back({ts[l].exponents - ts[p].exponents,
                                 ts[p].valuation - ts[l].valuation});
            }
            cells.push_back(Polyhedron::from_constraints(f.nvars(), ineqs, eqs));
        }
    }
    return PolyhedralComplex(f.nvars(), std::move(cells));
}

/// Complexes produced by the tropical operations; the support is the locus
/// where every generator's minimum is attained at least twice.
using TropicalComplex = PolyhedralComplex;

/// Tropical prevariety of the generator set: common refinement of the member
/// hypersurfaces. The empty set of generators cuts out the whole space.
/// For a single generator this equals the tropical variety; for more the
/// prevariety may strictly contain it (callers surface that caveat).
inline PolyhedralComplex prevariety(const std::vector<TropicalPolynomial>& fs,
                                    std::size_t nvars) {
    if (fs.empty()) return PolyhedralComplex::full_space(nvars);
    std::vector<PolyhedralComplex> hs;
    hs.reserve(fs.size());
    for (const auto& f : fs) {
        if (f.nvars() != nvars) throw DimensionMismatch("prevariety: variable layout mismatch");
        hs.push_back(hypersurface(f));
    }
    return common_refinement(hs);
}

} // namespace sphtrop
