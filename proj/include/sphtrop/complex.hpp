#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "sphtrop/parallel.hpp"
#include "sphtrop/polyhedron.hpp"

namespace sphtrop {

/// Drop empty cells, cells contained in another cell, and duplicates; sort
/// canonically so complexes compare by representation.
inline std::vector<Polyhedron> maximal_cells(std::vector<Polyhedron> cells) {
    cells.erase(std::remove_if(cells.begin(), cells.end(),
                               [](const Polyhedron& p) { return p.is_empty(); }),
                cells.end());
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    std::vector<bool> drop(cells.size(), false);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (i == j || drop[j]) continue;
            if (cells[j].contains_polyhedron(cells[i])) {
                drop[i] = true;
                break;
            }
        }
    }
    std::vector<Polyhedron> out;
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (!drop[i]) out.push_back(std::move(cells[i]));
    return out;
}

/// Finite union of polyhedra, stored via its maximal cells. The support (the
/// union) is the semantic content; cells of refinement outputs additionally
/// meet along faces.
struct PolyhedralComplex {
    std::size_t dim = 0;
    std::vector<Polyhedron> cells;

    PolyhedralComplex() = default;
    PolyhedralComplex(std::size_t d, std::vector<Polyhedron> cs)
        : dim(d), cells(maximal_cells(std::move(cs))) {}

    static PolyhedralComplex full_space(std::size_t d) {
        return PolyhedralComplex(d, {Polyhedron::full_space(d)});
    }
    static PolyhedralComplex empty(std::size_t d) { return PolyhedralComplex(d, {}); }

    bool is_empty() const { return cells.empty(); }

    bool contains_point(const QVector& x) const {
        for (const auto& c : cells)
            if (c.contains(x)) return true;
        return false;
    }

    friend bool operator==(const PolyhedralComplex& a, const PolyhedralComplex& b) {
        return a.dim == b.dim && a.cells == b.cells;
    }
};

/// Maximal cells of the intersection of the supports: every cell is an
/// intersection of one cell from each input.
inline PolyhedralComplex common_refinement(const std::vector<PolyhedralComplex>& complexes) {
    if (complexes.empty()) throw DomainError("common_refinement: no complexes");
    std::size_t dim = complexes[0].dim;
    for (const auto& c : complexes)
        if (c.dim != dim) throw DimensionMismatch("common_refinement: ambient dimensions differ");
    std::vector<Polyhedron> acc = complexes[0].cells;
    for (std::size_t k = 1; k < complexes.size(); ++k) {
        const auto& bs = complexes[k].cells;
        std::vector<std::optional<Polyhedron>> slots(acc.size() * bs.size());
        parallel_for(slots.size(), [&](std::size_t idx) {
            Polyhedron i = intersect(acc[idx / bs.size()], bs[idx % bs.size()]);
            if (!i.is_empty()) slots[idx] = std::move(i);
        });
        std::vector<Polyhedron> next;
        for (auto& s : slots)
            if (s) next.push_back(std::move(*s));
        acc = maximal_cells(std::move(next));
        if (acc.empty()) break;
    }
    return PolyhedralComplex(dim, std::move(acc));
}

inline PolyhedralComplex linear_image(const Matrix& m, const PolyhedralComplex& c) {
    std::vector<Polyhedron> cells;
    cells.reserve(c.cells.size());
    for (const auto& cell : c.cells) cells.push_back(cell.linear_image(m));
    return PolyhedralComplex(m.rows(), std::move(cells));
}

/// Does the union of cells cover P? Splits P along every hyperplane occurring
/// in the cells' descriptions; each fragment then lies inside one cell or
/// misses the support entirely, so testing its relative interior point decides
/// membership exactly. Returns a witness point outside the support when the
/// answer is no.
inline std::optional<QVector> support_covers(const std::vector<Polyhedron>& cells,
                                             const Polyhedron& p) {
    if (p.is_empty()) return std::nullopt;
    // Hyperplanes canonicalized up to scaling, including sign.
    auto canonical = [](const AffineConstraint& c) {
        QVector cn = c.normal.primitive_signless();
        Rational factor;
        for (std::size_t i = 0; i < cn.dim(); ++i) {
            if (!cn[i].is_zero()) {
                factor = c.normal[i] / cn[i];
                break;
            }
        }
        return std::make_pair(std::move(cn), c.rhs / factor);
    };
    std::set<std::pair<QVector, Rational>> hyperplanes;
    for (const auto& c : cells) {
        for (const auto& in : c.inequalities()) hyperplanes.insert(canonical(in));
        for (const auto& eq : c.equalities()) hyperplanes.insert(canonical(eq));
    }
    std::vector<Polyhedron> pieces{p};
    for (const auto& [n, b] : hyperplanes) {
        std::vector<Polyhedron> next;
        AffineConstraint c{n, b};
        for (const auto& piece : pieces) {
            Polyhedron above = clip(piece, c, false);
            Polyhedron below = clip(piece, c, true);
            if (!above.is_empty()) next.push_back(std::move(above));
            if (!below.is_empty()) next.push_back(std::move(below));
        }
        pieces = std::move(next);
    }
    for (const auto& piece : pieces) {
        QVector x = piece.relint_point();
        bool inside = false;
        for (const auto& c : cells) {
            if (c.contains(x)) {
                inside = true;
                break;
            }
        }
        if (!inside) return x;
    }
    return std::nullopt;
}

inline bool support_contains(const PolyhedralComplex& a, const Polyhedron& p) {
    return !support_covers(a.cells, p).has_value();
}

/// Exact equality of supports (mutual containment of the unions).
inline bool support_equal(const PolyhedralComplex& a, const PolyhedralComplex& b) {
    for (const auto& cell : a.cells)
        if (!support_contains(b, cell)) return false;
    for (const auto& cell : b.cells)
        if (!support_contains(a, cell)) return false;
    return true;
}

} // namespace sphtrop
