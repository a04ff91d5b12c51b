#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "sphtrop/colored_fan.hpp"
#include "sphtrop/complex.hpp"
#include "sphtrop/fan_builder.hpp"

namespace sphtrop {

namespace svg {

constexpr long kSize = 400;    // canvas edge in pixels
constexpr long kRadius = 3;    // logical viewport radius

/// Exact rational -> fixed three-decimal string (round half away from zero).
inline std::string fixed3(const Rational& q) {
    BigInt t = q.num() * 1000;
    BigInt d = q.den();
    BigInt quot = t / d;
    BigInt rem = t % d;
    if (rem < 0) rem = -rem;
    if (rem * 2 >= d) quot += (t < 0 ? -1 : 1);
    bool neg = quot < 0;
    if (neg) quot = -quot;
    BigInt ip = quot / 1000, fp = quot % 1000;
    std::string frac = fp.str();
    while (frac.size() < 3) frac = "0" + frac;
    return (neg ? "-" : "") + ip.str() + "." + frac;
}

/// Logical (x, y) to pixel coordinates with the y axis pointing up.
inline std::pair<std::string, std::string> to_pixel(const Rational& x, const Rational& y) {
    Rational scale(kSize, 2 * kRadius);
    Rational half(kSize, 2);
    return {fixed3(half + x * scale), fixed3(half - y * scale)};
}

inline Polyhedron viewport_box() {
    Rational r(kRadius);
    return Polyhedron::from_constraints(
        2, {{QVector{Rational(1), Rational(0)}, -r},
            {QVector{Rational(-1), Rational(0)}, -r},
            {QVector{Rational(0), Rational(1)}, -r},
            {QVector{Rational(0), Rational(-1)}, -r}});
}

/// Vertices of a bounded 2-D polyhedron in counterclockwise order, decided by
/// exact quadrant-and-cross-product comparison around the centroid.
inline std::vector<QVector> ordered_vertices(const Polyhedron& p) {
    std::vector<QVector> pts = p.points();
    if (pts.size() < 3) return pts;
    QVector center(2);
    for (const auto& v : pts) center = center + v;
    Rational inv(1, static_cast<long>(pts.size()));
    center = inv * center;
    auto half_of = [](const QVector& d) {
        if (d[1].sign() > 0 || (d[1].is_zero() && d[0].sign() > 0)) return 0;
        return 1;
    };
    std::sort(pts.begin(), pts.end(), [&](const QVector& a, const QVector& b) {
        QVector da = a - center, db = b - center;
        int ha = half_of(da), hb = half_of(db);
        if (ha != hb) return ha < hb;
        Rational cross = da[0] * db[1] - da[1] * db[0];
        if (!cross.is_zero()) return cross.sign() > 0;
        return a < b;
    });
    return pts;
}

inline void polygon(std::ostringstream& out, const std::vector<QVector>& pts,
                    const std::string& style) {
    if (pts.size() < 3) return;
    out << "<polygon points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto [x, y] = to_pixel(pts[i][0], pts[i][1]);
        if (i) out << " ";
        out << x << "," << y;
    }
    out << "\" style=\"" << style << "\"/>\n";
}

inline void segment(std::ostringstream& out, const QVector& a, const QVector& b,
                    const std::string& style) {
    auto [x1, y1] = to_pixel(a[0], a[1]);
    auto [x2, y2] = to_pixel(b[0], b[1]);
    out << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
        << "\" style=\"" << style << "\"/>\n";
}

inline void dot(std::ostringstream& out, const QVector& a, const std::string& fill,
                const char* radius = "3") {
    auto [x, y] = to_pixel(a[0], a[1]);
    out << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"" << radius << "\" fill=\"" << fill
        << "\"/>\n";
}

inline void ring(std::ostringstream& out, const QVector& a, const std::string& color) {
    auto [x, y] = to_pixel(a[0], a[1]);
    out << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"6\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\"/>\n";
    out << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
}

/// Endpoint of a ray from base in direction dir on the viewport boundary.
inline QVector clip_ray(const QVector& base, const QVector& dir) {
    Rational best;
    bool have = false;
    for (std::size_t i = 0; i < 2; ++i) {
        if (dir[i].is_zero()) continue;
        Rational bound = dir[i].sign() > 0 ? Rational(kRadius) : Rational(-kRadius);
        Rational t = (bound - base[i]) / dir[i];
        if (!have || t < best) best = t, have = true;
    }
    if (!have || best.sign() < 0) return base;
    return base + best * dir;
}

inline void axes(std::ostringstream& out) {
    QVector o(2);
    segment(out, QVector{Rational(-kRadius), Rational(0)},
            QVector{Rational(kRadius), Rational(0)},
            "stroke:#999;stroke-width:0.6;stroke-dasharray:4 3");
    segment(out, QVector{Rational(0), Rational(-kRadius)},
            QVector{Rational(0), Rational(kRadius)},
            "stroke:#999;stroke-width:0.6;stroke-dasharray:4 3");
    dot(out, o, "#000", "2");
}

inline std::string document(const std::string& body) {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\""
        << kSize << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n"
        << "<rect width=\"" << kSize << "\" height=\"" << kSize << "\" fill=\"#ffffff\"/>\n"
        << body << "</svg>\n";
    return out.str();
}

inline void shade_cone(std::ostringstream& out, const Cone& c, const std::string& fill) {
    if (c.cone_dim() < 2) return;
    Polyhedron clipped = intersect(Polyhedron::from_cone(c), viewport_box());
    polygon(out, ordered_vertices(clipped), "fill:" + fill + ";stroke:none");
}

inline void draw_cone_rays(std::ostringstream& out, const Cone& c, const std::string& stroke) {
    QVector o(2);
    for (const auto& r : c.rays())
        segment(out, o, clip_ray(o, r), "stroke:" + stroke + ";stroke-width:2");
    for (const auto& l : c.lineality()) {
        segment(out, clip_ray(o, -l), clip_ray(o, l), "stroke:" + stroke + ";stroke-width:2");
    }
}

/// Embed a 1-D object on the horizontal axis of the 2-D canvas.
inline QVector on_line(const QVector& x) { return QVector{x[0], Rational(0)}; }

} // namespace svg

/// 2-D complexes are drawn cell by cell; 1-D complexes on a number line.
inline std::string render_complex_svg(const PolyhedralComplex& c) {
    if (c.dim == 0 || c.dim > 2)
        throw DomainError("render: only dimensions 1 and 2 are drawable");
    std::ostringstream body;
    svg::axes(body);
    Polyhedron box = svg::viewport_box();
    for (const auto& cell_in : c.cells) {
        Polyhedron cell =
            c.dim == 2 ? cell_in
                       : cell_in.linear_image(Matrix::from_rows({QVector{Rational(1)},
                                                                 QVector{Rational(0)}}));
        Polyhedron clipped = intersect(cell, box);
        if (clipped.is_empty()) continue;
        auto pts = clipped.points();
        std::size_t cdim = 2 - clipped.equalities().size();
        if (pts.size() == 1 && cdim <= 1 && clipped.recession_rays().empty() &&
            clipped.lineality().empty()) {
            svg::dot(body, pts[0], "#1f4e9c");
        } else if (cdim >= 2) {
            svg::polygon(body, svg::ordered_vertices(clipped), "fill:#c9d8f0;stroke:none");
        } else {
            auto vs = svg::ordered_vertices(clipped);
            // a clipped segment has exactly two generating points
            if (vs.size() >= 2)
                svg::segment(body, vs.front(), vs.back(), "stroke:#1f4e9c;stroke-width:2");
        }
    }
    return svg::document(body.str());
}

/// Toric fan: shaded maximal 2-cones plus their rays.
inline std::string render_fan_svg(const std::vector<Cone>& maximal) {
    std::ostringstream body;
    for (const auto& c : maximal) {
        if (c.dim() != 2) throw DomainError("render: only 2-dimensional fans are drawable");
        svg::shade_cone(body, c, "#d9d9d9");
    }
    svg::axes(body);
    for (const auto& c : maximal) svg::draw_cone_rays(body, c, "#000");
    return svg::document(body.str());
}

/// Colored fan over the valuation lattice: the valuation cone is shaded, the
/// member cones drawn over it, and every palette color marked with the ring
/// glyph at its lattice point.
inline std::string render_colored_fan_svg(const ColoredFan& fan) {
    std::size_t dim = fan.valuation_cone.dim();
    if (dim == 0 || dim > 2) throw DomainError("render: only dimensions 1 and 2 are drawable");
    std::ostringstream body;
    auto lift = [&](const QVector& v) { return dim == 2 ? v : svg::on_line(v); };
    if (dim == 2) {
        svg::shade_cone(body, fan.valuation_cone, "#e8e8e8");
    }
    svg::axes(body);
    static const char* kColorCycle[] = {"#c02020", "#2040c0", "#208040", "#806000"};
    for (const auto& cc : fan.maximal) {
        if (dim == 2) svg::shade_cone(body, cc.sigma, "#f0c9c9");
        QVector o(2);
        for (const auto& r : cc.sigma.rays())
            svg::segment(body, o, svg::clip_ray(o, lift(r)), "stroke:#000;stroke-width:2");
    }
    std::size_t ci = 0;
    for (const auto& color : fan.palette.colors) {
        svg::ring(body, lift(color.rho), kColorCycle[ci % 4]);
        ++ci;
    }
    return svg::document(body.str());
}

} // namespace sphtrop
