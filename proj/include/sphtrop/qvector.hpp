#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "sphtrop/rational.hpp"

namespace sphtrop {

/// Vector over the rationals with a fixed ambient dimension.
class QVector {
public:
    QVector() = default;
    explicit QVector(std::size_t dim) : coords_(dim) {}
    QVector(std::initializer_list<Rational> cs) : coords_(cs) {}
    explicit QVector(std::vector<Rational> cs) : coords_(std::move(cs)) {}

    /// Convenience constructor from integer coordinates.
    static QVector of_ints(std::initializer_list<long> cs) {
        std::vector<Rational> v;
        v.reserve(cs.size());
        for (long c : cs) v.emplace_back(c);
        return QVector(std::move(v));
    }

    std::size_t dim() const { return coords_.size(); }
    const Rational& operator[](std::size_t i) const { return coords_[i]; }
    Rational& operator[](std::size_t i) { return coords_[i]; }

    const std::vector<Rational>& coords() const { return coords_; }

    bool is_zero() const {
        for (const auto& c : coords_)
            if (!c.is_zero()) return false;
        return true;
    }

    friend QVector operator+(const QVector& a, const QVector& b) {
        check_dims(a, b);
        QVector r(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
        return r;
    }
    friend QVector operator-(const QVector& a, const QVector& b) {
        check_dims(a, b);
        QVector r(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
        return r;
    }
    friend QVector operator*(const Rational& s, const QVector& a) {
        QVector r(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) r[i] = s * a[i];
        return r;
    }
    QVector operator-() const { return Rational(-1) * *this; }

    friend Rational dot(const QVector& a, const QVector& b) {
        check_dims(a, b);
        Rational r;
        for (std::size_t i = 0; i < a.dim(); ++i) r += a[i] * b[i];
        return r;
    }

    friend bool operator==(const QVector& a, const QVector& b) { return a.coords_ == b.coords_; }
    friend bool operator!=(const QVector& a, const QVector& b) { return !(a == b); }

    /// Lexicographic order, used for canonical sorting of generator lists.
    friend bool operator<(const QVector& a, const QVector& b) {
        if (a.dim() != b.dim()) return a.dim() < b.dim();
        for (std::size_t i = 0; i < a.dim(); ++i) {
            if (a[i] != b[i]) return a[i] < b[i];
        }
        return false;
    }

    /// Scale to the unique coprime integer vector with the same direction.
    /// The zero vector is returned unchanged.
    QVector primitive() const {
        if (is_zero()) return *this;
        BigInt l = 1;
        for (const auto& c : coords_) l = boost::multiprecision::lcm(l, c.den());
        BigInt g = 0;
        std::vector<Rational> scaled(coords_.size());
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            BigInt n = coords_[i].num() * (l / coords_[i].den());
            g = boost::multiprecision::gcd(g, n < 0 ? BigInt(-n) : n);
            scaled[i] = Rational(std::move(n));
        }
        if (g > 1) {
            for (auto& c : scaled) c = Rational(c.num() / g);
        }
        return QVector(std::move(scaled));
    }

    /// Primitive form with positive leading nonzero entry; canonical form for
    /// directionless vectors (lineality generators, equation normals).
    QVector primitive_signless() const {
        QVector p = primitive();
        for (std::size_t i = 0; i < p.dim(); ++i) {
            if (p[i].is_zero()) continue;
            return p[i].sign() < 0 ? -p : p;
        }
        return p;
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i) s += ",";
            s += coords_[i].str();
        }
        return s + ")";
    }

private:
    static void check_dims(const QVector& a, const QVector& b) {
        if (a.dim() != b.dim())
            throw DimensionMismatch("QVector: dimension mismatch " + std::to_string(a.dim()) +
                                    " vs " + std::to_string(b.dim()));
    }

    std::vector<Rational> coords_;
};

inline QVector unit_vector(std::size_t dim, std::size_t i) {
    QVector e(dim);
    e[i] = Rational(1);
    return e;
}

} // namespace sphtrop
