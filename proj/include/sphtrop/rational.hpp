#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <iosfwd>
#include <string>

#include "sphtrop/errors.hpp"

namespace sphtrop {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number with arbitrary-precision numerator and denominator.
/// Canonical form invariants: gcd(num, den) = 1 and den >= 1.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long v) : num_(v), den_(1) {}          // NOLINT(google-explicit-constructor)
    Rational(int v) : num_(v), den_(1) {}           // NOLINT(google-explicit-constructor)
    Rational(BigInt v) : num_(std::move(v)), den_(1) {}

    Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

    Rational operator-() const { return Rational(-num_, den_, already_normal_tag{}); }

    Rational& operator+=(const Rational& o) {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        num_ = num_ * o.den_ - o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        num_ *= o.num_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.num_ == 0) throw DomainError("Rational: division by zero");
        num_ *= o.den_;
        den_ *= o.num_;
        normalize();
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    /// Serialize as "p" or "p/q".
    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) s += "/" + den_.str();
        return s;
    }

    /// Parse "p" or "p/q"; throws SchemaError on malformed input.
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(BigInt(s));
            BigInt num(s.substr(0, slash));
            BigInt den(s.substr(slash + 1));
            if (den == 0) throw DomainError("Rational: zero denominator");
            return Rational(std::move(num), std::move(den));
        } catch (const std::runtime_error& e) {
            throw SchemaError("bad rational literal '" + s + "': " + e.what());
        }
    }

private:
    struct already_normal_tag {};
    Rational(BigInt num, BigInt den, already_normal_tag)
        : num_(std::move(num)), den_(std::move(den)) {}

    void normalize() {
        if (den_ == 0) throw DomainError("Rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    BigInt num_;
    BigInt den_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

/// Rational extended by the single symbol "inf". Ordering puts inf above every
/// finite value; addition and min follow the tropical conventions.
class ExtRational {
public:
    ExtRational() : inf_(false) {}
    ExtRational(Rational v) : inf_(false), value_(std::move(v)) {}  // NOLINT
    ExtRational(long v) : inf_(false), value_(v) {}                 // NOLINT

    static ExtRational infinity() {
        ExtRational e;
        e.inf_ = true;
        return e;
    }

    bool is_inf() const { return inf_; }
    const Rational& finite() const {
        if (inf_) throw DomainError("ExtRational: value is infinite");
        return value_;
    }

    friend ExtRational operator+(const ExtRational& a, const ExtRational& b) {
        if (a.inf_ || b.inf_) return infinity();
        return ExtRational(a.value_ + b.value_);
    }

    friend bool operator==(const ExtRational& a, const ExtRational& b) {
        if (a.inf_ != b.inf_) return false;
        return a.inf_ || a.value_ == b.value_;
    }
    friend bool operator!=(const ExtRational& a, const ExtRational& b) { return !(a == b); }
    friend bool operator<(const ExtRational& a, const ExtRational& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.value_ < b.value_;
    }
    friend bool operator<=(const ExtRational& a, const ExtRational& b) { return a == b || a < b; }

    friend const ExtRational& min(const ExtRational& a, const ExtRational& b) {
        return b < a ? b : a;
    }

    std::string str() const { return inf_ ? "inf" : value_.str(); }

    static ExtRational parse(const std::string& s) {
        if (s == "inf") return infinity();
        return ExtRational(Rational::parse(s));
    }

private:
    bool inf_;
    Rational value_;
};

inline std::ostream& operator<<(std::ostream& os, const ExtRational& q) { return os << q.str(); }

} // namespace sphtrop
