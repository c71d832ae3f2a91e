#pragma once

#include <cmath>
#include <compare>
#include <cstdint>

#include "mpa/errors.hpp"

namespace mpa::geometry {

// Exact rational on 128-bit integers, used so that cover lattices built from
// (L - ell) / (2k) steps compare against integer sites without rounding.
class Rational {
public:
    using Int = __int128;

    constexpr Rational() = default;
    constexpr Rational(std::int64_t v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(Int num, Int den) : num_(num), den_(den) { normalize(); }

    // Exact conversion; the value must be a multiple of 2^-20.
    static Rational from_double(double v) {
        constexpr double scale = 1048576.0;
        const double s = v * scale;
        if (!std::isfinite(s) || s != std::floor(s) || std::abs(s) > 9.0e15)
            throw ContractError("rational: value must be a finite multiple of 2^-20");
        return Rational(static_cast<Int>(static_cast<std::int64_t>(s)), static_cast<Int>(1048576));
    }

    Int num() const { return num_; }
    Int den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::int64_t floor() const {
        Int q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return static_cast<std::int64_t>(q);
    }
    std::int64_t ceil() const {
        Int q = num_ / den_;
        if (num_ % den_ != 0 && num_ > 0) ++q;
        return static_cast<std::int64_t>(q);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw ContractError("rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational operator-() const { return Rational(-num_, den_); }

    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const Int l = a.num_ * b.den_;
        const Int r = b.num_ * a.den_;
        if (l < r) return std::strong_ordering::less;
        if (l > r) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    friend bool operator==(const Rational& a, const Rational& b) { return (a <=> b) == 0; }

    Rational abs() const { return Rational(num_ < 0 ? -num_ : num_, den_); }

private:
    static Int gcd(Int a, Int b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            const Int t = a % b;
            a = b;
            b = t;
        }
        return a;
    }
    void normalize() {
        if (den_ == 0) throw ContractError("rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const Int g = gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    Int num_ = 0;
    Int den_ = 1;
};

inline Rational rmax(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational rmin(const Rational& a, const Rational& b) { return a < b ? a : b; }

}  // namespace mpa::geometry
