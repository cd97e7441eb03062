#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "twistcube/error.hpp"

namespace twistcube {

using Int = std::int64_t;

namespace checked {

inline Int add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
    return r;
}

inline Int sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
    return r;
}

inline Int mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
    return r;
}

inline Int neg(Int a) { return sub(0, a); }

inline Int abs(Int a) { return a < 0 ? neg(a) : a; }

} // namespace checked

/// Exact rational number with 64-bit numerator and denominator.
///
/// Always normalized: gcd(num, den) == 1 and den > 0. Arithmetic throws
/// OverflowError instead of wrapping; comparisons are exact (128-bit cross
/// multiplication) and never overflow.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(Int value) : num_(value) {} // NOLINT(google-explicit-constructor)
    Rational(Int num, Int den) : num_(num), den_(den) { normalize(); }

    Int num() const noexcept { return num_; }
    Int den() const noexcept { return den_; }

    bool is_integer() const noexcept { return den_ == 1; }
    int sign() const noexcept { return (num_ > 0) - (num_ < 0); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (a.den_ == b.den_) return {checked::add(a.num_, b.num_), a.den_};
        const Int g = std::gcd(a.den_, b.den_);
        const Int lhs = checked::mul(a.num_, b.den_ / g);
        const Int rhs = checked::mul(b.num_, a.den_ / g);
        return {checked::add(lhs, rhs), checked::mul(a.den_ / g, b.den_)};
    }

    friend Rational operator-(const Rational& a) {
        Rational r;
        r.num_ = checked::neg(a.num_);
        r.den_ = a.den_;
        return r;
    }

    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

    friend Rational operator*(const Rational& a, const Rational& b) {
        const Int g1 = std::gcd(a.num_, b.den_);
        const Int g2 = std::gcd(b.num_, a.den_);
        const Int n = checked::mul(g1 ? a.num_ / g1 : 0, g2 ? b.num_ / g2 : 0);
        const Int d = checked::mul(a.den_ / (g2 ? g2 : 1), b.den_ / (g1 ? g1 : 1));
        return {n, d};
    }

    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw UsageError("rational division by zero");
        Rational inv;
        inv.num_ = b.num_ < 0 ? checked::neg(b.den_) : b.den_;
        inv.den_ = b.num_ < 0 ? checked::neg(b.num_) : b.num_;
        return a * inv;
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
        const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
        const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
        return lhs <=> rhs;
    }

    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    void normalize() {
        if (den_ == 0) throw UsageError("rational with zero denominator");
        if (den_ < 0) {
            num_ = checked::neg(num_);
            den_ = checked::neg(den_);
        }
        const Int g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    Int num_ = 0;
    Int den_ = 1;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

} // namespace twistcube
