#pragma once

#include "certify/rational.hpp"

#include <string>

namespace certify {

// Closed interval [lo, hi] of rationals. Arithmetic is exact on the
// endpoints, so every result contains the image of its operands; call
// outward() to trade width for smaller denominators.
class RationalInterval {
public:
    RationalInterval() = default;
    RationalInterval(const Rational& point) : lo_(point), hi_(point) {}
    RationalInterval(const Rational& lo, const Rational& hi);

    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    Rational width() const { return hi_ - lo_; }
    Rational mid() const { return (lo_ + hi_) / 2; }
    Rational mag() const;  // max |x| over the interval

    bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
    bool contains(const RationalInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool positive() const { return lo_ > 0; }
    bool negative() const { return hi_ < 0; }
    bool is_point() const { return lo_ == hi_; }

    RationalInterval outward(unsigned bits) const;

    RationalInterval operator-() const { return {Rational(-hi_), Rational(-lo_)}; }
    RationalInterval& operator+=(const RationalInterval& o);
    RationalInterval& operator-=(const RationalInterval& o);
    RationalInterval& operator*=(const RationalInterval& o);

    friend RationalInterval operator+(RationalInterval a, const RationalInterval& b) { return a += b; }
    friend RationalInterval operator-(RationalInterval a, const RationalInterval& b) { return a -= b; }
    friend RationalInterval operator*(RationalInterval a, const RationalInterval& b) { return a *= b; }
    friend RationalInterval operator/(const RationalInterval& a, const RationalInterval& b);

private:
    Rational lo_, hi_;
};

RationalInterval hull(const RationalInterval& a, const RationalInterval& b);
RationalInterval pow(const RationalInterval& x, unsigned long e);
RationalInterval abs(const RationalInterval& x);

std::string to_string(const RationalInterval& x);

}  // namespace certify
