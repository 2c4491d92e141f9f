#include "certify/interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace certify {

RationalInterval::RationalInterval(const Rational& lo, const Rational& hi) : lo_(lo), hi_(hi) {
    if (lo_ > hi_) throw std::invalid_argument("interval with lo > hi");
}

Rational RationalInterval::mag() const { return std::max(certify::abs(lo_), certify::abs(hi_)); }

RationalInterval RationalInterval::outward(unsigned bits) const {
    return {round_dyadic(lo_, bits, Direction::lower), round_dyadic(hi_, bits, Direction::upper)};
}

RationalInterval& RationalInterval::operator+=(const RationalInterval& o) {
    lo_ += o.lo_;
    hi_ += o.hi_;
    return *this;
}

RationalInterval& RationalInterval::operator-=(const RationalInterval& o) {
    lo_ -= o.hi_;
    hi_ -= o.lo_;
    return *this;
}

RationalInterval& RationalInterval::operator*=(const RationalInterval& o) {
    if (lo_ >= 0 && o.lo_ >= 0) {
        lo_ *= o.lo_;
        hi_ *= o.hi_;
        return *this;
    }
    if (is_point() && o.is_point()) {
        lo_ *= o.lo_;
        hi_ = lo_;
        return *this;
    }
    Rational p[4] = {lo_ * o.lo_, lo_ * o.hi_, hi_ * o.lo_, hi_ * o.hi_};
    lo_ = *std::min_element(p, p + 4);
    hi_ = *std::max_element(p, p + 4);
    return *this;
}

RationalInterval operator/(const RationalInterval& a, const RationalInterval& b) {
    if (b.lo() <= 0 && b.hi() >= 0) throw std::domain_error("interval division by an interval containing zero");
    RationalInterval inv(Rational(1 / b.hi()), Rational(1 / b.lo()));
    return a * inv;
}

RationalInterval hull(const RationalInterval& a, const RationalInterval& b) {
    return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

RationalInterval pow(const RationalInterval& x, unsigned long e) {
    if (e == 0) return Rational(1);
    if (x.lo() >= 0) return {pow(x.lo(), e), pow(x.hi(), e)};
    if (x.hi() <= 0) {
        RationalInterval m = pow(-x, e);
        return e % 2 == 0 ? m : -m;
    }
    Rational a = pow(x.lo(), e), b = pow(x.hi(), e);
    if (e % 2 == 1) return {a, b};
    return {Rational(0), std::max(a, b)};
}

RationalInterval abs(const RationalInterval& x) {
    if (x.lo() >= 0) return x;
    if (x.hi() <= 0) return -x;
    return {Rational(0), x.mag()};
}

std::string to_string(const RationalInterval& x) {
    return "[" + to_string(x.lo()) + ", " + to_string(x.hi()) + "]";
}

}  // namespace certify
