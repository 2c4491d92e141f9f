#pragma once

#include "certify/interval.hpp"
#include "certify/poly.hpp"

#include <map>
#include <utility>
#include <vector>

namespace certify {

class RationalFunction;

// Finite sum of terms c * t^m * e^{-n t} with integer m, n >= 0.
class ExpPoly {
public:
    struct Key {
        unsigned long n;  // decay rate
        unsigned long m;  // power of t
        friend bool operator<(const Key& a, const Key& b) { return a.n != b.n ? a.n < b.n : a.m < b.m; }
        friend bool operator==(const Key& a, const Key& b) { return a.n == b.n && a.m == b.m; }
    };
    using Terms = std::map<Key, Rational>;

    ExpPoly() = default;
    ExpPoly(const Rational& constant);

    // c t^m e^{-n t}
    static ExpPoly term(const Rational& c, unsigned long m, unsigned long n);
    static ExpPoly exp(unsigned long n, const Rational& c = 1) { return term(c, 0, n); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    void add_term(const Rational& c, unsigned long m, unsigned long n);

    Rational at_zero() const;
    RationalInterval operator()(const Rational& t, unsigned bits = 256) const;
    double eval_double(double t) const;

    unsigned long min_rate() const;
    unsigned long max_rate() const;
    unsigned long max_power() const;

    ExpPoly derivative() const;
    ExpPoly integral() const;  // t -> int_0^t f(s) ds

    // int_t^inf e^{rate (t - s)} f(s) ds
    ExpPoly tail_integral(unsigned long rate) const;

    ExpPoly positive_part() const;  // terms with c > 0
    ExpPoly negative_part() const;  // terms with c < 0

    // Term-wise rounding of coefficients to multiples of 1/denominator, valid on t >= 0
    ExpPoly rounded(const Integer& denominator, Direction dir) const;

    RationalFunction laplace() const;

    // Upper bound on sup over [a, b] with 0 <= a <= b: positive terms at their
    // largest possible value, negative terms dropped.
    Rational sup_bound(const Rational& a, const Rational& b) const;
    // Enclosure of the range on [a, b], termwise from t^m increasing and e^{-nt} decreasing.
    RationalInterval range(const Rational& a, const Rational& b, unsigned bits = 128) const;

    ExpPoly operator-() const;
    ExpPoly& operator+=(const ExpPoly& o);
    ExpPoly& operator-=(const ExpPoly& o);
    ExpPoly& operator*=(const Rational& s);
    friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
    friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
    friend ExpPoly operator*(ExpPoly a, const Rational& s) { return a *= s; }
    friend ExpPoly operator*(const Rational& s, ExpPoly a) { return a *= s; }
    friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b);  // pointwise
    friend bool operator==(const ExpPoly& a, const ExpPoly& b) { return a.terms_ == b.terms_; }

private:
    Terms terms_;
};

// (f * g)(t) = int_0^t f(t - s) g(s) ds, exact.
ExpPoly convolve(const ExpPoly& f, const ExpPoly& g);

// Same result computed term pair by term pair on one thread; kept as the
// reference for the parallel version above.
ExpPoly convolve_serial(const ExpPoly& f, const ExpPoly& g);

// Duhamel solution of y' = -rate y + forcing, y(0) = y0.
ExpPoly duhamel(unsigned long rate, const Rational& y0, const ExpPoly& forcing);

// Certified enclosures of e^{-n t} for n = 0..max_rate at one point t.
class ExpTable {
public:
    ExpTable(const Rational& t, unsigned long max_rate, unsigned bits = 256);
    const RationalInterval& power(unsigned long n) const { return pow_[n]; }
    const Rational& t() const { return t_; }
    RationalInterval eval(const ExpPoly& f) const;
    // lower bound only, cheaper than eval when only one side is needed
    Rational eval_lower(const ExpPoly& f) const;
    // Range of f on [a, b] from the tables at both ends.
    static RationalInterval range(const ExpPoly& f, const ExpTable& a, const ExpTable& b);

private:
    Rational t_;
    unsigned bits_;
    std::vector<RationalInterval> pow_;
    std::vector<Rational> tpow_;
};

}  // namespace certify
