#pragma once

#include "certify/interval.hpp"

#include <vector>

namespace certify {

// Dense univariate polynomial with rational coefficients, lowest power first.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs);
    Poly(const Rational& constant);

    static Poly monomial(const Rational& c, std::size_t power);
    static Poly linear(const Rational& c0, const Rational& c1) { return Poly({c0, c1}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for the zero polynomial
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

    Rational operator()(const Rational& x) const;
    RationalInterval operator()(const RationalInterval& x) const;

    Poly derivative() const;
    Poly shifted(const Rational& a) const;  // p(x + a)
    Poly scaled_argument(const Rational& s) const;  // p(s x)

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Rational& s);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    // Quotient and remainder by another polynomial.
    static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);

    // p = (x + a) * q + p(-a); returns q and sets rem.
    Poly deflate(const Rational& root, Rational& rem) const;

    // Split into the part with non-negative coefficients and the rest.
    Poly positive_part() const;
    Poly negative_part() const;

private:
    void trim();
    std::vector<Rational> c_;
};

Poly pow(const Poly& p, unsigned long e);

}  // namespace certify
