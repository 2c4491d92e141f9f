#pragma once

#include "certify/exppoly.hpp"
#include "certify/poly.hpp"

#include <map>

namespace certify {

// Rational function of the Laplace variable xi whose denominator is a
// product of linear factors (xi + n)^k with integer n >= 0. Every transform
// that occurs here has poles of this form, which makes partial fractions
// exact and cheap. Common factors are cancelled after every operation.
class RationalFunction {
public:
    using Poles = std::map<unsigned long, unsigned>;  // n -> multiplicity of (xi + n)

    RationalFunction() = default;
    RationalFunction(const Rational& c) : num_(c) {}
    RationalFunction(Poly numerator, Poles poles);

    static RationalFunction xi() { return RationalFunction(Poly::linear(0, 1), {}); }
    // c / (xi + n)^k
    static RationalFunction pole(unsigned long n, unsigned k = 1, const Rational& c = 1);
    // (xi + a) as a numerator factor, a may be any rational
    static RationalFunction linear(const Rational& a) { return RationalFunction(Poly::linear(a, 1), {}); }

    const Poly& numerator() const { return num_; }
    const Poles& poles() const { return poles_; }
    Poly denominator() const;

    Rational operator()(const Rational& xi) const;

    RationalFunction operator-() const;
    RationalFunction& operator+=(const RationalFunction& o);
    RationalFunction& operator-=(const RationalFunction& o);
    RationalFunction& operator*=(const RationalFunction& o);
    friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
    friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
    friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b);

    // Inverse Laplace transform. The constant polynomial part, if any, is a
    // Dirac mass at t = 0 and is returned through `delta`; higher polynomial
    // parts are rejected.
    ExpPoly inverse_laplace(Rational* delta = nullptr) const;

private:
    void cancel();
    Poly num_;
    Poles poles_;
};

}  // namespace certify
