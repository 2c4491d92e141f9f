#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace certify {

// Exact rational; mpq_class keeps every value in lowest terms with a
// positive denominator once canonicalized.
using Rational = mpq_class;
using Integer = mpz_class;

enum class Direction { lower, upper };

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational rat(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// to_string gives "p/q" or "p"; parse_rational also reads decimals and
// scientific notation exactly.
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& s);

// Checked division; throws on a zero divisor instead of aborting inside GMP.
Rational divide(const Rational& a, const Rational& b);

Integer floor_int(const Rational& q);
Integer ceil_int(const Rational& q);

// Nearest multiple of 2^-bits in the given direction.
Rational round_dyadic(const Rational& q, unsigned bits, Direction dir);

// Nearest multiple of 1/denominator in the given direction.
Rational round_to_denominator(const Rational& q, const Integer& denominator, Direction dir);

Rational pow(const Rational& q, unsigned long e);
Integer factorial(unsigned long n);
Integer binomial(unsigned long n, unsigned long k);

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

double to_double(const Rational& q);

// Decimal digits in numerator plus denominator; a rough size measure.
std::size_t digit_count(const Rational& q);

}  // namespace certify
