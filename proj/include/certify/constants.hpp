#pragma once

#include "certify/interval.hpp"

namespace certify {

// pi from Machin's formula 16 atan(1/5) - 4 atan(1/239), using that
// consecutive partial sums of an alternating series bracket the limit.
RationalInterval pi_enclosure(const Rational& target_width);

// log(x) for rational x > 0 via 2 atanh((x-1)/(x+1)) with a geometric
// remainder bound.
RationalInterval log_enclosure(const Rational& x, const Rational& target_width);

// e^{-t} for rational t >= 0, endpoints rounded outward to 2^-bits.
RationalInterval exp_neg_enclosure(const Rational& t, unsigned bits = 256);

// Rational bounds for base^(p/q) with base > 0, q > 0, found by bisection
// on r^q versus base^p; the returned interval has width <= target_width.
RationalInterval pow_enclosure(const Rational& base, long p, long q, const Rational& target_width);

}  // namespace certify
