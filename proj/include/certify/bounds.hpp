#pragma once

#include "certify/exppoly.hpp"
#include "certify/poly.hpp"

namespace certify {

// Pair of functions bracketing a target on [start, end].
struct BoundPair {
    ExpPoly lower;
    ExpPoly upper;
    RationalInterval start = Rational(0);
    RationalInterval end = Rational(0);

    // lower <= upper at every grid point, each side evaluated with certified
    // exponentials. Returns the first failing point, or -1 if none.
    long spot_check(const std::vector<Rational>& grid) const;
};

// Taylor polynomials of e^{-t}. By the Lagrange remainder, even degrees
// bound from above and odd degrees from below for every t >= 0; `order`
// picks the pair (T_order, T_{order+1}). Also checks that the lower
// polynomial is non-negative on [0, t_max] so that its powers remain lower
// bounds of e^{-n t}.
struct ExpEnclosure {
    Poly lower;
    Poly upper;
};
ExpEnclosure exp_enclosure_poly(unsigned order, const Rational& t_max);

// Rounds every coefficient onto the grid 1/denom_budget, moving the polynomial in `dir` for t >= 0.
Poly simplify_bound(const Poly& p, Direction dir, const Integer& denom_budget);

// Polynomial bound of an ExpPoly on [0, t_max]: each e^{-n t} is replaced by
// the n-th power of the Taylor enclosure chosen by the coefficient sign.
Poly makepoly(const ExpPoly& f, unsigned order, Direction dir, const Integer& denom_budget, const Rational& t_max);

}  // namespace certify
