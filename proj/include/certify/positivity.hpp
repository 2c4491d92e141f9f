#pragma once

#include "certify/certificate.hpp"
#include "certify/exppoly.hpp"
#include "certify/poly.hpp"

#include <functional>
#include <string>
#include <vector>

namespace certify {

struct PositivityCertificate {
    std::string method;  // sweep, neglog_coeff, lipschitz_grid
    Rational lo, hi;
    // (t, certified lower bound of the function at t); only a prefix is kept
    // when there are many points, `points` counts all of them
    std::vector<std::pair<Rational, Rational>> witnesses;
    long points = 0;
    bool passed = false;
    std::string note;

    json to_json() const;
};

// Two-pointer sweep: with p = pos + neg (coefficient signs), pos is
// nondecreasing and neg nonincreasing on t >= 0, so pos(t_o) + neg(t_i) > 0
// proves p > 0 on [t_o, t_i]. Requires 0 <= lo <= hi.
PositivityCertificate sweep_positivity(const Poly& p, const Rational& lo, const Rational& hi, const Rational& step);

// After t -> -log(t) the range t >= log(radius_inv) becomes [0, 1/radius_inv].
// B is divided by its lowest power of t; passes iff
// b0 - sum_{n>=1} |b_n| radius_inv^-n > 0.
PositivityCertificate neglog_coeff_test(const Poly& B, long radius_inv);

// Value-proportional stepping: with a certified lower bound v_i > 0 at t_i and
// |f'| <= L on the next step, f > 0 on [t_i, t_i + v_i/(2L)]. Steps are
// rounded down to multiples of 2^-step_bits to keep the grid dyadic.
using LowerEval = std::function<Rational(const Rational&)>;
using SlopeBound = std::function<Rational(const Rational& a, const Rational& b)>;  // sup |f'| on [a, b]
PositivityCertificate lipschitz_grid_check(const LowerEval& f, const Rational& lo, const Rational& hi,
                                           const SlopeBound& L, unsigned step_bits = 40, long max_points = 10000000);
PositivityCertificate lipschitz_grid_check(const Poly& f, const Rational& lo, const Rational& hi, const Rational& L);

// p(x) = (1 - x)^r q(x) with q(1) != 0; returns q and sets r.
Poly divide_out_one(const Poly& p, unsigned& r);

// Nonnegativity of a sum of simple exponentials sum_n c_n e^{-n t} on t >= 0:
// substitute x = e^{-t} in (0, 1], remove the powers of x and (1 - x), and
// sweep the remaining polynomial on [0, 1].
PositivityCertificate exp_sum_nonnegative(const ExpPoly& f, const Rational& step = Rational(1, 100));

}  // namespace certify
