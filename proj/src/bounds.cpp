#include "certify/bounds.hpp"

#include <map>
#include <stdexcept>

namespace certify {

long BoundPair::spot_check(const std::vector<Rational>& grid) const {
    const unsigned long rate = std::max(lower.max_rate(), upper.max_rate());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        ExpTable tab(grid[i], rate);
        if (tab.eval(lower).lo() > tab.eval(upper).hi()) return static_cast<long>(i);
    }
    return -1;
}

namespace {

Poly taylor_exp_neg(unsigned degree) {
    std::vector<Rational> c(degree + 1);
    Rational f = 1;
    for (unsigned i = 0; i <= degree; ++i) {
        if (i > 0) f /= Rational(static_cast<long>(i));
        c[i] = i % 2 ? Rational(-f) : f;
    }
    return Poly(std::move(c));
}

}  // namespace

ExpEnclosure exp_enclosure_poly(unsigned order, const Rational& t_max) {
    if (order < 1) throw std::invalid_argument("exp_enclosure_poly needs order >= 1");
    if (t_max < 0 || t_max > 2) throw std::invalid_argument("exp_enclosure_poly supports t_max in [0, 2]");
    Poly a = taylor_exp_neg(order), b = taylor_exp_neg(order + 1);
    ExpEnclosure e = order % 2 ? ExpEnclosure{a, b} : ExpEnclosure{b, a};
    // odd Taylor polynomials are decreasing (their derivative is minus an even one, which is >= e^{-t} > 0)
    if (e.lower(t_max) < 0) throw std::domain_error("exp_enclosure_poly: order too small for t_max");
    return e;
}

Poly simplify_bound(const Poly& p, Direction dir, const Integer& denom_budget) {
    if (denom_budget < 1) throw std::invalid_argument("denominator budget must be >= 1");
    std::vector<Rational> c = p.coeffs();
    for (auto& x : c)
        if (denom_budget % x.get_den() != 0) x = round_to_denominator(x, denom_budget, dir);
    return Poly(std::move(c));
}

Poly makepoly(const ExpPoly& f, unsigned order, Direction dir, const Integer& denom_budget, const Rational& t_max) {
    if (denom_budget < 1) throw std::invalid_argument("denominator budget must be >= 1");
    const ExpEnclosure e = exp_enclosure_poly(order, t_max);
    std::map<unsigned long, Poly> lo_pow, hi_pow;
    auto power = [](std::map<unsigned long, Poly>& cache, const Poly& base, unsigned long n) -> const Poly& {
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
        return cache.emplace(n, pow(base, n)).first->second;
    };
    Poly out;
    for (const auto& [k, c] : f.terms()) {
        // for a lower bound, positive terms take the lower enclosure
        const bool take_lower = (c > 0) == (dir == Direction::lower);
        const Poly& ep = take_lower ? power(lo_pow, e.lower, k.n) : power(hi_pow, e.upper, k.n);
        out += Poly::monomial(c, k.m) * ep;
    }
    // only coefficients that exceed the budget are touched here, unlike simplify_bound
    std::vector<Rational> c = out.coeffs();
    for (auto& x : c)
        if (x.get_den() > denom_budget) x = round_to_denominator(x, denom_budget, dir);
    return Poly(std::move(c));
}

}  // namespace certify
