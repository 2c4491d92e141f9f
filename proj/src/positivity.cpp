#include "certify/positivity.hpp"

#include "certify/exppoly.hpp"

#include <stdexcept>

namespace certify {

namespace {

constexpr std::size_t kMaxWitnesses = 200;

// values are stored rounded down, which keeps them lower bounds
void record(PositivityCertificate& c, const Rational& t, const Rational& v, bool last = false) {
    ++c.points;
    if (c.witnesses.size() < kMaxWitnesses || last) c.witnesses.emplace_back(t, round_dyadic(v, 64, Direction::lower));
}

}  // namespace

json PositivityCertificate::to_json() const {
    json w = json::array();
    for (const auto& [t, v] : witnesses) w.push_back(json{{"t", to_string(t)}, {"lower", to_string(v)}});
    return json{{"method", method}, {"lo", to_string(lo)}, {"hi", to_string(hi)}, {"passed", passed},
                {"points", points}, {"note", note}, {"witnesses", std::move(w)}};
}

PositivityCertificate sweep_positivity(const Poly& p, const Rational& lo, const Rational& hi, const Rational& step) {
    if (lo < 0 || hi < lo) throw std::invalid_argument("sweep needs 0 <= lo <= hi");
    if (step <= 0) throw std::invalid_argument("sweep step must be positive");
    PositivityCertificate c{"sweep", lo, hi, {}, 0, false, {}};
    const Poly pos = p.positive_part(), neg = p.negative_part();
    Rational t_o = lo, t_i = lo;
    const Rational v0 = p(lo);
    if (v0 <= 0) {
        record(c, lo, v0);
        c.note = "not positive at the left end";
        return c;
    }
    Rational pos_o = pos(t_o);
    Rational h = step;
    int shrinks = 0;
    while (t_i < hi) {
        Rational next = t_i + h;
        if (next > hi) next = hi;
        const Rational v = pos_o + neg(next);
        if (v > 0) {
            t_i = next;
            h = step;
            shrinks = 0;
            continue;
        }
        if (t_i > t_o) {
            // restart the outer pointer at the covered end
            record(c, t_o, pos_o + neg(t_i));
            t_o = t_i;
            pos_o = pos(t_o);
            continue;
        }
        // stalled with t_o == t_i: a smaller step may still succeed
        if (shrinks < 3) {
            h /= 10;
            ++shrinks;
            continue;
        }
        record(c, t_o, p(t_o));
        c.note = "sweep stalled";
        return c;
    }
    record(c, t_o, pos_o + neg(hi));
    c.passed = true;
    return c;
}

PositivityCertificate neglog_coeff_test(const Poly& B, long radius_inv) {
    if (radius_inv < 1) throw std::invalid_argument("radius_inv must be >= 1");
    PositivityCertificate c{"neglog_coeff", Rational(0), rat(1, radius_inv), {}, 0, false, {}};
    const auto& co = B.coeffs();
    std::size_t s = 0;
    while (s < co.size() && co[s] == 0) ++s;
    if (s == co.size()) {
        c.note = "zero polynomial";
        return c;
    }
    Rational b0 = co[s], rest = 0, r = rat(1, radius_inv), rp = 1;
    for (std::size_t n = s + 1; n < co.size(); ++n) {
        rp *= r;
        rest += abs(co[n]) * rp;
    }
    const Rational margin = b0 - rest;
    record(c, Rational(0), margin);
    c.passed = b0 > 0 && margin > 0;
    c.note = "t^" + std::to_string(s) + " factored out";
    return c;
}

PositivityCertificate lipschitz_grid_check(const LowerEval& f, const Rational& lo, const Rational& hi,
                                           const SlopeBound& L, unsigned step_bits, long max_points) {
    PositivityCertificate c{"lipschitz_grid", lo, hi, {}, 0, false, {}};
    Rational t = lo;
    while (true) {
        const Rational v = f(t);
        record(c, t, v, v <= 0 || t >= hi);
        if (v <= 0) {
            c.note = "nonpositive lower bound";
            return c;
        }
        if (t >= hi) break;
        if (c.points >= max_points) {
            c.note = "point budget exhausted";
            return c;
        }
        // step with the slope bound of a window that already contains the step
        Rational window = hi - t, slope = L(t, hi);
        Rational h = v / (2 * slope);
        while (h < window / 4 && window > Rational(1, Integer(1) << step_bits)) {
            window /= 4;
            const Rational s2 = L(t, t + window);
            if (s2 >= slope) break;
            slope = s2;
            h = v / (2 * slope);
        }
        if (h >= hi - t) {
            t = hi;
            continue;
        }
        if (h > window) h = window;
        h = round_dyadic(h, step_bits, Direction::lower);
        if (h <= 0) {
            c.note = "step underflow at t = " + to_string(round_dyadic(t, 64, Direction::lower)) + ", value " +
                     std::to_string(v.get_d()) + ", slope " + std::to_string(slope.get_d());
            return c;
        }
        t += h;
        if (t > hi) t = hi;
    }
    c.passed = true;
    return c;
}

PositivityCertificate lipschitz_grid_check(const Poly& f, const Rational& lo, const Rational& hi, const Rational& L) {
    if (L <= 0) throw std::invalid_argument("slope bound must be positive");
    return lipschitz_grid_check([&f](const Rational& t) { return f(t); }, lo, hi,
                                [L](const Rational&, const Rational&) { return L; });
}

Poly divide_out_one(const Poly& p, unsigned& r) {
    r = 0;
    Poly q = p;
    if (q.is_zero()) return q;
    while (true) {
        Rational rem;
        Poly d = q.deflate(Rational(-1), rem);  // q = (x - 1) d + q(1)
        if (rem != 0) return q;
        q = -d;
        ++r;
    }
}

PositivityCertificate exp_sum_nonnegative(const ExpPoly& f, const Rational& step) {
    if (f.is_zero()) {
        PositivityCertificate c{"sweep", Rational(0), Rational(1), {}, 0, true, "identically zero"};
        return c;
    }
    if (f.max_power() != 0) throw std::invalid_argument("exp_sum_nonnegative needs simple exponentials");
    const unsigned long n0 = f.min_rate();
    std::vector<Rational> co(f.max_rate() - n0 + 1);
    for (const auto& [k, c] : f.terms()) co[k.n - n0] = c;
    unsigned r = 0;
    const Poly q = divide_out_one(Poly(std::move(co)), r);
    PositivityCertificate c = sweep_positivity(q, Rational(0), Rational(1), step);
    c.note = "x = e^{-t}; removed x^" + std::to_string(n0) + " and (1 - x)^" + std::to_string(r) +
             (c.note.empty() ? "" : "; " + c.note);
    return c;
}

}  // namespace certify
