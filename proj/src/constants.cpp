#include "certify/constants.hpp"

#include <stdexcept>

namespace certify {

namespace {

// Bracket atan(x) for 0 < x < 1 until the bracket is narrower than width.
RationalInterval atan_enclosure(const Rational& x, const Rational& width) {
    const Rational x2 = x * x;
    Rational power = x, sum = 0, prev = 0;
    for (unsigned long i = 0;; ++i) {
        prev = sum;
        Rational term = power / Rational(2 * i + 1);
        if (i % 2 == 0) sum += term; else sum -= term;
        power *= x2;
        if (i > 0 && abs(Rational(sum - prev)) < width)
            return sum < prev ? RationalInterval(sum, prev) : RationalInterval(prev, sum);
    }
}

}  // namespace

RationalInterval pi_enclosure(const Rational& target_width) {
    if (target_width <= 0) throw std::invalid_argument("pi_enclosure needs a positive width");
    // aim well below the requested width so coarse requests still give classical brackets
    const Rational w = target_width / 40960;
    RationalInterval a = atan_enclosure(rat(1, 5), w);
    RationalInterval b = atan_enclosure(rat(1, 239), w);
    return RationalInterval(Rational(16)) * a - RationalInterval(Rational(4)) * b;
}

RationalInterval log_enclosure(const Rational& x, const Rational& target_width) {
    if (x <= 0) throw std::domain_error("log of a non-positive number");
    if (x == 1) return Rational(0);
    const Rational y = (x - 1) / (x + 1);
    const Rational ay = abs(y), y2 = y * y;
    Rational power = ay, sum = 0;
    for (unsigned long i = 0;; ++i) {
        sum += power / Rational(2 * i + 1);
        power *= y2;
        // sum_{n>i} |y|^{2n+1}/(2n+1) <= power / ((2i+3)(1-y^2))
        Rational rem = power / (Rational(2 * i + 3) * (1 - y2));
        if (2 * rem < target_width) {
            RationalInterval r(Rational(2 * sum), Rational(2 * (sum + rem)));
            return y > 0 ? r : -r;
        }
    }
}

RationalInterval exp_neg_enclosure(const Rational& t, unsigned bits) {
    if (t < 0) throw std::domain_error("exp_neg_enclosure needs t >= 0");
    if (t == 0) return Rational(1);
    // reduce to s = t / 2^k <= 1/16, then square k times
    unsigned k = 0;
    Rational s = t;
    while (s > rat(1, 16)) {
        s /= 2;
        ++k;
    }
    const unsigned work = bits + 2 * k + 16;
    Rational term = 1, sum = 1, prev;
    Rational bound_width = 1;
    bound_width >>= work;
    for (unsigned long i = 1;; ++i) {
        prev = sum;
        term *= s / Rational(i);
        if (i % 2 == 1) sum -= term; else sum += term;
        if (term < bound_width) break;
    }
    RationalInterval e = sum < prev ? RationalInterval(sum, prev) : RationalInterval(prev, sum);
    e = e.outward(work);
    for (unsigned i = 0; i < k; ++i) e = (e * e).outward(work);
    return e.outward(bits);
}

RationalInterval pow_enclosure(const Rational& base, long p, long q, const Rational& target_width) {
    if (base <= 0 || q <= 0) throw std::domain_error("pow_enclosure needs base > 0 and q > 0");
    if (p == 0 || base == 1) return Rational(1);
    // r^q vs base^p; for negative p compare r^q * base^{-p} against 1
    const bool neg = p < 0;
    const unsigned long ap = static_cast<unsigned long>(neg ? -p : p);
    const Rational bp = pow(base, ap);
    auto below = [&](const Rational& r) {  // true if r < base^(p/q)
        Rational rq = pow(r, static_cast<unsigned long>(q));
        return neg ? rq * bp < 1 : rq < bp;
    };
    Rational lo = 0, hi = 1;
    while (below(hi)) hi *= 2;
    while (hi - lo > target_width) {
        Rational mid = round_dyadic((lo + hi) / 2, 64 + mpz_sizeinbase(target_width.get_den_mpz_t(), 2),
                                    Direction::lower);
        if (mid <= lo || mid >= hi) mid = (lo + hi) / 2;
        if (below(mid)) lo = mid; else hi = mid;
    }
    return {lo, hi};
}

}  // namespace certify
