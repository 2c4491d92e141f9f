#include "certify/exppoly.hpp"

#include "certify/constants.hpp"
#include "certify/ratfunc.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace certify {

namespace {

const Integer& fact(unsigned long n) {
    static const std::vector<Integer> table = [] {
        std::vector<Integer> t(128);
        t[0] = 1;
        for (unsigned long i = 1; i < t.size(); ++i) t[i] = t[i - 1] * i;
        return t;
    }();
    if (n >= table.size()) throw std::out_of_range("factorial table exhausted");
    return table[n];
}

// Adds c * (t^a e^{-n1 t} * t^b e^{-n2 t}) to out.
void convolve_terms(ExpPoly::Terms& out, const Rational& c, unsigned long a, unsigned long n1, unsigned long b,
                    unsigned long n2) {
    auto add = [&out](unsigned long m, unsigned long n, const Rational& v) {
        auto [it, fresh] = out.try_emplace(ExpPoly::Key{n, m}, v);
        if (!fresh) {
            it->second += v;
            if (it->second == 0) out.erase(it);
        }
    };
    const Rational ab = c * Rational(fact(a) * fact(b));
    if (n1 == n2) {
        add(a + b + 1, n1, ab / Rational(fact(a + b + 1)));
        return;
    }
    // Laplace image a! b! / ((xi+n1)^{a+1} (xi+n2)^{b+1}) split into partial fractions.
    const long d = static_cast<long>(n2) - static_cast<long>(n1);
    for (unsigned long i = 0; i <= a; ++i) {
        Rational coef = Rational(binomial(b + i, i)) / pow(Rational(d), b + 1 + i);
        if (i % 2) coef = -coef;
        const unsigned long p = a + 1 - i;
        add(p - 1, n1, ab * coef / Rational(fact(p - 1)));
    }
    for (unsigned long i = 0; i <= b; ++i) {
        Rational coef = Rational(binomial(a + i, i)) / pow(Rational(-d), a + 1 + i);
        if (i % 2) coef = -coef;
        const unsigned long p = b + 1 - i;
        add(p - 1, n2, ab * coef / Rational(fact(p - 1)));
    }
}

void merge_into(ExpPoly::Terms& dst, const ExpPoly::Terms& src) {
    for (const auto& [k, v] : src) {
        auto [it, fresh] = dst.try_emplace(k, v);
        if (!fresh) {
            it->second += v;
            if (it->second == 0) dst.erase(it);
        }
    }
}

}  // namespace

ExpPoly::ExpPoly(const Rational& constant) {
    if (constant != 0) terms_[{0, 0}] = constant;
}

ExpPoly ExpPoly::term(const Rational& c, unsigned long m, unsigned long n) {
    ExpPoly f;
    f.add_term(c, m, n);
    return f;
}

void ExpPoly::add_term(const Rational& c, unsigned long m, unsigned long n) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(Key{n, m}, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational ExpPoly::at_zero() const {
    Rational r = 0;
    for (const auto& [k, c] : terms_)
        if (k.m == 0) r += c;
    return r;
}

RationalInterval ExpPoly::operator()(const Rational& t, unsigned bits) const {
    if (terms_.empty()) return Rational(0);
    return ExpTable(t, max_rate(), bits).eval(*this);
}

double ExpPoly::eval_double(double t) const {
    double s = 0;
    for (const auto& [k, c] : terms_) s += c.get_d() * std::pow(t, static_cast<double>(k.m)) * std::exp(-double(k.n) * t);
    return s;
}

unsigned long ExpPoly::min_rate() const { return terms_.empty() ? 0 : terms_.begin()->first.n; }
unsigned long ExpPoly::max_rate() const { return terms_.empty() ? 0 : terms_.rbegin()->first.n; }

unsigned long ExpPoly::max_power() const {
    unsigned long m = 0;
    for (const auto& [k, c] : terms_) m = std::max(m, k.m);
    return m;
}

ExpPoly ExpPoly::derivative() const {
    ExpPoly d;
    for (const auto& [k, c] : terms_) {
        if (k.m > 0) d.add_term(c * Rational(static_cast<long>(k.m)), k.m - 1, k.n);
        if (k.n > 0) d.add_term(-c * Rational(static_cast<long>(k.n)), k.m, k.n);
    }
    return d;
}

ExpPoly ExpPoly::integral() const { return convolve(*this, ExpPoly(Rational(1))); }

ExpPoly ExpPoly::tail_integral(unsigned long rate) const {
    // e^{rate t} int_t^inf s^m e^{-k s} ds with k = n + rate, expanded by parts
    ExpPoly r;
    for (const auto& [key, c] : terms_) {
        if (key.n + rate == 0) throw std::domain_error("tail_integral: integrand does not decay");
        const Rational k = Rational(static_cast<long>(key.n + rate));
        for (unsigned long i = 0; i <= key.m; ++i)
            r.add_term(c * Rational(fact(key.m)) / Rational(fact(key.m - i)) / pow(k, i + 1), key.m - i, key.n);
    }
    return r;
}

ExpPoly ExpPoly::positive_part() const {
    ExpPoly r;
    for (const auto& [k, c] : terms_)
        if (c > 0) r.terms_.emplace(k, c);
    return r;
}

ExpPoly ExpPoly::negative_part() const {
    ExpPoly r;
    for (const auto& [k, c] : terms_)
        if (c < 0) r.terms_.emplace(k, c);
    return r;
}

ExpPoly ExpPoly::rounded(const Integer& denominator, Direction dir) const {
    ExpPoly r;
    for (const auto& [k, c] : terms_) r.add_term(round_to_denominator(c, denominator, dir), k.m, k.n);
    return r;
}

RationalFunction ExpPoly::laplace() const {
    RationalFunction r;
    for (const auto& [k, c] : terms_)
        r += RationalFunction::pole(k.n, static_cast<unsigned>(k.m + 1), c * Rational(fact(k.m)));
    return r;
}

Rational ExpPoly::sup_bound(const Rational& a, const Rational& b) const {
    if (a < 0 || b < a) throw std::domain_error("sup_bound needs 0 <= a <= b");
    Rational s = 0;
    for (const auto& [k, c] : terms_) {
        if (c <= 0) continue;
        Rational e = k.n == 0 ? Rational(1) : exp_neg_enclosure(a * Rational(static_cast<long>(k.n)), 128).hi();
        s += c * pow(b, k.m) * e;
    }
    return s;
}

RationalInterval ExpPoly::range(const Rational& a, const Rational& b, unsigned bits) const {
    const unsigned long rate = is_zero() ? 0 : max_rate();
    return ExpTable::range(*this, ExpTable(a, rate, bits), ExpTable(b, rate, bits));
}

ExpPoly ExpPoly::operator-() const {
    ExpPoly r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& o) {
    merge_into(terms_, o.terms_);
    return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(-c, k.m, k.n);
    return *this;
}

ExpPoly& ExpPoly::operator*=(const Rational& s) {
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
}

ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
    ExpPoly r;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) r.add_term(ca * cb, ka.m + kb.m, ka.n + kb.n);
    return r;
}

ExpPoly convolve_serial(const ExpPoly& f, const ExpPoly& g) {
    ExpPoly::Terms out;
    for (const auto& [ka, ca] : f.terms())
        for (const auto& [kb, cb] : g.terms()) convolve_terms(out, ca * cb, ka.m, ka.n, kb.m, kb.n);
    ExpPoly r;
    for (const auto& [k, c] : out) r.add_term(c, k.m, k.n);
    return r;
}

ExpPoly convolve(const ExpPoly& f, const ExpPoly& g) {
    if (f.size() * g.size() < 256) return convolve_serial(f, g);
    const ExpPoly& outer = f.size() >= g.size() ? f : g;
    const ExpPoly& inner = f.size() >= g.size() ? g : f;
    std::vector<std::pair<ExpPoly::Key, Rational>> rows(outer.terms().begin(), outer.terms().end());
    const long nrows = static_cast<long>(rows.size());
    ExpPoly::Terms out;
#pragma omp parallel
    {
        ExpPoly::Terms local;
#pragma omp for schedule(dynamic, 4)
        for (long i = 0; i < nrows; ++i) {
            const auto& [ka, ca] = rows[static_cast<std::size_t>(i)];
            for (const auto& [kb, cb] : inner.terms()) convolve_terms(local, ca * cb, ka.m, ka.n, kb.m, kb.n);
        }
#pragma omp critical
        merge_into(out, local);
    }
    ExpPoly r;
    for (const auto& [k, c] : out) r.add_term(c, k.m, k.n);
    return r;
}

ExpPoly duhamel(unsigned long rate, const Rational& y0, const ExpPoly& forcing) {
    return ExpPoly::exp(rate, y0) + convolve(ExpPoly::exp(rate), forcing);
}

ExpTable::ExpTable(const Rational& t, unsigned long max_rate, unsigned bits) : t_(t), bits_(bits) {
    if (t < 0) throw std::domain_error("ExpTable needs t >= 0");
    const unsigned work = bits + 32;
    pow_.reserve(max_rate + 1);
    pow_.emplace_back(Rational(1));
    if (max_rate == 0) return;
    const RationalInterval e = exp_neg_enclosure(t, work);
    pow_.push_back(e);
    for (unsigned long n = 2; n <= max_rate; ++n) pow_.push_back((pow_.back() * e).outward(work));
    for (auto& p : pow_) p = p.outward(bits);
}

RationalInterval ExpTable::eval(const ExpPoly& f) const {
    Rational lo = 0, hi = 0;
    for (const auto& [k, c] : f.terms()) {
        if (k.n >= pow_.size()) throw std::out_of_range("ExpTable rate out of range");
        const Rational w = c * pow(t_, k.m);
        const RationalInterval& e = pow_[k.n];
        if (w >= 0) {
            lo += w * e.lo();
            hi += w * e.hi();
        } else {
            lo += w * e.hi();
            hi += w * e.lo();
        }
    }
    return {lo, hi};
}

RationalInterval ExpTable::range(const ExpPoly& f, const ExpTable& a, const ExpTable& b) {
    if (b.t_ < a.t_ || a.t_ < 0) throw std::domain_error("range needs 0 <= a <= b");
    Rational lo = 0, hi = 0;
    for (const auto& [k, c] : f.terms()) {
        if (k.n >= a.pow_.size() || k.n >= b.pow_.size()) throw std::out_of_range("ExpTable rate out of range");
        // the term lies in c [a^m e^{-nb}, b^m e^{-na}]
        const Rational small = pow(a.t_, k.m) * b.pow_[k.n].lo();
        const Rational large = pow(b.t_, k.m) * a.pow_[k.n].hi();
        if (c >= 0) {
            lo += c * small;
            hi += c * large;
        } else {
            lo += c * large;
            hi += c * small;
        }
    }
    return {lo, hi};
}

Rational ExpTable::eval_lower(const ExpPoly& f) const {
    Rational lo = 0;
    for (const auto& [k, c] : f.terms()) {
        if (k.n >= pow_.size()) throw std::out_of_range("ExpTable rate out of range");
        const Rational w = c * pow(t_, k.m);
        lo += w * (w >= 0 ? pow_[k.n].lo() : pow_[k.n].hi());
    }
    return lo;
}

}  // namespace certify
