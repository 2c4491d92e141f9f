#include "certify/ratfunc.hpp"

#include <stdexcept>

namespace certify {

namespace {

Poly factor_power(unsigned long n, unsigned k) { return pow(Poly::linear(Rational(static_cast<long>(n)), 1), k); }

}  // namespace

RationalFunction::RationalFunction(Poly numerator, Poles poles) : num_(std::move(numerator)), poles_(std::move(poles)) {
    for (auto it = poles_.begin(); it != poles_.end();)
        it = it->second == 0 ? poles_.erase(it) : std::next(it);
    cancel();
}

RationalFunction RationalFunction::pole(unsigned long n, unsigned k, const Rational& c) {
    return RationalFunction(Poly(c), Poles{{n, k}});
}

Poly RationalFunction::denominator() const {
    Poly d(Rational(1));
    for (const auto& [n, k] : poles_) d = d * factor_power(n, k);
    return d;
}

void RationalFunction::cancel() {
    if (num_.is_zero()) {
        poles_.clear();
        return;
    }
    for (auto it = poles_.begin(); it != poles_.end();) {
        while (it->second > 0) {
            Rational rem;
            Poly q = num_.deflate(Rational(static_cast<long>(it->first)), rem);
            if (rem != 0) break;
            num_ = std::move(q);
            --it->second;
        }
        it = it->second == 0 ? poles_.erase(it) : std::next(it);
    }
}

Rational RationalFunction::operator()(const Rational& xi) const {
    Rational d = 1;
    for (const auto& [n, k] : poles_) d *= pow(Rational(xi + Rational(static_cast<long>(n))), k);
    if (d == 0) throw std::domain_error("rational function evaluated at a pole");
    return num_(xi) / d;
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
    if (o.num_.is_zero()) return *this;
    if (num_.is_zero()) return *this = o;
    Poles common = poles_;
    for (const auto& [n, k] : o.poles_) common[n] = std::max(common[n], k);
    Poly a = num_, b = o.num_;
    for (const auto& [n, k] : common) {
        auto ia = poles_.find(n);
        auto ib = o.poles_.find(n);
        unsigned ka = ia == poles_.end() ? 0 : ia->second;
        unsigned kb = ib == o.poles_.end() ? 0 : ib->second;
        if (k > ka) a = a * factor_power(n, k - ka);
        if (k > kb) b = b * factor_power(n, k - kb);
    }
    num_ = a + b;
    poles_ = std::move(common);
    cancel();
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
    num_ = num_ * o.num_;
    for (const auto& [n, k] : o.poles_) poles_[n] += k;
    cancel();
    return *this;
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.poles_ == b.poles_;
}

ExpPoly RationalFunction::inverse_laplace(Rational* delta) const {
    unsigned total = 0;
    for (const auto& [n, k] : poles_) total += k;
    Poly num = num_;
    Rational dirac = 0;
    if (num.degree() >= static_cast<int>(total)) {
        Poly q, r;
        Poly::divmod(num, denominator(), q, r);
        if (q.degree() > 0) throw std::domain_error("inverse_laplace: polynomial part of degree > 0");
        dirac = q.coeff(0);
        num = r;
    }
    if (delta) *delta = dirac;
    else if (dirac != 0) throw std::domain_error("inverse_laplace: Dirac part requested without a slot");

    ExpPoly out;
    for (const auto& [n, k] : poles_) {
        // h(y) = num(y - n) / prod_{m != n} (y + m - n)^{k_m}, expanded to order k - 1 in y
        const Rational shift = Rational(static_cast<long>(n));
        if (k == 1) {
            Rational d = 1;
            for (const auto& [m, km] : poles_)
                if (m != n) d *= pow(Rational(Rational(static_cast<long>(m)) - shift), km);
            out.add_term(num(Rational(-shift)) / d, 0, n);
            continue;
        }
        std::vector<Rational> h(k, Rational(0));
        Poly ny = num.shifted(-shift);
        for (unsigned i = 0; i < k; ++i) h[i] = ny.coeff(i);
        for (const auto& [m, km] : poles_) {
            if (m == n) continue;
            const Rational d = Rational(static_cast<long>(m)) - shift;
            // series of 1/(y + d) = sum_i (-1)^i y^i / d^{i+1}
            std::vector<Rational> inv(k);
            Rational p = 1 / d;
            for (unsigned i = 0; i < k; ++i) {
                inv[i] = p;
                p *= -1 / d;
            }
            for (unsigned rep = 0; rep < km; ++rep) {
                std::vector<Rational> nh(k, Rational(0));
                for (unsigned i = 0; i < k; ++i)
                    for (unsigned j = 0; i + j < k; ++j) nh[i + j] += h[i] * inv[j];
                h = std::move(nh);
            }
        }
        // h_i / y^{k-i}  ->  h_i t^{k-i-1}/(k-i-1)! e^{-n t}
        for (unsigned i = 0; i < k; ++i) {
            const unsigned long m = k - i - 1;
            out.add_term(h[i] / Rational(factorial(m)), m, n);
        }
    }
    return out;
}

}  // namespace certify
