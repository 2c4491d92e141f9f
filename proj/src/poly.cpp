#include "certify/poly.hpp"

#include <stdexcept>

namespace certify {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly::Poly(const Rational& constant) {
    if (constant != 0) c_.push_back(constant);
}

Poly Poly::monomial(const Rational& c, std::size_t power) {
    std::vector<Rational> v(power + 1, Rational(0));
    v[power] = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::operator()(const Rational& x) const {
    Rational r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

RationalInterval Poly::operator()(const RationalInterval& x) const {
    if (x.is_point()) return (*this)(x.lo());
    // Horner in interval arithmetic; valid but may overestimate
    RationalInterval r = Rational(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + RationalInterval(*it);
    return r;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return Poly(std::move(d));
}

Poly Poly::shifted(const Rational& a) const {
    // Taylor shift by repeated synthetic division
    std::vector<Rational> v = c_;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j > i; --j) v[j - 1] += a * v[j];
    return Poly(std::move(v));
}

Poly Poly::scaled_argument(const Rational& s) const {
    std::vector<Rational> v = c_;
    Rational p = 1;
    for (auto& c : v) {
        c *= p;
        p *= s;
    }
    return Poly(std::move(v));
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator*=(const Rational& s) {
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& c : c_) c *= s;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(v));
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem = a.c_;
    const int db = b.degree();
    std::vector<Rational> quo(a.degree() >= db ? a.degree() - db + 1 : 0, Rational(0));
    const Rational lead = b.c_.back();
    for (int i = a.degree(); i >= db; --i) {
        Rational f = rem[i] / lead;
        quo[i - db] = f;
        if (f == 0) continue;
        for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.c_[j];
    }
    rem.resize(db > 0 ? std::min<std::size_t>(rem.size(), db) : 0);
    q = Poly(std::move(quo));
    r = Poly(std::move(rem));
}

Poly Poly::deflate(const Rational& root, Rational& rem) const {
    // divide by (x + root): synthetic division at x = -root
    if (c_.empty()) {
        rem = 0;
        return {};
    }
    std::vector<Rational> q(c_.size() - 1);
    Rational acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) {
        acc = acc * Rational(-root) + c_[i];
        if (i > 0) q[i - 1] = acc;
    }
    rem = acc;
    return Poly(std::move(q));
}

Poly Poly::positive_part() const {
    std::vector<Rational> v = c_;
    for (auto& c : v)
        if (c < 0) c = 0;
    return Poly(std::move(v));
}

Poly Poly::negative_part() const {
    std::vector<Rational> v = c_;
    for (auto& c : v)
        if (c > 0) c = 0;
    return Poly(std::move(v));
}

Poly pow(const Poly& p, unsigned long e) {
    Poly r(Rational(1)), b = p;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

}  // namespace certify
