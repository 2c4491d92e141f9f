#include "certify/rational.hpp"

namespace certify {

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
    if (s.find('/') != std::string::npos || s.find_first_of(".eE") == std::string::npos) {
        Rational q;
        if (s.empty() || q.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: " + s);
        if (q.get_den() == 0) throw std::domain_error("rational with zero denominator: " + s);
        q.canonicalize();
        return q;
    }
    // decimal with optional exponent, read exactly
    std::string mant = s;
    long exp10 = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string::npos) {
        mant = s.substr(0, e);
        std::size_t used = 0;
        const std::string ex = s.substr(e + 1);
        try {
            exp10 = std::stol(ex, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("not a rational: " + s);
        }
        if (used != ex.size()) throw std::invalid_argument("not a rational: " + s);
    }
    if (const auto dot = mant.find('.'); dot != std::string::npos) {
        exp10 -= static_cast<long>(mant.size() - dot - 1);
        mant.erase(dot, 1);
    }
    if (!mant.empty() && mant.front() == '+') mant.erase(0, 1);
    Integer m;
    if (mant.empty() || mant == "-" || m.set_str(mant, 10) != 0) throw std::invalid_argument("not a rational: " + s);
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    Rational q = exp10 >= 0 ? Rational(m * p) : Rational(m, p);
    q.canonicalize();
    return q;
}

Rational divide(const Rational& a, const Rational& b) {
    if (b == 0) throw std::domain_error("division by zero");
    return a / b;
}

Integer floor_int(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer ceil_int(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Rational round_dyadic(const Rational& q, unsigned bits, Direction dir) {
    const mpz_srcptr den = q.get_den_mpz_t();
    if (mpz_popcount(den) == 1 && mpz_sizeinbase(den, 2) - 1 <= bits) return q;
    Integer scale = 1;
    scale <<= bits;
    return round_to_denominator(q, scale, dir);
}

Rational round_to_denominator(const Rational& q, const Integer& denominator, Direction dir) {
    Rational scaled = q * Rational(denominator);
    Integer n = dir == Direction::lower ? floor_int(scaled) : ceil_int(scaled);
    return rat(n, denominator);
}

Rational pow(const Rational& q, unsigned long e) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
    return r;
}

Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

double to_double(const Rational& q) { return q.get_d(); }

std::size_t digit_count(const Rational& q) {
    return mpz_sizeinbase(q.get_num_mpz_t(), 10) + mpz_sizeinbase(q.get_den_mpz_t(), 10);
}

}  // namespace certify
