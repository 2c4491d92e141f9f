#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "certify/constants.hpp"
#include "certify/shorttime.hpp"

#include <cmath>

using namespace certify;

namespace {

const ProfileBounds& profile() {
    static const ProfileBounds pb = run_profile(ProfileConfig{});
    return pb;
}

const WeightRecursion& weights() {
    static const WeightRecursion w = weight_recursion(25);
    return w;
}

const PQPair& pq() {
    static const PQPair p = pq_pair(weights());
    return p;
}

const VolterraBounds& volterra() {
    static const VolterraBounds v = assemble_g_and_K2(profile(), weights(), pq());
    return v;
}

const PicardIterates& iterates() {
    static const PicardIterates P = picard(volterra().g, volterra().K2, volterra().K2_floor, Integer(1000000));
    return P;
}

// (2/pi) int_0^inf (1 + e^{8r} g^2)^{-M} (g^2/(1+g^2))^N g^{-2} dg by
// the substitution g = tan(theta) and composite Simpson
double eta_numeric(double r, long M, long N) {
    const int n = 20000;
    const double h = (M_PI / 2) / n, e = std::exp(8 * r);
    auto f = [&](double th) {
        if (th <= 0) return N == 1 ? 1.0 : 0.0;
        const double g = std::tan(th), g2 = g * g, c2 = std::cos(th) * std::cos(th);
        // dg = sec^2 dtheta, beta = sin^2
        return std::pow(1 + e * g2, -double(M)) * std::pow(std::sin(th), 2.0 * N) / g2 / c2;
    };
    double s = f(0) + f(M_PI / 2 - 1e-12);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4 : 2) * f(i * h);
    return (2 / M_PI) * s * h / 3;
}

std::vector<Rational> grid(const Rational& lo, const Rational& hi, int n) {
    std::vector<Rational> g;
    for (int i = 0; i <= n; ++i) g.push_back(lo + (hi - lo) * i / n);
    return g;
}

}  // namespace

TEST_CASE("eta bounds bracket quadrature") {
    for (EtaVariant v : {EtaVariant::sharp, EtaVariant::paper}) {
        for (long N : {1L, 2L, 4L}) {
            const EtaBound e = eta_bounds(26, N, v);
            for (double r : {0.0, 0.05, 0.2, 0.6}) {
                const double q = eta_numeric(r, 26, N);
                CHECK(e.lower.eval_double(r) <= q * (1 + 1e-7));
                CHECK(q <= e.upper.eval_double(r) * (1 + 1e-7));
            }
        }
    }
}

TEST_CASE("sharp eta bounds are tight for N = 1") {
    const EtaBound e = eta_bounds(26, 1);
    // c_1^(26) / c_1^(25) = 51/52
    CHECK(e.lower.at_zero() / e.upper.at_zero() == rat(51, 52));
    CHECK(e.lower.min_rate() == 4);
}

TEST_CASE("paper eta lower bound at r = 0") {
    const long M = 26, N = 3;
    const EtaBound e = eta_bounds(M, N, EtaVariant::paper);
    const RationalInterval pi = pi_enclosure(rat(1, 1000000));
    const Rational p2 = Rational(Integer(1) << (M + N));
    // (2/pi) 2^{-M-N}/(2M+1), with 2/pi rounded down
    CHECK(e.lower.at_zero() <= 2 / pi.lo() / p2 / (2 * M + 1));
    CHECK(e.lower.at_zero() >= 2 / pi.hi() / p2 / (2 * M + 1));
}

TEST_CASE("alpha and beta envelopes are ordered") {
    const std::vector<Rational> g = grid(Rational(0), rat(3, 2), 30);
    for (long N : {1L, 2L, 4L}) {
        for (EtaVariant v : {EtaVariant::sharp, EtaVariant::paper}) {
            const AlphaBeta ab = alphabeta_bounds(pq(), N, v);
            CHECK(ab.alpha.spot_check(g) == -1);
            CHECK(ab.beta.spot_check(g) == -1);
        }
    }
    // without coupling the lower bounds are convolutions of nonnegative data
    const AlphaBeta ab = alphabeta_bounds(pq(), eta_bounds(26, 1));
    for (const Rational& t : g) CHECK(ab.beta.lower(t).hi() >= 0);
}

TEST_CASE("initial-data part of g") {
    const VolterraBounds& v = volterra();
    // xi T1-hat -> F1(0) as xi -> infinity
    CHECK(v.T1.at_zero() == profile_constants::F1_at_zero());
    CHECK(profile_constants::F1_at_zero() == rat(4225, 38));
    CHECK(profile_constants::F2_at_zero() == rat(1560, 19));
    const ExpPoly inv = (RationalFunction::pole(0, 1, 130) * RationalFunction::pole(23)).inverse_laplace();
    CHECK(inv == (ExpPoly(1) - ExpPoly::exp(23)) * rat(130, 23));
}

TEST_CASE("Volterra bounds") {
    const VolterraBounds& v = volterra();
    CHECK(v.cert.passed());
    CHECK(v.g.lower.at_zero() > 0);
    const std::vector<Rational> g = grid(Rational(0), rat(3, 2), 60);
    CHECK(v.g.spot_check(g) == -1);
    CHECK(v.K2.spot_check(g) == -1);
    CHECK(v.W.spot_check(g) == -1);
    for (const Rational& t : g) {
        CHECK(v.K2_floor(t).hi() <= v.K2.upper(t).lo() + rat(1, 1000000));
        CHECK(v.K2_floor(t).lo() >= 0);
    }
    // the W bracket stays narrow where the Picard margin is smallest
    CHECK(v.W.upper(Rational(1)).hi() - v.W.lower(Rational(1)).lo() < 2);
}

TEST_CASE("Picard iterates") {
    const VolterraBounds& v = volterra();
    const PicardIterates P = picard(v.g, v.K2, v.K2_floor, 0);
    CHECK(P.P1_lower.at_zero() == P.g.lower.at_zero());
    CHECK(P.P3_lower.at_zero() == P.g.lower.at_zero());
    const RationalInterval l4 = log4_enclosure();
    for (const Rational& t : grid(Rational(0), l4.lo(), 100)) {
        const unsigned long rate = std::max(P.P1_lower.max_rate(), P.P3_lower.max_rate());
        const ExpTable e(t, rate, 128);
        CHECK(e.eval(P.P1_lower).lo() <= e.eval(P.P3_lower).hi());
        CHECK(e.eval(P.P3_lower).lo() <= e.eval(P.P2_upper).hi());
    }
}

TEST_CASE("rounded iterates stay below the exact ones") {
    const VolterraBounds& v = volterra();
    const PicardIterates exact = picard(v.g, v.K2, v.K2_floor, 0);
    const PicardIterates& P = iterates();
    for (const Rational& t : grid(Rational(0), rat(3, 2), 20)) {
        const ExpTable e(t, std::max(exact.P3_lower.max_rate(), P.P3_lower.max_rate()), 128);
        CHECK(e.eval(P.P1_lower).hi() <= e.eval(exact.P1_lower).lo() + rat(1, 1000000000));
        CHECK(e.eval(P.P3_lower).hi() <= e.eval(exact.P3_lower).lo() + rat(1, 1000000000));
    }
}

TEST_CASE("Picard with a zero kernel returns g") {
    BoundPair K0;
    const PicardIterates P = picard(volterra().g, K0, ExpPoly(), 0);
    CHECK(P.P1_lower == volterra().g.lower);
    CHECK(P.P3_lower == volterra().g.lower);
    CHECK(P.P2_upper == volterra().g.upper);
}

TEST_CASE("time-domain iterate matches the Laplace side") {
    const VolterraBounds& v = volterra();
    const PicardIterates P = picard(v.g, v.K2, v.K2_floor, 0);
    const RationalFunction Kf = v.K2_floor.laplace(), Gl = v.g.lower.laplace();
    CHECK(P.P2_upper.laplace() == v.g.upper.laplace() - Kf * Gl + v.K2.upper.laplace() * v.K2.upper.laplace() * v.g.upper.laplace());
    const RationalFunction G = v.g.lower.laplace(), Ku = v.K2.upper.laplace(), Gu = v.g.upper.laplace();
    CHECK((P.P1_lower).laplace() == G - Ku * Gu);
}

TEST_CASE("log enclosures") {
    const RationalInterval l3 = log3_enclosure(), l4 = log4_enclosure();
    CHECK(l3.width() <= rat(1, 1000000000000000000));
    CHECK(to_double(l3.mid()) == doctest::Approx(std::log(3.0)).epsilon(1e-15));
    CHECK(to_double(l4.mid()) == doctest::Approx(std::log(4.0)).epsilon(1e-15));
}

TEST_CASE("P1 and P3 positivity grids") {
    const PicardIterates& P = iterates();
    const CascadeBounds cm = cascade(CascadeData::from_profile(profile(), false));
    const CascadeBounds cd = cascade(CascadeData::from_profile(profile(), true));
    const ExpPoly d = derivative_bound(cm, cd, profile_constants::c_mod());
    const RationalInterval l3 = log3_enclosure(), l4 = log4_enclosure();
    auto eval = [](const ExpPoly& f) {
        return LowerEval([&f](const Rational& t) { return ExpTable(t, f.max_rate(), 128).eval_lower(f); });
    };
    const SlopeBound slope = [&d](const Rational& a, const Rational& b) { return d.range(a, b).hi(); };
    CHECK(lipschitz_grid_check(eval(P.P1_lower), Rational(0), l3.hi(), slope).passed);
    CHECK(lipschitz_grid_check(eval(P.P3_lower), l3.lo(), l4.hi(), slope).passed);
}
