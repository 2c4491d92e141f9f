#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "certify/longtime.hpp"

#include <random>

using namespace certify;

namespace {

const ProfileBounds& profile() {
    static const ProfileBounds pb = run_profile(ProfileConfig{});
    return pb;
}

const LaplaceAtMinusOne& laplace() {
    static const LaplaceAtMinusOne lap = laplace_minus_one(profile());
    return lap;
}

}  // namespace

TEST_CASE("cascade starts at the initial data") {
    const CascadeData d = CascadeData::from_profile(profile(), false);
    const CascadeBounds c = cascade(d);
    CHECK(c.int_g1.at_zero() == d.int_g1);
    CHECK(c.g_bar_sum.at_zero() == d.g1_bar + d.g2_bar);
    CHECK(c.g1_bar.at_zero() == d.g1_bar);
    CHECK(c.g2_zero.at_zero() == d.g2_zero);
    CHECK(c.g1_zero.at_zero() == d.g1_zero);
    CHECK(c.theta2_zero.at_zero() == d.theta2_zero);
    CHECK(c.theta1_zero.at_zero() == d.theta1_zero);
    CHECK(c.avg.at_zero() == d.theta1_zero + d.int_g1 + d.g1_zero + d.g1_bar);
}

TEST_CASE("cascade envelopes solve their differential equations") {
    const CascadeBounds c = cascade(CascadeData::from_profile(profile(), false));
    CHECK(c.g_bar_sum.derivative() + c.g_bar_sum * Rational(4) == c.int_g1 * Rational(10));
    CHECK(c.g1_bar.derivative() + c.g1_bar * Rational(27) == c.g_bar_sum * Rational(13));
    CHECK(c.g2_zero.derivative() + c.g2_zero * Rational(17) == (c.int_g1 + c.g1_bar) * Rational(10));
    CHECK(c.g1_zero.derivative() + c.g1_zero * Rational(14) == c.g2_zero * Rational(13));
    CHECK(c.theta2_zero.derivative() + c.theta2_zero * Rational(9) == c.avg_bar * Rational(10));
    CHECK(c.theta1_zero.derivative() + c.theta1_zero * Rational(6) == c.theta2_zero * Rational(13));
    CHECK(c.int_g1.derivative() == c.int_g1 * Rational(-23));
}

TEST_CASE("cascade envelopes decay at rate 4 or faster") {
    for (bool td : {false, true}) {
        const CascadeBounds c = cascade(CascadeData::from_profile(profile(), td));
        CHECK(c.avg.min_rate() >= 4);
        CHECK(c.g_bar_sum.min_rate() == 4);
        for (long n : {0L, 1L, 5L, 20L}) CHECK(c.avg(rat(n, 4)).lo() > 0);
    }
}

TEST_CASE("zero initial data gives zero envelopes") {
    const CascadeBounds c = cascade(CascadeData{});
    CHECK(c.avg.is_zero());
    CHECK(c.g_bar_sum.is_zero());
    CHECK(c.theta1_zero.is_zero());
}

TEST_CASE("modulation constant") {
    CHECK(26 * profile_constants::c_mod() == rat(3081, 23));
}

TEST_CASE("horizontal tail dominates long partial sums") {
    // x_j = x_N (N+1)/(j+1) decays faster than the required ((j+1)/(N+1))^{-0.85}
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> kd(1, 6), nd(40, 120);
    const long extra = 3000;
    const BetaTable c(120 + extra, 6, 128);
    for (int trial = 0; trial < 12; ++trial) {
        const long k = kd(rng), N = nd(rng);
        const Rational xN = rat(3, 2);
        Rational partial = 0;
        for (long j = N; j <= N + extra; ++j) partial += xN * Rational(N + 1) / (j + 1) * c(j, k).lo();
        const RationalInterval tail = horizontal_tail(k, N, xN, c(N, k));
        CHECK(partial <= tail.hi());
        // not wildly pessimistic for the decaying rows
        if (k >= 3) CHECK(tail.hi() <= 4 * partial);
    }
}

TEST_CASE("Laplace value at -1") {
    const LaplaceAtMinusOne& lap = laplace();
    CHECK(lap.cert.passed());
    CHECK(lap.value.lo() >= rat(-456, 10));
    CHECK(lap.value.width() <= 1);
    CHECK(lap.value.hi() < 0);
    CHECK(lap.S.hi() < 0);
    CHECK(lap.K2hat.lo() > 0);
    const LaplaceAtMinusOne back = LaplaceAtMinusOne::from_json(lap.to_json());
    CHECK(back.value.lo() == lap.value.lo());
    CHECK(back.value.hi() == lap.value.hi());
}

TEST_CASE("Laplace enclosure tightens with the first-row cutoff") {
    LaplaceConfig coarse;
    coarse.N1 = 1000;
    const LaplaceAtMinusOne a = laplace_minus_one(profile(), coarse);
    const LaplaceAtMinusOne& b = laplace();
    CHECK(b.value.width() <= a.value.width());
    CHECK(b.value.lo() <= a.value.hi());
    CHECK(a.value.lo() <= b.value.hi());
}

TEST_CASE("long-time lower bound") {
    const CascadeBounds cb = cascade(CascadeData::from_profile(profile(), false));
    const Rational c = profile_constants::c_mod();
    const ExpPoly u = upsilon_lower(cb, laplace(), c);
    CHECK(u == ExpPoly::exp(1, 26 * c + laplace().value.lo()) - cb.avg - cb.avg.tail_integral(1));
    const LongtimeResult r = longtime_positivity(cb, laplace(), c);
    CHECK(r.neglog.passed);
    CHECK(r.crossing_lo < r.crossing_hi);
    CHECK(r.crossing_hi < log(4.0));
    // positive at a few points beyond log 4
    for (long n : {14L, 20L, 30L, 60L}) CHECK(u(rat(n, 10)).lo() > 0);
}
