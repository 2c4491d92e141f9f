#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "certify/profile.hpp"

#include <cmath>
#include <random>

using namespace certify;

namespace {

Rational pt(const RationalInterval& x) {
    REQUIRE(x.is_point());
    return x.lo();
}

const ProfileSeries& exact60() {
    static const ProfileSeries p = profile_recursion(60, 0);
    return p;
}

}  // namespace

TEST_CASE("profile constants") {
    namespace pc = profile_constants;
    CHECK(pc::A() == rat(-351, 19));
    CHECK(pc::gamma1_at_zero() == rat(845, 19));
    CHECK(pc::gamma2_at_zero() == rat(390, 19));
    CHECK(pc::F1_at_zero() == rat(13 * 13 * 5 * 5, 2 * 19));
    CHECK(pc::F2_at_zero() == rat(1560, 19));
    CHECK(pc::gamma1_at_zero() > 44);
    CHECK(pc::gamma1_at_zero() < 45);
    CHECK(pc::gamma2_at_zero() > 20);
    CHECK(pc::gamma2_at_zero() < 21);
}

TEST_CASE("recursion base case and W_2") {
    const ProfileSeries& p = exact60();
    CHECK(pt(p.a[0]) == 0);
    CHECK(pt(p.b[0]) == 0);
    CHECK(pt(p.a[1]) == rat(-845, 38));
    CHECK(pt(p.b[1]) == rat(-455, 19));
    const Mat2 w = W_matrix(2);
    CHECK(w.m[0][0] == rat(1, 6));
    CHECK(w.m[0][1] == rat(26, 105));
    CHECK(w.m[1][0] == rat(-1, 3));
    CHECK(w.m[1][1] == rat(44, 105));
}

TEST_CASE("recursion satisfies M_k v_k = N_k v_{k-1} exactly") {
    const ProfileSeries& p = exact60();
    for (long k = 2; k <= p.K(); ++k) {
        const Mat2 M = M_matrix(k), N = N_matrix(k);
        const Rational a = pt(p.a[k]), b = pt(p.b[k]), a0 = pt(p.a[k - 1]), b0 = pt(p.b[k - 1]);
        CHECK(M.m[0][0] * a + M.m[0][1] * b == N.m[0][0] * a0 + N.m[0][1] * b0);
        CHECK(M.m[1][0] * a + M.m[1][1] * b == N.m[1][0] * a0 + N.m[1][1] * b0);
    }
}

TEST_CASE("F* coefficients agree with 2 gamma d/dgamma + 5/2 applied to the series") {
    // gamma d/dgamma beta^k = 2k beta^k - 2k beta^{k+1}
    const ProfileSeries& p = exact60();
    const DerivedCoefficients d = derived_coefficients(p);
    for (long k = 1; k <= p.K(); ++k) {
        const Rational direct = rat(5, 2) * pt(p.a[k]) + 4 * k * pt(p.a[k]) - 4 * (k - 1) * pt(p.a[k - 1]);
        CHECK(pt(d.af[k]) == direct);
        const Rational direct2 = 4 * pt(p.b[k]) + 4 * k * pt(p.b[k]) - 4 * (k - 1) * pt(p.b[k - 1]);
        CHECK(pt(d.bf[k]) == direct2);
        CHECK(pt(d.afm[k]) == pt(d.af[k]) - rat(237, 46) * pt(p.a[k]));
    }
}

TEST_CASE("time derivative data: first component equals (39/2) Gamma2") {
    const ProfileSeries& p = exact60();
    const DerivedCoefficients d = derived_coefficients(p);
    for (long k = 1; k <= p.K(); ++k) {
        const Rational m1 =
            -(8 * k + 6) * pt(d.afm[k]) + 8 * (k - 1) * pt(d.afm[k - 1]) + 13 * pt(d.bfm[k]);
        CHECK(m1 == rat(39, 2) * pt(p.b[k]));
    }
    namespace pc = profile_constants;
    const Rational c = pc::c_mod();
    const Rational M10 = -6 * (pc::F1_at_zero() - c * pc::gamma1_at_zero()) + 13 * (pc::F2_at_zero() - c * pc::gamma2_at_zero());
    CHECK(M10 == rat(39, 2) * pc::gamma2_at_zero());
}

TEST_CASE("truncated invariant equals its boundary term") {
    const ProfileSeries& p = exact60();
    const DerivedCoefficients d = derived_coefficients(p);
    const BetaTable table(0, 61);
    const auto [s1, c1] = invariant_partial(p, d, table, 1);
    CHECK(pt(s1) == rat(-42900, 437));
    CHECK(pt(c1) == pt(s1));
    for (long K = 2; K <= 60; ++K) {
        const auto [s, closed] = invariant_partial(p, d, table, K);
        CHECK(pt(s) == pt(closed));
    }
    // the boundary term shrinks
    const auto [s60, c60] = invariant_partial(p, d, table, 60);
    CHECK(abs(pt(s60)) < abs(pt(s1)) / 20);
}

TEST_CASE("beta table") {
    const BetaTable t(40, 60);
    CHECK(pt(t(0, 1)) == 1);
    CHECK(pt(t(0, 2)) == rat(1, 2));
    CHECK(pt(t(1, 1)) == rat(1, 2));
    for (long j = 0; j <= 40; ++j)
        for (long k = 1; k <= 60; ++k) {
            CHECK(pt(t(j, k)) > 0);
            if (j > 0) CHECK(pt(t(j, k)) < pt(t(j - 1, k)));
            if (k > 1) CHECK(pt(t(j, k)) < pt(t(j, k - 1)));
        }
    // column sums telescope: sum_{k >= K} c_k^(j) = c_K^(j-1), checked on partial sums
    Rational partial = 0;
    for (long k = 5; k <= 60; ++k) partial += pt(t(3, k));
    CHECK(partial < pt(t(2, 5)));
    // closed form Gamma(j+1/2) Gamma(k-1/2) / (pi Gamma(j+k))
    std::mt19937 rng(7);
    for (int i = 0; i < 20; ++i) {
        const long j = std::uniform_int_distribution<long>(0, 40)(rng), k = std::uniform_int_distribution<long>(1, 60)(rng);
        const double lg = std::lgamma(j + 0.5) + std::lgamma(k - 0.5) - std::lgamma(double(j + k)) - std::log(M_PI);
        CHECK(to_double(pt(t(j, k))) == doctest::Approx(std::exp(lg)).epsilon(1e-9));
    }
}

TEST_CASE("beta table in dyadic mode encloses the exact table") {
    const BetaTable ex(10, 200), dy(10, 200, 96);
    for (long j = 0; j <= 10; ++j)
        for (long k = 1; k <= 200; k += 7) CHECK(dy(j, k).contains(pt(ex(j, k))));
}

TEST_CASE("dyadic recursion encloses the exact coefficients") {
    const ProfileSeries ex = profile_recursion(200, 0), dy = profile_recursion(200, 128);
    for (long k = 0; k <= 200; ++k) {
        CHECK(dy.a[k].contains(pt(ex.a[k])));
        CHECK(dy.b[k].contains(pt(ex.b[k])));
        CHECK(dy.a[k].width() < Rational(1, Integer(1) << 100));
    }
}

TEST_CASE("eigenvalue test") {
    // identity with s0 = 1 is the boundary case
    CHECK(eigen_below(1, 0, 1, 1));
    CHECK_FALSE(eigen_below(1, 0, 1, rat(99, 100)));
    // [[2,1],[1,2]] has eigenvalues 1 and 3
    CHECK(eigen_below(2, 1, 2, 3));
    CHECK_FALSE(eigen_below(2, 1, 2, rat(299, 100)));
}

TEST_CASE("spectral gap: literal index fails at k = 4, shifted index holds") {
    const Certificate lit = spectral_gap_check(4, 400);
    CHECK_FALSE(lit.passed());
    CHECK(lit.entries()[0].witness["first_failure"] == 4);
    CHECK(lit.entries()[0].witness["last_failure"] == 167);
    CHECK(spectral_gap_check(168, 600).passed());
    // the norm of W_5 is about 0.763, above 1 - 1.1/4 = 0.725 but below 1 - 1.1/5
    const Mat2 w5 = W_matrix(5);
    auto norm2 = [](const Mat2& w) {
        const double a = to_double(w.m[0][0]), b = to_double(w.m[0][1]), c = to_double(w.m[1][0]), d = to_double(w.m[1][1]);
        const double g11 = a * a + c * c, g12 = a * b + c * d, g22 = b * b + d * d;
        return std::sqrt((g11 + g22) / 2 + std::sqrt((g11 - g22) * (g11 - g22) / 4 + g12 * g12));
    };
    CHECK(norm2(w5) == doctest::Approx(0.7629).epsilon(1e-3));
    CHECK(weighted_gap_certificate({rat(11, 10), Rational(1), 4}, 200).passed());
    CHECK(weighted_gap_certificate(tail_gap(), 30).passed());
    // the weighted rate fails below 14
    CHECK_FALSE(weighted_gap_certificate({rat(8, 5), Rational(4), 13}, 30).passed());
}

TEST_CASE("tail_bound") {
    const RationalInterval base(rat(1, 3), rat(1, 2));
    CHECK(tail_bound(100, 100, base).hi() == rat(1, 2));
    const RationalInterval t = tail_bound(5000, 10000, Rational(1));
    CHECK(t.hi() < rat(467, 1000));
    CHECK(t.hi() > rat(466, 1000));
    CHECK_THROWS(tail_bound(100, 99, base));
}

TEST_CASE("sqrt bounds") {
    CHECK(sqrt_lower(4, 20) <= 2);
    CHECK(sqrt_upper(4, 20) >= 2);
    const Rational u = sqrt_upper(2, 40), l = sqrt_lower(2, 40);
    CHECK(u * u >= 2);
    CHECK(l * l <= 2);
    CHECK(u - l <= Rational(1, Integer(1) << 39));
}

TEST_CASE("full profile bounds at K = 5000") {
    ProfileConfig cfg;
    const ProfileBounds pb = run_profile(cfg);
    for (const auto& e : pb.cert.entries()) {
        INFO(e.claim);
        CHECK(e.passed);
    }
    CHECK(pb.at("E1").hi() <= rat(1, 2));
    CHECK(pb.at("E2").hi() <= rat(1, 2));
    CHECK(pb.at("Gam1bar_sup").hi() <= 50);
    CHECK(pb.at("Gamb10").hi() <= 32);
    // the exact identities of the integrals
    CHECK((pb.I[0] * Rational(10) - pb.J[0] * Rational(13)).contains(Rational(0)));
    // tightening the truncation shrinks every enclosure; below 2^-240 the
    // width is 2^-256 rounding noise, which grows with the number of terms
    ProfileConfig small = cfg;
    small.K = 1000;
    const ProfileBounds ps = run_profile(small);
    const Rational noise = Rational(1, Integer(1) << 240);
    for (long j = 0; j <= cfg.J_integrals; ++j) {
        CHECK(pb.Ifmod[j].width() <= std::max<Rational>(ps.Ifmod[j].width(), noise));
        CHECK(pb.Jf[j].width() <= std::max<Rational>(ps.Jf[j].width(), noise));
        CHECK((pb.I[j].lo() <= ps.I[j].hi() && ps.I[j].lo() <= pb.I[j].hi()));
    }
    // Jfmod_j = 5 (I_{j+1} + A c_1^(j)) - (1/2 + c) J_j
    const BetaTable t(cfg.J_integrals + 1, 2);
    const Rational c = profile_constants::c_mod();
    for (long j = 0; j < cfg.J_integrals; ++j) {
        const RationalInterval rhs = (pb.I[j + 1] + t(j, 1) * profile_constants::A()) * Rational(5) -
                                     pb.J[j] * Rational(rat(1, 2) + c);
        CHECK(rhs.contains(pb.Jfmod[j].mid()));
    }
    // serialization round trip
    const ProfileBounds back = ProfileBounds::from_json(pb.to_json());
    CHECK(back.to_json() == pb.to_json());
}
