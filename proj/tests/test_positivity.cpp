#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "certify/positivity.hpp"

#include <random>

using namespace certify;

TEST_CASE("sweep examples") {
    const Poly p({Rational(1), Rational(1), rat(-1, 2)});
    CHECK(sweep_positivity(p, 0, 1, rat(1, 100)).passed);
    CHECK(sweep_positivity(Poly(Rational(1)), 0, 1, rat(1, 100)).passed);
    CHECK_FALSE(sweep_positivity(Poly({Rational(1), Rational(-2)}), 0, 1, rat(1, 100)).passed);
    CHECK_THROWS(sweep_positivity(p, -1, 1, rat(1, 100)));
}

TEST_CASE("sweep soundness on random polynomials") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> coef(-20, 20);
    int passed = 0;
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Rational> c(6);
        for (auto& x : c) x = coef(rng);
        c[0] = abs(c[0]) + 5;
        const Poly p(c);
        const PositivityCertificate cert = sweep_positivity(p, 0, 1, rat(1, 100));
        // the monotone split holds coefficient-wise
        const Poly pos = p.positive_part(), neg = p.negative_part();
        for (const auto& x : pos.coeffs()) CHECK(x >= 0);
        for (const auto& x : neg.coeffs()) CHECK(x <= 0);
        CHECK(pos + neg == p);
        if (!cert.passed) continue;
        ++passed;
        std::uniform_int_distribution<long> num(0, 1000000);
        for (int i = 0; i < 1000; ++i) CHECK(p(rat(num(rng), 1000000)) > 0);
    }
    CHECK(passed > 10);
}

TEST_CASE("neglog coefficient test") {
    CHECK(neglog_coeff_test(Poly({Rational(10), Rational(-1)}), 4).passed);
    CHECK_FALSE(neglog_coeff_test(Poly({Rational(1), Rational(-5)}), 4).passed);
    // a factored power of t is removed first
    CHECK(neglog_coeff_test(Poly({Rational(0), Rational(3), Rational(-2)}), 4).passed);
    // soundness: passing polynomials are positive on [0, 1/4]
    std::mt19937 rng(5);
    std::uniform_int_distribution<long> coef(-30, 30);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Rational> c(5);
        for (auto& x : c) x = coef(rng);
        const Poly p(c);
        if (!neglog_coeff_test(p, 4).passed) continue;
        for (int i = 1; i <= 1000; ++i) CHECK(p(rat(i, 4000)) > 0);
    }
}

TEST_CASE("Lipschitz grid") {
    const PositivityCertificate one = lipschitz_grid_check(Poly(Rational(1)), 0, 1, Rational(1));
    CHECK(one.passed);
    CHECK(one.points <= 3);
    CHECK_FALSE(lipschitz_grid_check(Poly({Rational(0), Rational(1)}), 0, 1, Rational(1)).passed);
    const PositivityCertificate lin = lipschitz_grid_check(Poly({Rational(2), Rational(-1)}), 0, 1, Rational(1));
    CHECK(lin.passed);
    // coverage: consecutive points are at most v/(2L) apart and the last point is the end
    for (std::size_t i = 0; i + 1 < lin.witnesses.size(); ++i) {
        const auto& [t, v] = lin.witnesses[i];
        CHECK(lin.witnesses[i + 1].first - t <= v / 2);
    }
    CHECK(lin.witnesses.back().first == 1);
}

TEST_CASE("simple exponential sums") {
    // e^{-t} - e^{-2t} >= 0 with a simple zero at t = 0
    const ExpPoly f = ExpPoly::exp(1) - ExpPoly::exp(2);
    const PositivityCertificate c = exp_sum_nonnegative(f);
    CHECK(c.passed);
    CHECK_FALSE(exp_sum_nonnegative(ExpPoly::exp(2) - ExpPoly::exp(1)).passed);
    unsigned r = 0;
    const Poly q = divide_out_one(Poly({Rational(1), Rational(-2), Rational(1)}), r);  // (1 - x)^2
    CHECK(r == 2);
    CHECK(q == Poly(Rational(1)));
}
