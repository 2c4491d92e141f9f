#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "certify/weights.hpp"

using namespace certify;

namespace {

const WeightRecursion& w25() {
    static const WeightRecursion w = weight_recursion(25);
    return w;
}

}  // namespace

TEST_CASE("base weights at xi = -1") {
    const WeightRecursion& w = w25();
    CHECK(w.c_hat[0](Rational(-1)) == rat(1, 9));
    CHECK(w.d_hat[0](Rational(-1)) == rat(11, 54));
    CHECK(w.ring_d[0].is_zero());
    CHECK(w.ring_c[0] == ExpPoly::exp(23, -10));
    CHECK(w.ring_c[1] == ExpPoly::exp(18, 10));
    CHECK(w.ring_d[1] == ExpPoly::exp(18, rat(130, 3)) - ExpPoly::exp(21, rat(130, 3)));
}

TEST_CASE("N_1 closed form") {
    for (long x : {-1L, 0L, 2L, 7L}) {
        const Rational xi(x);
        const RowMatrix n = N_at(1, xi);
        CHECK(n.m[0][0] == 0);
        CHECK(n.m[1][0] == 0);
        CHECK(n.m[0][1] == 10 / (xi + 18));
        CHECK(n.m[1][1] == 130 / ((xi + 18) * (xi + 21)));
    }
    const RowMatrix n = N_at(1, Rational(-1));
    CHECK(n.m[0][1] + n.m[0][0] == rat(10, 17));
}

TEST_CASE("Laplace recursion holds when multiplied out") {
    const WeightRecursion& w = w25();
    for (long j = 1; j <= w.M; ++j) {
        const RationalFunction lhs_c = RationalFunction::linear(8 * j + 10) * w.c_hat[j];
        CHECK(lhs_c == RationalFunction(8 * (j - 1)) * w.c_hat[j - 1] + RationalFunction(10) * w.d_hat[j - 1]);
        const RationalFunction lhs_d = RationalFunction::linear(8 * j + 13) * w.d_hat[j];
        CHECK(lhs_d == RationalFunction(8 * (j - 1)) * w.d_hat[j - 1] + RationalFunction(13) * w.c_hat[j]);
    }
}

TEST_CASE("ring coefficients solve the forced ODE system") {
    const WeightRecursion& w = w25();
    for (long j = 2; j <= w.M; ++j) {
        const ExpPoly& c = w.ring_c[j];
        const ExpPoly& d = w.ring_d[j];
        CHECK(c.at_zero() == 0);
        CHECK(d.at_zero() == 0);
        CHECK(c.derivative() + c * Rational(8 * j + 10) == w.ring_c[j - 1] * Rational(8 * (j - 1)) + w.ring_d[j - 1] * Rational(10));
        CHECK(d.derivative() + d * Rational(8 * j + 13) == w.ring_d[j - 1] * Rational(8 * (j - 1)) + c * Rational(13));
        CHECK(c.max_power() == 0);
        CHECK(d.max_power() == 0);
    }
}

TEST_CASE("ring values at -1 agree with the rational functions") {
    const WeightRecursion& w = w25();
    const RingAtMinusOne r = ring_at_minus_one(25, 200);
    const Rational d0 = w.d_hat[0](Rational(-1));
    CHECK(r.c[0].contains(w.c_hat[0](Rational(-1)) / d0 - 1));
    for (long j = 1; j <= 25; ++j) {
        CHECK(r.c[j].contains(w.c_hat[j](Rational(-1)) / d0));
        CHECK(r.d[j].contains(w.d_hat[j](Rational(-1)) / d0));
        // Laplace transform of the ring coefficient at -1
        CHECK(r.d[j].contains(w.ring_d[j].laplace()(Rational(-1))));
    }
    CHECK(r.c[1].contains(rat(10, 17)));
    CHECK(r.d[1].contains(rat(13, 34)));
}

TEST_CASE("row sums") {
    const Certificate from10 = rowsum_check(10, 5000);
    CHECK_FALSE(from10.passed());
    CHECK(from10.entries()[0].witness["first_failure"] == 10);
    // first row sum is 1 - 7/(8j + 9), below 1 - 0.85/j exactly from j = 39
    for (long j : {10L, 38L, 39L, 100L}) {
        const RowMatrix n = N_at(j, Rational(-1));
        CHECK(n.m[0][0] + n.m[0][1] == 1 - rat(7, 8 * j + 9));
    }
    CHECK(rowsum_check(39, 5000).passed());
    CHECK(rowsum_check(5000, 5000).passed());
    CHECK_FALSE(rowsum_check(38, 38).passed());
}

TEST_CASE("P - Q positivity at M = 25") {
    const WeightRecursion& w = w25();
    const PQPair pq = pq_pair(w);
    CHECK(pq.P == w.ring_c[25] * Rational(200) + w.ring_d[25] * Rational(10));
    CHECK(pq.Q == w.ring_d[25] * Rational(200));
    // both vanish at t = 0 since every ring entry with j >= 1 starts at 0 for j >= 2
    CHECK((pq.P - pq.Q).at_zero() == 0);
    const Certificate c = pq_positivity(pq, w);
    for (const auto& e : c.entries()) {
        INFO(e.claim);
        CHECK(e.passed);
    }
    // independent spot check with interval evaluation
    const ExpPoly diff = pq.P - pq.Q;
    for (int i = 1; i <= 60; ++i) {
        const Rational t = rat(i, 10);
        ExpTable tab(t, diff.max_rate());
        CHECK(tab.eval(diff).hi() >= 0);
    }
}

TEST_CASE("weights JSON round trip") {
    const WeightRecursion& w = w25();
    const WeightRecursion back = WeightRecursion::from_json(w.to_json());
    CHECK(back.M == 25);
    for (long j = 0; j <= 25; ++j) {
        CHECK(back.ring_c[j] == w.ring_c[j]);
        CHECK(back.ring_d[j] == w.ring_d[j]);
    }
}
