#include "certify/weights.hpp"

#include "certify/profile.hpp"

#include <stdexcept>

namespace certify {

namespace {

RationalFunction scalar(const Rational& c) { return RationalFunction(c); }

ExpPoly invert_proper(const RationalFunction& f, const char* what) {
    Rational delta = 0;
    ExpPoly e = f.inverse_laplace(&delta);
    if (delta != 0) throw std::logic_error(std::string("unexpected point mass in ") + what);
    return e;
}

}  // namespace

WeightRecursion weight_recursion(long M) {
    if (M < 1) throw std::invalid_argument("weight_recursion needs M >= 1");
    WeightRecursion w;
    w.M = M;
    const RationalFunction c0 = RationalFunction::pole(10);
    const RationalFunction d0 = RationalFunction::linear(23) * RationalFunction::pole(13) * RationalFunction::pole(10);
    // 1/d0 = (xi + 13)(xi + 10)/(xi + 23)
    const RationalFunction inv_d0 =
        RationalFunction::linear(13) * RationalFunction::linear(10) * RationalFunction::pole(23);
    w.c_hat = {c0};
    w.d_hat = {d0};
    w.ring_c = {invert_proper(c0 * inv_d0 - scalar(1), "ring c_0")};
    w.ring_d = {ExpPoly()};
    for (long j = 1; j <= M; ++j) {
        const RationalFunction c =
            (scalar(8 * (j - 1)) * w.c_hat[j - 1] + scalar(10) * w.d_hat[j - 1]) * RationalFunction::pole(8 * j + 10);
        const RationalFunction d =
            (scalar(8 * (j - 1)) * w.d_hat[j - 1] + scalar(13) * c) * RationalFunction::pole(8 * j + 13);
        w.c_hat.push_back(c);
        w.d_hat.push_back(d);
        w.ring_c.push_back(invert_proper(c * inv_d0, "ring c"));
        w.ring_d.push_back(invert_proper(d * inv_d0, "ring d"));
    }
    return w;
}

json WeightRecursion::to_json() const {
    json rc = json::array(), rd = json::array();
    for (const auto& f : ring_c) rc.push_back(certify::to_json(f));
    for (const auto& f : ring_d) rd.push_back(certify::to_json(f));
    return json{{"M", M}, {"ring_c", std::move(rc)}, {"ring_d", std::move(rd)}};
}

WeightRecursion WeightRecursion::from_json(const json& j) {
    WeightRecursion w;
    w.M = j.at("M").get<long>();
    for (const auto& f : j.at("ring_c")) w.ring_c.push_back(exppoly_from_json(f));
    for (const auto& f : j.at("ring_d")) w.ring_d.push_back(exppoly_from_json(f));
    return w;
}

RowMatrix N_at(long j, const Rational& xi) {
    const Rational p = xi + 8 * j + 10, q = xi + 8 * j + 13, pq = p * q;
    RowMatrix n;
    n.m[0][0] = q * 8 * (j - 1) / pq;
    n.m[0][1] = q * 10 / pq;
    n.m[1][0] = Rational(13 * 8 * (j - 1)) / pq;
    n.m[1][1] = (130 + p * 8 * (j - 1)) / pq;
    return n;
}

Certificate rowsum_check(long j_from, long j_to) {
    if (j_from < 1) throw std::invalid_argument("rowsum_check needs j_from >= 1");
    Certificate cert("rowsum");
    long first_fail = -1;
    for (long j = j_from; j <= j_to && first_fail < 0; ++j) {
        const RowMatrix n = N_at(j, Rational(-1));
        const Rational bound = 1 - rat(17, 20 * j);
        const Rational r1 = abs(n.m[0][0]) + abs(n.m[0][1]), r2 = abs(n.m[1][0]) + abs(n.m[1][1]);
        if (r1 > bound || r2 > bound) first_fail = j;
    }
    cert.add("row sums", "|N_j(-1)|_inf <= 1 - 0.85/j for " + std::to_string(j_from) + " <= j <= " + std::to_string(j_to),
             first_fail < 0, json{{"first_failure", first_fail}});
    // at xi = -1: p = 8j + 9, q = 8j + 12, all entries nonnegative for j >= 1
    const Poly j1 = Poly::linear(0, 1), p = Poly::linear(9, 8), q = Poly::linear(12, 8), jm = Poly::linear(-1, 1);
    const Poly lhs = Poly::linear(-17, 20) * p * q;
    const Poly row1 = lhs - j1 * Rational(20) * q * Poly::linear(2, 8);
    const Poly row2 = lhs - j1 * Rational(20) * (jm * Rational(104) + Poly(Rational(130)) + p * jm * Rational(8));
    const long start = j_to + 1;
    const bool ok1 = nonnegative_shift(row1, start, start) == start;
    const bool ok2 = nonnegative_shift(row2, start, start) == start;
    cert.add("row sums", "row-sum polynomials have nonnegative coefficients in j - " + std::to_string(start), ok1 && ok2,
             json{{"min_shift_row1", nonnegative_shift(row1, 1, start)}, {"min_shift_row2", nonnegative_shift(row2, 1, start)}});
    return cert;
}

RingAtMinusOne ring_at_minus_one(long J, unsigned bits) {
    RingAtMinusOne r;
    // c_0(-1)/d_0(-1) = (1/9)/(11/54) = 6/11
    const Rational ratio = rat(6, 11);
    r.c = {RationalInterval(ratio - 1)};
    r.d = {RationalInterval(0)};
    RationalInterval pc(ratio), pd(1);
    for (long j = 1; j <= J; ++j) {
        const RowMatrix n = N_at(j, Rational(-1));
        RationalInterval c = pc * n.m[0][0] + pd * n.m[0][1];
        RationalInterval d = pc * n.m[1][0] + pd * n.m[1][1];
        if (bits) {
            c = c.outward(bits);
            d = d.outward(bits);
        }
        r.c.push_back(c);
        r.d.push_back(d);
        pc = c;
        pd = d;
    }
    return r;
}

PQPair pq_pair(const WeightRecursion& w) {
    PQPair pq;
    pq.M = w.M;
    pq.P = w.ring_c[w.M] * Rational(8 * w.M) + w.ring_d[w.M] * Rational(10);
    pq.Q = w.ring_d[w.M] * Rational(8 * w.M);
    return pq;
}

Certificate pq_positivity(const PQPair& pq, const WeightRecursion& w, const Rational& step) {
    Certificate cert("pq");
    const ExpPoly diff = pq.P - pq.Q;
    const PositivityCertificate pd = exp_sum_nonnegative(diff, step);
    cert.add("P - Q", "P_M - Q_M >= 0 for t >= 0, M = " + std::to_string(pq.M), pd.passed, pd.to_json());
    const PositivityCertificate qd = exp_sum_nonnegative(pq.Q, step);
    cert.add("P - Q", "Q_M >= 0 for t >= 0", qd.passed, qd.to_json());
    bool all = true;
    json notes = json::array();
    for (long j = 1; j <= w.M; ++j) {
        const PositivityCertificate c = exp_sum_nonnegative(w.ring_d[j], step);
        all = all && c.passed;
        notes.push_back(json{{"j", j}, {"passed", c.passed}, {"note", c.note}});
    }
    cert.add("ring weights", "d_j(t) >= 0 for t >= 0, 1 <= j <= " + std::to_string(w.M), all, notes);
    bool decay = true;
    for (long j = 0; j <= w.M; ++j)
        decay = decay && (w.ring_c[j].is_zero() || w.ring_c[j].min_rate() >= 10) &&
                (w.ring_d[j].is_zero() || w.ring_d[j].min_rate() >= 10);
    cert.add("ring weights", "every ring rate is at least 10", decay);
    return cert;
}

}  // namespace certify
