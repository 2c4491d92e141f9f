#pragma once

#include "certify/certificate.hpp"
#include "certify/exppoly.hpp"
#include "certify/positivity.hpp"
#include "certify/ratfunc.hpp"

#include <vector>

namespace certify {

// Laplace-side weights (c_j, d_j) and the ring coefficients
// (c_j, d_j)/d_0 in time, with the j = 0 ring entry shifted by the identity.
struct WeightRecursion {
    long M = 0;
    std::vector<RationalFunction> c_hat, d_hat;  // j = 0..M
    std::vector<ExpPoly> ring_c, ring_d;         // j = 0..M

    json to_json() const;  // ring coefficients only
    static WeightRecursion from_json(const json& j);
};

WeightRecursion weight_recursion(long M);

// N_j at a real point xi, as exact numbers.
struct RowMatrix {
    Rational m[2][2];
};
RowMatrix N_at(long j, const Rational& xi);

// Row sums of |N_j(-1)| below 1 - 17/(20 j): exact for j_from..j_to and by
// polynomial coefficient signs for every j > j_to.
Certificate rowsum_check(long j_from, long j_to);

// Ring values at xi = -1 for j = 0..J as enclosures (outward 2^-bits when bits > 0).
struct RingAtMinusOne {
    std::vector<RationalInterval> c, d;
};
RingAtMinusOne ring_at_minus_one(long J, unsigned bits = 256);

struct PQPair {
    long M = 0;
    ExpPoly P, Q;
};
PQPair pq_pair(const WeightRecursion& w);

// P - Q >= 0 and Q >= 0 on t >= 0, plus d_j ring >= 0 for j <= M.
Certificate pq_positivity(const PQPair& pq, const WeightRecursion& w, const Rational& step = rat(1, 100));

}  // namespace certify
