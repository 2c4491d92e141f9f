#pragma once

#include "certify/bounds.hpp"
#include "certify/certificate.hpp"
#include "certify/exppoly.hpp"
#include "certify/longtime.hpp"
#include "certify/positivity.hpp"
#include "certify/profile.hpp"
#include "certify/weights.hpp"

namespace certify {

// Bounds in r >= 0 for (2/pi) eta(r, M, N), where
// eta = int_0^inf (1 + e^{8r} g^2)^{-M} (g^2/(1+g^2))^N g^{-2} dg.
// `paper` keeps the split at g = 1 with the e^{-4r}/(2M-1) far term and the
// 2^{-M-N} lower bound; `sharp` compares the weight with g^{2N} on both sides,
// which gives c_N^(M) e^{-(8N-4)r} <= (2/pi) eta <= c_N^(M-N) e^{-(8N-4)r}.
enum class EtaVariant { paper, sharp };

struct EtaBound {
    ExpPoly lower, upper;  // functions of r
};
EtaBound eta_bounds(long M, long N, EtaVariant variant = EtaVariant::sharp);

// Time envelopes of (2/pi) int (weight) * err dg for the two weight errors,
// given kernel bounds in r of (2/pi) int (weight) (1 + e^{8r} g^2)^{-(M+1)} dg.
// The errors solve the 2x2 system with matrix [[-10, 10], [13, -13]] (propagator
// entries nonnegative) minus the coupling 10 g^2/(1+g^2) beta. The upper bounds
// drop the coupling; the lower bounds subtract it using beta <= beta_u and
// (2/pi) int (weight) e^{8 r1} g^2 (1 + e^{8(r1+r2)} g^2)^{-(M+1)} dg
//   <= coupling_coeff e^{-(coupling_rate - 8) r1} e^{-coupling_rate r2}.
// With coupling_coeff = 0 the lower bounds only use positivity.
struct AlphaBeta {
    BoundPair alpha, beta;
};
AlphaBeta alphabeta_bounds(const PQPair& pq, const EtaBound& kernel, const Rational& coupling_coeff = 0,
                           unsigned long coupling_rate = 0);

// Kernel and coupling data for the weight beta^N/g^2 at order M + 1.
AlphaBeta alphabeta_bounds(const PQPair& pq, long N, EtaVariant variant);

struct ShorttimeConfig {
    long N3 = 4;                      // leading H terms kept exactly
    EtaVariant eta = EtaVariant::sharp;
    Integer denom_budget = 1000000;   // coefficient grid for Picard rounding, 0 = exact
    unsigned eval_bits = 160;         // precision of grid evaluations
    Rational L_early = 20000;         // target derivative bounds
    Rational L_late = 5000;
};

struct VolterraBounds {
    BoundPair K2, g, W;
    ExpPoly K2_floor;                // lower bound of K2 with nonnegative terms
    ExpPoly T1;                      // exact initial-data part before the kernel
    Certificate cert{"volterra"};
};

// Bounds for K_2 and g of the Volterra equation f + K_2 * f = g.
VolterraBounds assemble_g_and_K2(const ProfileBounds& pb, const WeightRecursion& w, const PQPair& pq,
                                 const ShorttimeConfig& cfg = {});

struct PicardIterates {
    BoundPair g, K2;
    ExpPoly K2_floor;
    ExpPoly P1_lower, P2_upper, P3_lower;
    json sizes() const;
};
// K2_floor >= 0 termwise is used in the term that needs a nonnegative kernel.
PicardIterates picard(const BoundPair& g, const BoundPair& K2, const ExpPoly& K2_floor, const Integer& denom_budget);

// |Upsilon'| <= avg_M + 26 c e^{-t} + avg + e^{-t} * avg.
ExpPoly derivative_bound(const CascadeBounds& mod, const CascadeBounds& time_derivative, const Rational& c_mod);

struct ShorttimeResult {
    PositivityCertificate early, late, g_positive;
    Rational L_early, L_late;     // certified sup |Upsilon'| on each interval
    Rational negative_at = -1;    // first point of the 1/100 grid on [1.3, 1.9] where P3_l < 0
    Certificate cert{"shorttime"};
    json to_json() const;
};

// Grid positivity of P1_l on [0, log 3] and P3_l on [log 3, log 4].
ShorttimeResult shorttime_positivity(const PicardIterates& P, const ExpPoly& dbound, const ShorttimeConfig& cfg = {});

// log 3 and log 4 enclosed to width 1e-20.
RationalInterval log3_enclosure();
RationalInterval log4_enclosure();

}  // namespace certify
