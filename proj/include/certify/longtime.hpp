#pragma once

#include "certify/certificate.hpp"
#include "certify/exppoly.hpp"
#include "certify/positivity.hpp"
#include "certify/profile.hpp"
#include "certify/weights.hpp"

#include <array>
#include <vector>

namespace certify {

// Closed-form upper envelopes (functions of t >= 0) from integrating the
// linear differential inequalities of the modulated evolution. G-bar denotes
// G - G(gamma = 0) with G = Theta-bar / gamma^2.
struct CascadeBounds {
    ExpPoly int_g1;       // (2/pi) |int G_1 dgamma|, an exact exponential
    ExpPoly g_bar_sum;    // |G1-bar|_inf + |G2-bar|_inf
    ExpPoly g1_bar;       // |G1-bar|_inf
    ExpPoly g2_zero;      // |G_2(gamma = 0)|
    ExpPoly g1_zero;      // |G_1(gamma = 0)|
    ExpPoly avg_bar;      // |avg Theta1-bar|
    ExpPoly theta2_zero;  // |Theta_2(gamma = 0)|
    ExpPoly theta1_zero;  // |Theta_1(gamma = 0)|
    ExpPoly avg;          // |avg Theta_1|

    json to_json() const;
};

// Initial data of the cascade; from_profile picks the modulated data or the
// data of its time derivative.
struct CascadeData {
    Rational int_g1;                 // (2/pi) |int G_1| at t = 0
    unsigned long int_rate = 23;     // decay rate of int G_1
    Rational g1_bar, g2_bar;         // sup norms of G-bar at t = 0
    Rational g1_zero, g2_zero;       // |G(gamma = 0)| at t = 0
    Rational theta1_zero, theta2_zero;

    static CascadeData from_profile(const ProfileBounds& pb, bool time_derivative);
};

CascadeBounds cascade(const CascadeData& d);

// The coarser chain that goes through the sup norms of Theta-bar directly.
struct CoarseCascade {
    ExpPoly int_g1, g_bar_sum, g1_bar, theta2_bar, theta1_bar, theta2_zero, theta1_zero, avg;
    json to_json() const;
};
CoarseCascade coarse_cascade(const ProfileBounds& pb);

struct LaplaceConfig {
    long J0 = 39;     // j <= J0 summed through the integral tables
    long K0 = 39;     // rows 2..K0 summed directly for j in (J0, N2)
    long N1 = 5000;   // first row summed directly up to N1
    long N2 = 500;
    unsigned bits = 256;
    Rational target = Rational(-456, 10);
};

// Enclosure of the Laplace transform of avg Theta_1^mod at xi = -1.
struct LaplaceAtMinusOne {
    RationalInterval value, S, K2hat;
    std::array<RationalInterval, 6> pieces;
    Certificate cert{"laplace"};
    json to_json() const;
    static LaplaceAtMinusOne from_json(const json& j);
};

// Bound on sum_{j >= N} x_j c_k^(j) when x_j <= x_N ((j+1)/(N+1))^(-17/20):
// x_N c_k^(N) (N + k - 1) / (k - 3/2 + (17/20)(N + 1/2)/(N + 2)).
RationalInterval horizontal_tail(long k, long N, const Rational& xN, const RationalInterval& ckN);

LaplaceAtMinusOne laplace_minus_one(const ProfileBounds& pb, const LaplaceConfig& cfg = {});

// Lower bound of Upsilon for all t:
// (26 c + L_lo) e^{-t} - avg - int_t^inf e^{-(t-s)} avg(s) ds.
ExpPoly upsilon_lower(const CascadeBounds& cb, const LaplaceAtMinusOne& lap, const Rational& c_mod);

struct LongtimeResult {
    ExpPoly upsilon;
    PositivityCertificate neglog;
    Rational crossing_lo, crossing_hi;  // last grid point with upsilon_l < 0, first with > 0
    std::vector<std::pair<Rational, RationalInterval>> curve;
    Certificate cert{"longtime"};
    json to_json() const;
};

// Positivity for t >= log 4 and the crossing on a grid of [t0, t1].
LongtimeResult longtime_positivity(const CascadeBounds& cb, const LaplaceAtMinusOne& lap, const Rational& c_mod,
                                   const Rational& t0 = rat(6, 5), const Rational& t1 = Rational(3),
                                   const Rational& step = rat(1, 100));

}  // namespace certify
