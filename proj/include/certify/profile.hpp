#pragma once

#include "certify/certificate.hpp"
#include "certify/interval.hpp"
#include "certify/poly.hpp"

#include <map>
#include <string>
#include <vector>

namespace certify {

// Exact constants of the self-similar profile.
namespace profile_constants {
Rational A();               // average of the barred first component, -351/19
Rational c_mod();           // 237/46, makes the invariant of F* - c Gamma* vanish
Rational gamma1_at_zero();  // 845/19
Rational gamma2_at_zero();  // 390/19
Rational F1_at_zero();      // (5/2) Gamma1(0)
Rational F2_at_zero();      // 4 Gamma2(0)
}  // namespace profile_constants

struct Mat2 {
    Rational m[2][2];
};

// W_k with v_k = W_k v_{k-1}, k >= 2.
Mat2 W_matrix(long k);
// Both recursion matrices: M_k v_k = N_k v_{k-1}.
Mat2 M_matrix(long k);
Mat2 N_matrix(long k);

// Coefficients of Gamma-bar in powers of beta = gamma^2/(1+gamma^2).
// bits == 0 keeps every entry exact (point intervals); otherwise each step
// rounds outward to multiples of 2^-bits.
struct ProfileSeries {
    std::vector<RationalInterval> a, b;  // index 0..K
    Rational A;
    unsigned bits = 0;
    long K() const { return static_cast<long>(a.size()) - 1; }
};

ProfileSeries profile_recursion(long K_max, unsigned bits = 0);

// Exact test that the largest eigenvalue of G (symmetric 2x2) is <= s0.
bool eigen_below(const Rational& g11, const Rational& g12, const Rational& g22, const Rational& s0);

// Literal form of the gap claim: ||W_{k+1}||_2 <= 1 - 11/(10k) for k in range.
Certificate spectral_gap_check(long k_from, long k_to);

// ||D W_k D^{-1}||_2 <= 1 - alpha/k with D = diag(1, w), for k_from <= k <= k_to
// exactly, and for every k >= k_to + 1 through polynomial coefficient signs.
struct GapSpec {
    Rational alpha;
    Rational w;
    long k_from;
};
Certificate weighted_gap_certificate(const GapSpec& g, long k_explicit_to);

// Polynomial forms of the two eigenvalue conditions in the variable k,
// nonnegative exactly where the test passes (for k > alpha).
std::pair<Poly, Poly> gap_polynomials(const Rational& alpha, const Rational& w);

// Smallest integer x0 >= from such that p(x + x0) has only nonnegative
// coefficients; -1 if none up to `limit`.
long nonnegative_shift(const Poly& p, long from, long limit);

// Certified upper bound for sqrt(a_k^2 + b_k^2), k >= M, from the norm at M,
// using ||W_k|| <= 1 - 1.1/k for k >= 4: the factor ((k+1)/(M+1))^{-11/10}.
RationalInterval tail_bound(long M, long k, const RationalInterval& base_norm);

// c_k^(j) = (2/pi) int beta^k gamma^-2 (1+gamma^2)^-j d gamma.
class BetaTable {
public:
    BetaTable() = default;
    BetaTable(long J_max, long K_max, unsigned bits = 0);
    const RationalInterval& operator()(long j, long k) const { return c_[j][k - 1]; }
    long J() const { return static_cast<long>(c_.size()) - 1; }
    long K() const { return c_.empty() ? 0 : static_cast<long>(c_[0].size()); }

private:
    std::vector<std::vector<RationalInterval>> c_;
};

// Series of F*-bar and F*,mod-bar.
struct DerivedCoefficients {
    std::vector<RationalInterval> af, bf, afm, bfm;  // index 0..K
    Rational c_mod;
};

DerivedCoefficients derived_coefficients(const ProfileSeries& p);

// Sqrt bounds on a nonnegative rational, to 2^-bits.
Rational sqrt_upper(const Rational& x, unsigned bits = 64);
Rational sqrt_lower(const Rational& x, unsigned bits = 64);

// Everything downstream stages need from the profile, all as enclosures.
struct ProfileBounds {
    long K = 0;
    std::map<std::string, RationalInterval> values;
    // integral tables, j = 0..J
    std::vector<RationalInterval> I, J, If, Jf, Ifmod, Jfmod;
    // leading coefficients, k = 0..k_store
    std::vector<RationalInterval> a, b, af, bf, afm, bfm;
    Certificate cert{"profile"};
    Certificate literal_gap{"spectral_gap_literal"};

    const RationalInterval& at(const std::string& key) const;
    json to_json() const;
    static ProfileBounds from_json(const json& j);
};

struct ProfileConfig {
    long K = 5000;           // series truncation
    unsigned bits = 256;     // 0 = exact arithmetic
    long J_integrals = 40;   // I_j, J_j for j <= J_integrals
    long k_store = 40;       // leading coefficients kept in the record
    long gap_explicit = 200; // k range checked one by one before the polynomial argument
    Rational pi_width = Rational(1, Integer("100000000000000000000"));
};

// Weighted norm used for every tail of the series: D = diag(1, 4), rate 8/5.
GapSpec tail_gap();

// Bounds on the barred profile, the F* variants, the M = -L F* data and
// the I/J integral tables, together with their certificate.
ProfileBounds linfty_bounds(const ProfileSeries& p, const DerivedCoefficients& d, const ProfileConfig& cfg);

// Adds the integral tables to `out`.
void profile_integrals(const ProfileSeries& p, const DerivedCoefficients& d, const BetaTable& table, long J_max,
                       ProfileBounds& out);

// Partial invariant sum_{k<=K} (afm_k + bfm_k) c_k^(0) and its closed form
// K c_{K+1}^(0) (104 a_K/23 + 4 b_K); both computed, caller compares.
std::pair<RationalInterval, RationalInterval> invariant_partial(const ProfileSeries& p, const DerivedCoefficients& d,
                                                                const BetaTable& table, long K);

// Full stage: recursion, certificates, bounds, integrals.
ProfileBounds run_profile(const ProfileConfig& cfg);

}  // namespace certify
