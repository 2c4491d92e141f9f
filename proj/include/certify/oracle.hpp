#pragma once

#include "certify/profile.hpp"
#include "certify/shorttime.hpp"

#include <string>
#include <vector>

namespace certify::oracle {

// Floating-point cross-checks only; nothing here feeds a certificate.

// c_k^(j) = Gamma(1/2 + j) Gamma(k - 1/2) / (pi Gamma(j + k)) via log-Gamma.
double gamma_closed_form(long j, long k);

// Gamma*, F* and F*,mod as functions of gamma from the profile series in
// doubles. Coefficients beyond K follow a fitted power law A k^{-p}, summed
// as an integral; the plain truncation is visibly wrong for gamma > 100.
class ProfileFunctions {
public:
    explicit ProfileFunctions(long K = 10000);
    // values at gamma (gamma = 0 allowed)
    double gamma1(double g) const { return G10_ + series(a_, g); }
    double gamma2(double g) const { return G20_ + series(b_, g); }
    double f1(double g) const { return F10_ + series(af_, g); }
    double f2(double g) const { return F20_ + series(bf_, g); }
    double f1_mod(double g) const { return F10_ - c_ * G10_ + series(afm_, g); }
    double f2_mod(double g) const { return F20_ - c_ * G20_ + series(bfm_, g); }
    // (2/pi) int (F-bar_1 or F-bar_2) gamma^{-2} (1 + gamma^2)^{-j} dgamma by quadrature
    double integral_f(int component, long j) const;

    struct Series {
        std::vector<double> c;  // index 0..K, c[0] unused
        double amp = 0, p = 0;  // tail model, amp = 0 for none
    };

private:
    static double series(const Series& s, double g);
    Series a_, b_, af_, bf_, afm_, bfm_;
    double G10_, G20_, F10_, F20_, c_;
};

enum class InitialData { gamma_star, f_star, f_star_mod };
std::string name(InitialData ic);

struct ThetaTrace {
    InitialData ic;
    std::vector<double> t, avg1, invariant, upsilon;
    // Upsilon with the 1/13 prefactor of the unrenormalized system
    std::vector<double> upsilon_unscaled() const;
    // linear interpolation in t
    double at(const std::vector<double>& series, double time) const;
    void write_csv(const std::string& path) const;
};

struct SimConfig {
    double t_end = 3;
    double dt = 1.0 / 2048;       // node spacing in log gamma is 4 dt
    double log_gamma_min = -14;   // about 1e-6
    double log_gamma_max = 14;
    int record_every = 8;
};

// Characteristics for 4 gamma d/dgamma as an exact one-node shift per step,
// integrating factor for the diagonal terms and Heun for the coupling; the
// inflow node follows the gamma = 0 ODE. F*,mod is projected to zero
// invariant on the grid.
ThetaTrace simulate_theta(const ProfileFunctions& pf, InitialData ic, const SimConfig& cfg = {});

// Several initial conditions in parallel.
std::vector<ThetaTrace> simulate_all(const ProfileFunctions& pf, const std::vector<InitialData>& ics,
                                     const SimConfig& cfg = {});

// int_0^T e^{t} avg(t) dt by the trapezoid rule plus an e^{-3t} tail fit.
double laplace_minus_one(const ThetaTrace& mod);

// Residual of f + K2 * f = g at sample times with K2 and g at the bracket
// midpoints (max_abs_residual), and the same residual minus the slack the
// bracket half-widths allow through the convolution (worst_excess; <= 0
// means consistent with the brackets).
struct VolterraResidual {
    double max_abs_residual = 0;
    double max_at = 0;
    double worst_excess = 0;
    double excess_at = 0;
};
VolterraResidual volterra_residual(const ThetaTrace& f_star, const VolterraBounds& v, int samples = 50,
                                   double t_max = 1.5);

}  // namespace certify::oracle
