#include "certify/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace certify::oracle {

double gamma_closed_form(long j, long k) {
    if (j < 0 || k < 1) throw std::invalid_argument("gamma_closed_form needs j >= 0, k >= 1");
    const double l = std::lgamma(0.5 + j) + std::lgamma(k - 0.5) - std::lgamma(double(j + k));
    return std::exp(l) / M_PI;
}

namespace {

ProfileFunctions::Series make_series(const std::vector<RationalInterval>& v) {
    ProfileFunctions::Series s;
    s.c.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) s.c[i] = to_double(v[i].mid());
    const std::size_t K = v.size() - 1;
    const double hi = s.c[K], lo = s.c[K / 2];
    if (K >= 16 && hi * lo > 0 && std::abs(lo) > std::abs(hi)) {
        s.p = std::log(lo / hi) / std::log(double(K) / double(K / 2));
        if (s.p > 1.05) s.amp = hi * std::pow(double(K), s.p);
    }
    return s;
}

// int_{K+1/2}^inf x^{-p} beta^x dx on a logarithmic grid
double tail_integral(double K, double p, double beta) {
    const double x0 = K + 0.5;
    const double lam = beta >= 1 ? 0.0 : -std::log(beta);
    if (lam == 0) return std::pow(x0, 1 - p) / (p - 1);
    if (lam * x0 > 60) return 0.0;
    const double U = std::min(std::log(60 / (lam * x0)) + 1, 60 / (p - 1));
    const int n = 400;
    const double h = U / n;
    auto f = [&](double u) { return std::exp((1 - p) * u - lam * x0 * std::exp(u)); };
    double s = f(0) + f(U);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4 : 2) * f(i * h);
    return std::pow(x0, 1 - p) * s * h / 3;
}

}  // namespace

ProfileFunctions::ProfileFunctions(long K) {
    const ProfileSeries p = profile_recursion(K, 256);
    const DerivedCoefficients d = derived_coefficients(p);
    a_ = make_series(p.a);
    b_ = make_series(p.b);
    af_ = make_series(d.af);
    bf_ = make_series(d.bf);
    afm_ = make_series(d.afm);
    bfm_ = make_series(d.bfm);
    G10_ = profile_constants::gamma1_at_zero().get_d();
    G20_ = profile_constants::gamma2_at_zero().get_d();
    F10_ = profile_constants::F1_at_zero().get_d();
    F20_ = profile_constants::F2_at_zero().get_d();
    c_ = profile_constants::c_mod().get_d();
}

double ProfileFunctions::series(const Series& s, double g) {
    const double beta = std::isinf(g) ? 1.0 : g * g / (1 + g * g);
    double v = 0;
    for (std::size_t k = s.c.size() - 1; k >= 1; --k) v = (v + s.c[k]) * beta;
    if (s.amp != 0) v += s.amp * tail_integral(double(s.c.size() - 1), s.p, beta);
    return v;
}

double ProfileFunctions::integral_f(int component, long j) const {
    // gamma = tan(theta): integrand sum_k c_k sin^{2k-2} cos^{2j}
    const std::vector<double>& c = component == 1 ? af_.c : bf_.c;
    const int n = 4000;
    const double h = (M_PI / 2) / n;
    auto f = [&](double th) {
        const double s2 = std::sin(th) * std::sin(th);
        double lead = 0;
        for (std::size_t k = c.size() - 1; k >= 1; --k) lead = lead * s2 + c[k];
        return lead * std::pow(std::cos(th), 2.0 * j);
    };
    double s = f(0) + f(M_PI / 2);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4 : 2) * f(i * h);
    return (2 / M_PI) * s * h / 3;
}

std::string name(InitialData ic) {
    switch (ic) {
        case InitialData::gamma_star: return "gamma_star";
        case InitialData::f_star: return "f_star";
        case InitialData::f_star_mod: return "f_star_mod";
    }
    return "unknown";
}

std::vector<double> ThetaTrace::upsilon_unscaled() const {
    std::vector<double> u = upsilon;
    for (double& x : u) x /= 13;
    return u;
}

double ThetaTrace::at(const std::vector<double>& s, double time) const {
    if (t.empty()) throw std::logic_error("empty trace");
    if (time <= t.front()) return s.front();
    if (time >= t.back()) return s.back();
    std::size_t i = static_cast<std::size_t>(std::upper_bound(t.begin(), t.end(), time) - t.begin());
    const double w = (time - t[i - 1]) / (t[i] - t[i - 1]);
    return (1 - w) * s[i - 1] + w * s[i];
}

void ThetaTrace::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "t,avgTheta1,invariant,upsilon,upsilon_unscaled\n";
    out.precision(12);
    for (std::size_t i = 0; i < t.size(); ++i)
        out << t[i] << ',' << avg1[i] << ',' << invariant[i] << ',' << upsilon[i] << ',' << upsilon[i] / 13 << '\n';
}

ThetaTrace simulate_theta(const ProfileFunctions& pf, InitialData ic, const SimConfig& cfg) {
    if (!(cfg.dt > 0 && cfg.dt <= 1e-3)) throw std::invalid_argument("simulate_theta needs 0 < dt <= 1e-3");
    const double dx = 4 * cfg.dt;
    const int n = static_cast<int>(std::ceil((cfg.log_gamma_max - cfg.log_gamma_min) / dx)) + 1;
    if (n < 16) throw std::invalid_argument("grid too coarse");
    std::vector<double> gam(n), w(n), q(n);  // gamma, 10/(1+gamma^2), quadrature weight for the average
    for (int i = 0; i < n; ++i) {
        gam[i] = std::exp(cfg.log_gamma_min + i * dx);
        w[i] = 10 / (1 + gam[i] * gam[i]);
        q[i] = (2 / M_PI) * gam[i] / (1 + gam[i] * gam[i]) * dx * (i == 0 || i == n - 1 ? 0.5 : 1.0);
    }
    const double g_lo = gam.front(), g_hi = gam.back();
    const double tail_lo = (2 / M_PI) * std::atan(g_lo), tail_hi = (2 / M_PI) * (M_PI / 2 - std::atan(g_hi));

    auto init1 = [&](double g) {
        switch (ic) {
            case InitialData::gamma_star: return pf.gamma1(g);
            case InitialData::f_star: return pf.f1(g);
            case InitialData::f_star_mod: return pf.f1_mod(g);
        }
        return 0.0;
    };
    auto init2 = [&](double g) {
        switch (ic) {
            case InitialData::gamma_star: return pf.gamma2(g);
            case InitialData::f_star: return pf.f2(g);
            case InitialData::f_star_mod: return pf.f2_mod(g);
        }
        return 0.0;
    };
    std::vector<double> T1(n), T2(n);
    for (int i = 0; i < n; ++i) {
        T1[i] = init1(gam[i]);
        T2[i] = init2(gam[i]);
    }
    double z1 = init1(0), z2 = init2(0);  // gamma = 0
    const auto invariant_of = [&](const std::vector<double>& a, const std::vector<double>& b, double a0, double b0) {
        double s = (a.back() - a0 + b.back() - b0) / gam.back();
        for (int i = 0; i < n; ++i) s += (a[i] - a0 + b[i] - b0) / gam[i] * dx * (i == 0 || i == n - 1 ? 0.5 : 1.0);
        return s;
    };
    if (ic == InitialData::f_star_mod) {
        // the truncated series leaves a small invariant that would excite the
        // stationary Gamma* mode; project it out on the grid
        std::vector<double> G1(n), G2(n);
        for (int i = 0; i < n; ++i) {
            G1[i] = pf.gamma1(gam[i]);
            G2[i] = pf.gamma2(gam[i]);
        }
        const double g10 = pf.gamma1(0), g20 = pf.gamma2(0);
        const double kappa = invariant_of(T1, T2, z1, z2) / invariant_of(G1, G2, g10, g20);
        for (int i = 0; i < n; ++i) {
            T1[i] -= kappa * G1[i];
            T2[i] -= kappa * G2[i];
        }
        z1 -= kappa * g10;
        z2 -= kappa * g20;
    }

    auto average = [&](const std::vector<double>& f, double f0) {
        double s = f0 * tail_lo + f.back() * tail_hi;
        for (int i = 0; i < n; ++i) s += q[i] * f[i];
        return s;
    };
    auto invariant = [&]() { return invariant_of(T1, T2, z1, z2); };

    // integrating factor Heun for u' = D u + N(u), D = diag(-6, -9)
    std::vector<double> N1(n), N2(n), S1(n), S2(n);
    auto react = [&](double h) {
        const double e1 = std::exp(-6 * h), e2 = std::exp(-9 * h);
        const double A = average(T1, z1);
        const double n1z = 13 * z2, n2z = 10 * (z1 - A);
        for (int i = 0; i < n; ++i) {
            N1[i] = 13 * T2[i];
            N2[i] = w[i] * (T1[i] - A);
            S1[i] = e1 * (T1[i] + h * N1[i]);
            S2[i] = e2 * (T2[i] + h * N2[i]);
        }
        const double s1z = e1 * (z1 + h * n1z), s2z = e2 * (z2 + h * n2z);
        const double As = average(S1, s1z);
        for (int i = 0; i < n; ++i) {
            T1[i] = e1 * T1[i] + h / 2 * (e1 * N1[i] + 13 * S2[i]);
            T2[i] = e2 * T2[i] + h / 2 * (e2 * N2[i] + w[i] * (S1[i] - As));
        }
        const double nz1 = e1 * z1 + h / 2 * (e1 * n1z + 13 * s2z);
        const double nz2 = e2 * z2 + h / 2 * (e2 * n2z + 10 * (s1z - As));
        z1 = nz1;
        z2 = nz2;
    };
    auto shift = [&]() {
        for (int i = n - 1; i >= 1; --i) {
            T1[i] = T1[i - 1];
            T2[i] = T2[i - 1];
        }
        T1[0] = z1;
        T2[0] = z2;
    };

    ThetaTrace tr;
    tr.ic = ic;
    double A = average(T1, z1), Z = 0, t = 0;
    auto record = [&]() {
        tr.t.push_back(t);
        tr.avg1.push_back(A);
        tr.invariant.push_back(invariant());
        tr.upsilon.push_back(A - Z);
    };
    record();
    const long steps = std::lround(cfg.t_end / cfg.dt);
    const double ed = std::exp(-cfg.dt);
    for (long s = 1; s <= steps; ++s) {
        react(cfg.dt / 2);
        shift();
        react(cfg.dt / 2);
        const double A_new = average(T1, z1);
        // Z' = -Z + A, trapezoid with the exact decay factor
        Z = ed * Z + cfg.dt / 2 * (ed * A + A_new);
        A = A_new;
        t = s * cfg.dt;
        if (!std::isfinite(A)) throw std::runtime_error("simulation blew up");
        if (s % cfg.record_every == 0 || s == steps) record();
    }
    return tr;
}

std::vector<ThetaTrace> simulate_all(const ProfileFunctions& pf, const std::vector<InitialData>& ics,
                                     const SimConfig& cfg) {
    std::vector<ThetaTrace> out(ics.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < ics.size(); ++i) out[i] = simulate_theta(pf, ics[i], cfg);
    return out;
}

double laplace_minus_one(const ThetaTrace& mod) {
    double s = 0;
    for (std::size_t i = 1; i < mod.t.size(); ++i)
        s += (mod.t[i] - mod.t[i - 1]) / 2 * (std::exp(mod.t[i]) * mod.avg1[i] + std::exp(mod.t[i - 1]) * mod.avg1[i - 1]);
    // the average decays like e^{-4t}
    return s + std::exp(mod.t.back()) * mod.avg1.back() / 3;
}

VolterraResidual volterra_residual(const ThetaTrace& f_star, const VolterraBounds& v, int samples, double t_max) {
    // midpoints and half-widths on the trace grid
    std::size_t m = 0;
    while (m < f_star.t.size() && f_star.t[m] <= t_max + 1e-12) ++m;
    std::vector<double> Km(m), Kr(m), gm(m), gr(m);
    const unsigned long rate =
        std::max({v.K2.lower.max_rate(), v.K2.upper.max_rate(), v.g.lower.max_rate(), v.g.upper.max_rate()});
    for (std::size_t i = 0; i < m; ++i) {
        const ExpTable e(Rational(f_star.t[i]), rate, 80);
        const double kl = to_double(e.eval(v.K2.lower).mid()), ku = to_double(e.eval(v.K2.upper).mid());
        const double gl = to_double(e.eval(v.g.lower).mid()), gu = to_double(e.eval(v.g.upper).mid());
        Km[i] = (kl + ku) / 2;
        Kr[i] = std::abs(ku - kl) / 2;
        gm[i] = (gl + gu) / 2;
        gr[i] = std::abs(gu - gl) / 2;
    }
    const std::vector<double>& f = f_star.upsilon;
    VolterraResidual r;
    r.worst_excess = -1e300;
    for (int s = 1; s <= samples; ++s) {
        const std::size_t i = (m - 1) * s / samples;
        double conv = 0, slack = 0;
        for (std::size_t k = 1; k <= i; ++k) {
            const double h = f_star.t[k] - f_star.t[k - 1];
            conv += h / 2 * (Km[i - k] * f[k] + Km[i - k + 1] * f[k - 1]);
            slack += h / 2 * (Kr[i - k] * std::abs(f[k]) + Kr[i - k + 1] * std::abs(f[k - 1]));
        }
        const double res = std::abs(f[i] + conv - gm[i]);
        if (res > r.max_abs_residual) {
            r.max_abs_residual = res;
            r.max_at = f_star.t[i];
        }
        const double excess = res - gr[i] - slack;
        if (excess > r.worst_excess) {
            r.worst_excess = excess;
            r.excess_at = f_star.t[i];
        }
    }
    return r;
}

}  // namespace certify::oracle
