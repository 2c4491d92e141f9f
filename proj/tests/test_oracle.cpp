#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "certify/longtime.hpp"
#include "certify/oracle.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

using namespace certify;
using namespace certify::oracle;

namespace {

const ProfileBounds& profile() {
    static const ProfileBounds pb = run_profile(ProfileConfig{});
    return pb;
}

const ProfileFunctions& functions() {
    static const ProfileFunctions pf;
    return pf;
}

// Gamma*, F* to t = 3 and F*,mod to t = 6
const std::vector<ThetaTrace>& traces() {
    static const std::vector<ThetaTrace> tr = [] {
        SimConfig c;
        c.record_every = 2;
        std::vector<ThetaTrace> out = simulate_all(functions(), {InitialData::gamma_star, InitialData::f_star}, c);
        c.t_end = 6;
        out.push_back(simulate_theta(functions(), InitialData::f_star_mod, c));
        return out;
    }();
    return tr;
}

const VolterraBounds& volterra() {
    static const WeightRecursion w = weight_recursion(25);
    static const PQPair pq = pq_pair(w);
    static const VolterraBounds v = assemble_g_and_K2(profile(), w, pq);
    return v;
}

}  // namespace

TEST_CASE("Gamma closed form") {
    CHECK(gamma_closed_form(0, 1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_closed_form(1, 1) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(gamma_closed_form(0, 2) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS(gamma_closed_form(0, 0));
}

TEST_CASE("beta table matches the Gamma closed form") {
    const BetaTable c(60, 12, 128);
    std::mt19937 rng(3);
    std::uniform_int_distribution<long> jd(0, 60), kd(1, 12);
    for (int i = 0; i < 20; ++i) {
        const long j = jd(rng), k = kd(rng);
        const double exact = to_double(c(j, k).mid());
        CHECK(std::abs(exact - gamma_closed_form(j, k)) <= 1e-9 * exact);
    }
}

TEST_CASE("profile integrals by quadrature") {
    const ProfileFunctions& pf = functions();
    for (long j : {0L, 1L, 3L, 10L}) {
        const double i1 = to_double(profile().If[j].mid()), i2 = to_double(profile().Jf[j].mid());
        CHECK(pf.integral_f(1, j) == doctest::Approx(i1).epsilon(1e-4));
        CHECK(pf.integral_f(2, j) == doctest::Approx(i2).epsilon(1e-4));
    }
}

TEST_CASE("Gamma* is stationary") {
    const ThetaTrace& g = traces()[0];
    for (double a : g.avg1) CHECK(a == doctest::Approx(26).epsilon(2e-4));
}

TEST_CASE("invariant is conserved to t = 3") {
    for (int i : {0, 1}) {
        const ThetaTrace& tr = traces()[i];
        const double I0 = tr.invariant.front();
        for (double I : tr.invariant) CHECK(std::abs(I - I0) <= 1e-4 * std::abs(I0));
    }
}

TEST_CASE("modified average decays") {
    const ThetaTrace& m = traces()[2];
    CHECK(std::abs(m.invariant.front()) <= 1e-8);
    CHECK(std::abs(m.at(m.avg1, 3)) <= 1e-3);
    CHECK(std::abs(m.avg1.back()) <= 1e-4 * std::abs(m.avg1.front()));
}

TEST_CASE("Laplace value at -1 lies in the certified enclosure") {
    const LaplaceAtMinusOne lap = laplace_minus_one(profile());
    const double v = laplace_minus_one(traces()[2]);
    CHECK(to_double(lap.value.lo()) <= v);
    CHECK(v <= to_double(lap.value.hi()));
}

TEST_CASE("simulated Upsilon dominates the long-time lower bound") {
    const CascadeBounds cb = cascade(CascadeData::from_profile(profile(), false));
    const ExpPoly u = upsilon_lower(cb, laplace_minus_one(profile()), profile_constants::c_mod());
    const ThetaTrace& f = traces()[1];
    for (int i = 0; i <= 180; ++i) {
        const Rational t = rat(120 + i, 100);
        const ExpTable e(t, u.max_rate(), 96);
        CHECK(f.at(f.upsilon, t.get_d()) >= to_double(e.eval(u).hi()) - 1e-3);
    }
}

TEST_CASE("simulated f solves the Volterra equation within the brackets") {
    const ThetaTrace& f = traces()[1];
    const VolterraBounds& v = volterra();
    CHECK(f.upsilon.front() >= to_double(v.g.lower.at_zero()));
    CHECK(f.upsilon.front() <= to_double(v.g.upper.at_zero()));
    const VolterraResidual r = volterra_residual(f, v);
    CHECK(r.worst_excess <= 1e-3);
    CHECK(r.max_abs_residual < 0.1);
}

TEST_CASE("simulated f lies between the Picard iterates") {
    const VolterraBounds& v = volterra();
    const PicardIterates P = picard(v.g, v.K2, v.K2_floor, Integer(1000000));
    const ThetaTrace& f = traces()[1];
    const unsigned long rate = std::max(P.P3_lower.max_rate(), P.P2_upper.max_rate());
    for (int i = 0; i <= 40; ++i) {
        const Rational t = log4_enclosure().lo() * i / 40;
        const ExpTable e(t, rate, 128);
        const double ft = f.at(f.upsilon, t.get_d());
        CHECK(to_double(e.eval(P.P3_lower).lo()) <= ft + 1e-3);
        CHECK(ft <= to_double(e.eval(P.P2_upper).hi()) + 1e-3);
    }
}

TEST_CASE("trace CSV") {
    const std::filesystem::path p = std::filesystem::temp_directory_path() / "certify_oracle_trace_test.csv";
    traces()[0].write_csv(p.string());
    std::ifstream in(p);
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,avgTheta1,invariant,upsilon,upsilon_unscaled");
    std::size_t rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == traces()[0].t.size());
    std::filesystem::remove(p);
}

TEST_CASE("simulation rejects a large step") {
    SimConfig c;
    c.dt = 0.01;
    CHECK_THROWS(simulate_theta(functions(), InitialData::gamma_star, c));
}
