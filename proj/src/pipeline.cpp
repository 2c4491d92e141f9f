#include "certify/pipeline.hpp"

#include "certify/longtime.hpp"
#include "certify/oracle.hpp"
#include "certify/profile.hpp"
#include "certify/shorttime.hpp"
#include "certify/weights.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <fstream>

namespace certify {

namespace fs = std::filesystem;

namespace {

const std::vector<Stage> kOrder = {Stage::profile, Stage::weights, Stage::pq, Stage::longtime, Stage::shorttime,
                                   Stage::oracle};

void write_json(const fs::path& p, const json& j) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << j.dump(1) << '\n';
}

json read_artifact(const RunConfig& cfg, Stage s) {
    const fs::path p = artifact_path(cfg, s);
    std::ifstream in(p);
    if (!in) throw MissingArtifact("missing artifact " + p.string() + "; run stage '" + name(s) + "' first");
    return json::parse(in);
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

json pair_json(const BoundPair& b) {
    return json{{"lower", to_json(b.lower)}, {"upper", to_json(b.upper)}};
}

BoundPair pair_from_json(const json& j) {
    BoundPair b;
    b.lower = exppoly_from_json(j.at("lower"));
    b.upper = exppoly_from_json(j.at("upper"));
    return b;
}

// evaluations of f on a grid, as decimal strings of the interval endpoints
std::pair<double, double> eval_at(const ExpPoly& f, const Rational& t) {
    if (f.is_zero()) return {0.0, 0.0};
    const RationalInterval v = ExpTable(t, f.max_rate(), 128).eval(f);
    return {to_double(v.lo()), to_double(v.hi())};
}

bool run_profile_stage(const RunConfig& cfg, std::ostream& log) {
    ProfileConfig pc;
    pc.K = cfg.K_max;
    pc.pi_width = cfg.pi_width;
    const ProfileBounds pb = run_profile(pc);
    bool gap = false;
    for (const CertificateEntry& e : pb.cert.entries())
        if (e.lemma == "weighted gap") gap = true;
    for (const CertificateEntry& e : pb.cert.entries())
        if (e.lemma == "weighted gap" && !e.passed) gap = false;
    namespace pc_ = profile_constants;
    const json constants{{"A", to_json(pc_::A())},
                         {"Gamma1(0)", to_json(pc_::gamma1_at_zero())},
                         {"Gamma2(0)", to_json(pc_::gamma2_at_zero())},
                         {"F1(0)", to_json(pc_::F1_at_zero())},
                         {"F2(0)", to_json(pc_::F2_at_zero())},
                         {"c_mod", to_json(pc_::c_mod())}};
    write_json(artifact_path(cfg, Stage::profile),
               json{{"stage", "profile"},
                    {"passed", pb.cert.passed()},
                    {"spectral_gap_passed", gap},
                    {"literal_spectral_gap_passed", pb.literal_gap.passed()},
                    {"constants", constants},
                    {"profile", pb.to_json()}});
    log << "profile: bounds " << (pb.cert.passed() ? "PASS" : "FAIL") << ", literal gap "
        << (pb.literal_gap.passed() ? "PASS" : "FAIL") << '\n';
    return pb.cert.passed();
}

bool run_weights_stage(const RunConfig& cfg, std::ostream& log) {
    const WeightRecursion w = weight_recursion(cfg.M_weights);
    const Certificate rows = rowsum_check(39, cfg.N1);
    const Certificate literal = rowsum_check(10, cfg.N1);
    write_json(artifact_path(cfg, Stage::weights), json{{"stage", "weights"},
                                                        {"passed", rows.passed()},
                                                        {"certificate", rows.to_json()},
                                                        {"literal_rowsum", literal.to_json()},
                                                        {"weights", w.to_json()}});
    log << "weights: row sums from j = 39 " << (rows.passed() ? "PASS" : "FAIL") << ", from j = 10 "
        << (literal.passed() ? "PASS" : "FAIL") << '\n';
    return rows.passed();
}

bool run_pq_stage(const RunConfig& cfg, std::ostream& log) {
    const WeightRecursion w = WeightRecursion::from_json(read_artifact(cfg, Stage::weights).at("weights"));
    const PQPair pq = pq_pair(w);
    const Certificate c = pq_positivity(pq, w, cfg.sweep_step);
    write_json(artifact_path(cfg, Stage::pq), json{{"stage", "pq"},
                                                   {"passed", c.passed()},
                                                   {"certificate", c.to_json()},
                                                   {"M", pq.M},
                                                   {"P", to_json(pq.P)},
                                                   {"Q", to_json(pq.Q)}});
    log << "pq: " << (c.passed() ? "PASS" : "FAIL") << '\n';
    return c.passed();
}

bool run_longtime_stage(const RunConfig& cfg, std::ostream& log) {
    const ProfileBounds pb = ProfileBounds::from_json(read_artifact(cfg, Stage::profile).at("profile"));
    const CascadeBounds cb = cascade(CascadeData::from_profile(pb, false));
    LaplaceConfig lc;
    lc.N1 = cfg.N1;
    lc.N2 = cfg.N2;
    const LaplaceAtMinusOne lap = laplace_minus_one(pb, lc);
    const LongtimeResult r = longtime_positivity(cb, lap, profile_constants::c_mod());
    const bool passed = lap.cert.passed() && r.cert.passed();
    write_json(artifact_path(cfg, Stage::longtime), json{{"stage", "longtime"},
                                                         {"passed", passed},
                                                         {"laplace_passed", lap.cert.passed()},
                                                         {"longtime_passed", r.cert.passed()},
                                                         {"laplace", lap.to_json()},
                                                         {"longtime", r.to_json()},
                                                         {"cascade", cb.to_json()}});
    std::ofstream fig(cfg.out_dir / "figure1.csv");
    fig << "t,upsilon_lower_lo,upsilon_lower_hi\n";
    for (long i = 0; i <= 300; ++i) {
        const Rational t = rat(i, 100);
        const auto [lo, hi] = eval_at(r.upsilon, t);
        fig << fmt(t.get_d()) << ',' << fmt(lo) << ',' << fmt(hi) << '\n';
    }
    log << "longtime: Laplace " << (lap.cert.passed() ? "PASS" : "FAIL") << " [" << fmt(to_double(lap.value.lo()))
        << ", " << fmt(to_double(lap.value.hi())) << "], t >= log 4 " << (r.cert.passed() ? "PASS" : "FAIL")
        << ", crossing in [" << fmt(to_double(r.crossing_lo)) << ", " << fmt(to_double(r.crossing_hi)) << "]\n";
    return passed;
}

bool run_shorttime_stage(const RunConfig& cfg, std::ostream& log) {
    const json jp = read_artifact(cfg, Stage::profile);
    const json jw = read_artifact(cfg, Stage::weights);
    const json jq = read_artifact(cfg, Stage::pq);
    const ProfileBounds pb = ProfileBounds::from_json(jp.at("profile"));
    const WeightRecursion w = WeightRecursion::from_json(jw.at("weights"));
    PQPair pq;
    pq.M = jq.at("M").get<long>();
    pq.P = exppoly_from_json(jq.at("P"));
    pq.Q = exppoly_from_json(jq.at("Q"));

    ShorttimeConfig sc;
    sc.N3 = cfg.N3;
    sc.denom_budget = cfg.denom_budget;
    const VolterraBounds v = assemble_g_and_K2(pb, w, pq, sc);
    const PicardIterates P = picard(v.g, v.K2, v.K2_floor, sc.denom_budget);
    const CascadeBounds cm = cascade(CascadeData::from_profile(pb, false));
    const CascadeBounds cd = cascade(CascadeData::from_profile(pb, true));
    const ExpPoly db = derivative_bound(cm, cd, profile_constants::c_mod());
    const ShorttimeResult res = shorttime_positivity(P, db, sc);
    const bool passed = v.cert.passed() && res.cert.passed();
    write_json(artifact_path(cfg, Stage::shorttime),
               json{{"stage", "shorttime"},
                    {"passed", passed},
                    {"volterra_certificate", v.cert.to_json()},
                    {"shorttime", res.to_json()},
                    {"sizes", P.sizes()},
                    {"volterra", json{{"g", pair_json(v.g)}, {"K2", pair_json(v.K2)}}},
                    {"iterates", json{{"P1_lower", to_json(P.P1_lower)},
                                      {"P2_upper", to_json(P.P2_upper)},
                                      {"P3_lower", to_json(P.P3_lower)}}}});
    std::ofstream fig(cfg.out_dir / "figure2.csv");
    fig << "t,P1_lower,P3_lower,P2_upper\n";
    const Rational end = log4_enclosure().hi() + rat(1, 2);
    for (long i = 0; rat(i, 100) <= end; ++i) {
        const Rational t = rat(i, 100);
        fig << fmt(t.get_d()) << ',' << fmt(eval_at(P.P1_lower, t).first) << ',' << fmt(eval_at(P.P3_lower, t).first)
            << ',' << fmt(eval_at(P.P2_upper, t).second) << '\n';
    }
    log << "shorttime: " << (passed ? "PASS" : "FAIL") << ", derivative bounds " << fmt(to_double(res.L_early)) << " / "
        << fmt(to_double(res.L_late)) << ", P3_l first negative at " << fmt(to_double(res.negative_at)) << '\n';
    return passed;
}

bool run_oracle_stage(const RunConfig& cfg, std::ostream& log) {
    const json jl = read_artifact(cfg, Stage::longtime);
    const json js = read_artifact(cfg, Stage::shorttime);
    const ExpPoly ups = exppoly_from_json(jl.at("longtime").at("upsilon_lower"));
    const LaplaceAtMinusOne lap = LaplaceAtMinusOne::from_json(jl.at("laplace"));
    VolterraBounds v;
    v.g = pair_from_json(js.at("volterra").at("g"));
    v.K2 = pair_from_json(js.at("volterra").at("K2"));
    const ExpPoly P3 = exppoly_from_json(js.at("iterates").at("P3_lower"));
    const ExpPoly P2 = exppoly_from_json(js.at("iterates").at("P2_upper"));

    using namespace oracle;
    const ProfileFunctions pf;
    SimConfig sc;
    sc.record_every = 2;
    std::vector<ThetaTrace> tr = simulate_all(pf, {InitialData::gamma_star, InitialData::f_star}, sc);
    SimConfig sm = sc;
    sm.t_end = 6;
    tr.push_back(simulate_theta(pf, InitialData::f_star_mod, sm));
    for (const ThetaTrace& t : tr) t.write_csv((cfg.out_dir / ("oracle_trace_" + name(t.ic) + ".csv")).string());

    const ThetaTrace &g = tr[0], &f = tr[1], &m = tr[2];
    double drift = 0;
    for (const ThetaTrace* t : {&g, &f})
        for (double I : t->invariant)
            drift = std::max(drift, std::abs(I - t->invariant.front()) / std::abs(t->invariant.front()));
    double ups_margin = 1e300;
    for (long i = 120; i <= 300; ++i) {
        const Rational t = rat(i, 100);
        ups_margin = std::min(ups_margin, f.at(f.upsilon, t.get_d()) - eval_at(ups, t).second);
    }
    double bracket = 1e300;  // min over the grid of the distance to the nearer Picard bound
    const RationalInterval l4 = log4_enclosure();
    for (long i = 0; i <= 40; ++i) {
        const Rational t = l4.lo() * i / 40;
        const double ft = f.at(f.upsilon, t.get_d());
        bracket = std::min({bracket, ft - eval_at(P3, t).first, eval_at(P2, t).second - ft});
    }
    const VolterraResidual vr = volterra_residual(f, v);
    const double lapm = laplace_minus_one(m);
    const bool lap_in = to_double(lap.value.lo()) <= lapm && lapm <= to_double(lap.value.hi());

    json checks = json::array();
    auto check = [&checks](const std::string& claim, bool ok, double value) {
        checks.push_back(json{{"claim", claim}, {"passed", ok}, {"value", value}});
        return ok;
    };
    bool ok = true;
    ok &= check("invariant drift <= 1e-4 relative up to t = 3", drift <= 1e-4, drift);
    ok &= check("simulated Upsilon >= Upsilon_l - 1e-3 on [1.2, 3]", ups_margin >= -1e-3, ups_margin);
    ok &= check("simulated f within [P3_l, P2_u] on [0, log 4] (1e-3 slack)", bracket >= -1e-3, bracket);
    ok &= check("Volterra residual beyond the bracket widths <= 1e-3", vr.worst_excess <= 1e-3, vr.worst_excess);
    ok &= check("simulated Laplace value at -1 inside the certified enclosure", lap_in, lapm);
    // reported only; the g bracket is several units wide near t = 0.7
    check("Volterra residual at bracket midpoints <= 1e-3", vr.max_abs_residual <= 1e-3, vr.max_abs_residual);

    write_json(artifact_path(cfg, Stage::oracle),
               json{{"stage", "oracle"}, {"passed", ok}, {"certifying", false}, {"checks", checks}});
    log << "oracle: " << (ok ? "PASS" : "FAIL") << ", drift " << fmt(drift) << ", Laplace " << fmt(lapm)
        << ", midpoint residual " << fmt(vr.max_abs_residual) << '\n';
    return ok;
}

bool run_one(Stage s, const RunConfig& cfg, std::ostream& log) {
    switch (s) {
        case Stage::profile: return run_profile_stage(cfg, log);
        case Stage::weights: return run_weights_stage(cfg, log);
        case Stage::pq: return run_pq_stage(cfg, log);
        case Stage::longtime: return run_longtime_stage(cfg, log);
        case Stage::shorttime: return run_shorttime_stage(cfg, log);
        case Stage::oracle: return run_oracle_stage(cfg, log);
        case Stage::all: break;
    }
    throw std::logic_error("run_one(all)");
}

json load_if_present(const RunConfig& cfg, Stage s) {
    const fs::path p = artifact_path(cfg, s);
    if (!fs::exists(p)) return nullptr;
    std::ifstream in(p);
    return json::parse(in);
}

}  // namespace

Stage parse_stage(const std::string& s) {
    for (Stage st : {Stage::profile, Stage::weights, Stage::pq, Stage::longtime, Stage::shorttime, Stage::oracle,
                     Stage::all})
        if (name(st) == s) return st;
    throw std::invalid_argument("unknown stage '" + s + "'");
}

std::string name(Stage s) {
    switch (s) {
        case Stage::profile: return "profile";
        case Stage::weights: return "weights";
        case Stage::pq: return "pq";
        case Stage::longtime: return "longtime";
        case Stage::shorttime: return "shorttime";
        case Stage::oracle: return "oracle";
        case Stage::all: return "all";
    }
    return "unknown";
}

json RunConfig::to_json() const {
    return json{{"K_max", K_max},
                {"M_weights", M_weights},
                {"N1", N1},
                {"N2", N2},
                {"N3", N3},
                {"N4", N4},
                {"sweep_step", certify::to_json(sweep_step)},
                {"denom_budget", denom_budget.get_str()},
                {"pi_width", certify::to_json(pi_width)}};
}

void RunConfig::validate() const {
    if (K_max < 200) throw std::invalid_argument("K_max must be >= 200");
    if (M_weights < 1) throw std::invalid_argument("M_weights must be >= 1");
    if (N4 != M_weights) throw std::invalid_argument("N4 must equal M_weights");
    if (N1 < 40 || N2 < 40 || N2 > N1) throw std::invalid_argument("need 40 <= N2 <= N1");
    if (N3 < 1 || N3 > 20) throw std::invalid_argument("N3 must be in [1, 20]");
    if (sweep_step <= 0) throw std::invalid_argument("sweep_step must be positive");
    if (denom_budget < 0) throw std::invalid_argument("denom_budget must be >= 0");
    if (pi_width <= 0) throw std::invalid_argument("pi_width must be positive");
    if (jobs < 0) throw std::invalid_argument("jobs must be >= 0");
}

fs::path artifact_path(const RunConfig& cfg, Stage s) { return cfg.out_dir / (name(s) + "_certificate.json"); }

json build_summary(const RunConfig& cfg) {
    json stages = json::object();
    std::vector<json> art(kOrder.size());
    for (std::size_t i = 0; i < kOrder.size(); ++i) {
        art[i] = load_if_present(cfg, kOrder[i]);
        if (!art[i].is_null())
            stages[name(kOrder[i])] =
                json{{"passed", art[i].at("passed")}, {"artifact", artifact_path(cfg, kOrder[i]).filename().string()}};
    }
    const json &jp = art[0], &jw = art[1], &jq = art[2], &jl = art[3], &js = art[4], &jo = art[5];
    json lemmas = json::array();
    bool all = true, complete = true;
    auto lemma = [&](const std::string& claim, const json& src, const char* key) {
        json e{{"claim", claim}};
        if (src.is_null()) {
            e["status"] = "missing";
            complete = false;
        } else {
            const bool ok = src.at(key).get<bool>();
            e["status"] = ok ? "PASS" : "FAIL";
            all = all && ok;
        }
        lemmas.push_back(std::move(e));
    };
    lemma("||W_k||_2 <= 1 - 1.1/k for every k >= 4", jp, "spectral_gap_passed");
    lemma("row sums of |N_j(-1)| <= 1 - 0.85/j for every j >= 39", jw, "passed");
    lemma("P_25 - Q_25 >= 0 on [0, inf)", jq, "passed");
    lemma("average of Theta1^mod-hat at -1 >= -45.6", jl, "laplace_passed");
    lemma("Upsilon > 0 for t >= log 4", jl, "longtime_passed");
    lemma("Upsilon > 0 on [0, log 4]", js, "passed");

    json literal = json::array();
    if (!jp.is_null())
        literal.push_back(json{{"claim", "||W_{k+1}||_2 <= 1 - 1.1/k for 4 <= k < K"},
                               {"passed", jp.at("literal_spectral_gap_passed")}});
    if (!jw.is_null())
        literal.push_back(json{{"claim", "row sums of |N_j(-1)| <= 1 - 0.85/j for j >= 10"},
                               {"passed", jw.at("literal_rowsum").at("passed")}});
    json figures = json::array();
    if (!jl.is_null()) {
        const json& c = jl.at("longtime").at("crossing");
        const Rational lo = rational_from_json(c.at("lo")), hi = rational_from_json(c.at("hi"));
        figures.push_back(json{{"claim", "zero crossing of Upsilon_l in [1.25, 1.45]"},
                               {"passed", lo >= rat(5, 4) && hi <= rat(29, 20) && lo >= 0},
                               {"crossing", c}});
    }
    if (!js.is_null()) {
        const Rational n = rational_from_json(js.at("shorttime").at("negative_at"));
        figures.push_back(json{{"claim", "lower(P3) negative somewhere in [1.3, 1.5]"},
                               {"passed", n >= rat(13, 10) && n <= rat(3, 2)},
                               {"first_negative", to_json(n)}});
    }
    json j{{"config", cfg.to_json()},
           {"stages", stages},
           {"lemmas", lemmas},
           {"verdict", !complete ? "INCOMPLETE" : all ? "PASS" : "FAIL"},
           {"literal_statements", literal},
           {"figure_checks", figures}};
    if (!jo.is_null()) j["oracle"] = json{{"passed", jo.at("passed")}, {"checks", jo.at("checks")}};
    return j;
}

int run(Stage stage, const RunConfig& cfg, std::ostream& log) {
    cfg.validate();
    if (cfg.jobs > 0) omp_set_num_threads(cfg.jobs);
    fs::create_directories(cfg.out_dir);
    const std::vector<Stage> todo = stage == Stage::all ? kOrder : std::vector<Stage>{stage};
    int code = 0;
    for (Stage s : todo) {
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = run_one(s, cfg, log);
        } catch (const MissingArtifact& e) {
            log << "error: " << e.what() << '\n';
            write_json(cfg.out_dir / "summary.json", build_summary(cfg));
            return 2;
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        log << "  (" << name(s) << " took " << fmt(secs) << " s)\n";
        if (!ok) code = 1;
    }
    write_json(cfg.out_dir / "summary.json", build_summary(cfg));
    return code;
}

}  // namespace certify
