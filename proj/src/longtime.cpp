#include "certify/longtime.hpp"

#include "certify/constants.hpp"

#include <stdexcept>

namespace certify {

namespace {

Rational hi_of(const ProfileBounds& pb, const char* key) { return pb.at(key).hi(); }
Rational mag_of(const ProfileBounds& pb, const char* key) { return pb.at(key).mag(); }

RationalInterval symmetric(const Rational& r) { return RationalInterval(Rational(-r), r); }

RationalInterval rounded(const RationalInterval& x, unsigned bits) { return bits ? x.outward(bits) : x; }

// Range of sum_j (a x_j + b y_j) t_j over nonnegative x_j, y_j with
// sum_j max(x_j, y_j) t_j <= T: each term lies between the negative and the
// positive parts of a and b.
RationalInterval signed_tail(const RationalInterval& a, const RationalInterval& b, const Rational& T) {
    const Rational zero = 0;
    const Rational neg = std::max(zero, Rational(-a.lo())) + std::max(zero, Rational(-b.lo()));
    const Rational pos = std::max(zero, a.hi()) + std::max(zero, b.hi());
    return RationalInterval(Rational(-neg * T), Rational(pos * T));
}

}  // namespace

json CascadeBounds::to_json() const {
    return json{{"int_g1", certify::to_json(int_g1)},       {"g_bar_sum", certify::to_json(g_bar_sum)},
                {"g1_bar", certify::to_json(g1_bar)},       {"g2_zero", certify::to_json(g2_zero)},
                {"g1_zero", certify::to_json(g1_zero)},     {"avg_bar", certify::to_json(avg_bar)},
                {"theta2_zero", certify::to_json(theta2_zero)}, {"theta1_zero", certify::to_json(theta1_zero)},
                {"avg", certify::to_json(avg)}};
}

json CoarseCascade::to_json() const {
    return json{{"int_g1", certify::to_json(int_g1)},         {"g_bar_sum", certify::to_json(g_bar_sum)},
                {"g1_bar", certify::to_json(g1_bar)},         {"theta2_bar", certify::to_json(theta2_bar)},
                {"theta1_bar", certify::to_json(theta1_bar)}, {"theta2_zero", certify::to_json(theta2_zero)},
                {"theta1_zero", certify::to_json(theta1_zero)}, {"avg", certify::to_json(avg)}};
}

CascadeData CascadeData::from_profile(const ProfileBounds& pb, bool time_derivative) {
    CascadeData d;
    if (time_derivative) {
        d.int_g1 = mag_of(pb, "MSG0");
        d.g1_bar = hi_of(pb, "MG1bar0");
        d.g2_bar = hi_of(pb, "MG2bar0");
        d.g1_zero = mag_of(pb, "MG1_0");
        d.g2_zero = mag_of(pb, "MG2_0");
        d.theta1_zero = mag_of(pb, "M1_0");
        d.theta2_zero = mag_of(pb, "M2_0");
    } else {
        d.int_g1 = pb.Ifmod.at(0).mag();
        d.g1_bar = hi_of(pb, "G1bar0");
        d.g2_bar = hi_of(pb, "G2bar0");
        d.g1_zero = pb.afm.at(1).mag();
        d.g2_zero = pb.bfm.at(1).mag();
        d.theta1_zero = mag_of(pb, "F10mod");
        d.theta2_zero = mag_of(pb, "F20mod");
    }
    return d;
}

CascadeBounds cascade(const CascadeData& d) {
    CascadeBounds c;
    // the invariant vanishes, so int G_1 decays exactly at the rate 23
    c.int_g1 = ExpPoly::exp(d.int_rate, d.int_g1);
    // (|G1-bar| + |G2-bar|)' <= -4 (|G1-bar| + |G2-bar|) + 10 (2/pi)|int G_1|
    c.g_bar_sum = duhamel(4, d.g1_bar + d.g2_bar, c.int_g1 * Rational(10));
    // |G1-bar|' + 27 |G1-bar| <= 13 (|G1-bar| + |G2-bar|)
    c.g1_bar = duhamel(27, d.g1_bar, c.g_bar_sum * Rational(13));
    // at gamma = 0: G_2' + 17 G_2 = 10 ((2/pi) int G_1 - avg G1-bar)
    c.g2_zero = duhamel(17, d.g2_zero, (c.int_g1 + c.g1_bar) * Rational(10));
    c.g1_zero = duhamel(14, d.g1_zero, c.g2_zero * Rational(13));
    // avg Theta1-bar = (2/pi) int G_1 - G_1(0) - avg G1-bar
    c.avg_bar = c.int_g1 + c.g1_zero + c.g1_bar;
    c.theta2_zero = duhamel(9, d.theta2_zero, c.avg_bar * Rational(10));
    c.theta1_zero = duhamel(6, d.theta1_zero, c.theta2_zero * Rational(13));
    c.avg = c.theta1_zero + c.avg_bar;
    return c;
}

CoarseCascade coarse_cascade(const ProfileBounds& pb) {
    CoarseCascade c;
    const Rational two_over_pi = 2 / pi_enclosure(rat(1, 1000000)).lo();
    c.int_g1 = ExpPoly::exp(23, two_over_pi * 33);
    c.g_bar_sum = duhamel(4, hi_of(pb, "G1bar0") + hi_of(pb, "G2bar0"), c.int_g1 * Rational(10));
    c.g1_bar = duhamel(27, hi_of(pb, "G1bar0"), c.g_bar_sum * Rational(13));
    c.theta2_bar = duhamel(9, hi_of(pb, "F2modbar_sup"), c.g1_bar * Rational(20) + c.int_g1 * Rational(10));
    c.theta1_bar = duhamel(6, hi_of(pb, "F1modbar_sup"), c.theta2_bar * Rational(13));
    c.theta2_zero = duhamel(9, mag_of(pb, "F20mod"), c.theta1_bar * Rational(10));
    c.theta1_zero = duhamel(6, mag_of(pb, "F10mod"), c.theta2_zero * Rational(13));
    c.avg = c.theta1_zero + c.theta1_bar;
    return c;
}

RationalInterval horizontal_tail(long k, long N, const Rational& xN, const RationalInterval& ckN) {
    const Rational lambda = Rational(k) - rat(3, 2) + rat(17, 20) * (Rational(N) + rat(1, 2)) / (N + 2);
    if (lambda <= 0) throw std::logic_error("horizontal_tail: nonpositive rate");
    return RationalInterval(xN * ckN.hi() * (N + k - 1) / lambda);
}

json LaplaceAtMinusOne::to_json() const {
    json p = json::array();
    for (const auto& x : pieces) p.push_back(certify::to_json(x));
    return json{{"value", certify::to_json(value)}, {"S", certify::to_json(S)}, {"K2hat", certify::to_json(K2hat)},
                {"pieces", std::move(p)}, {"certificate", cert.to_json()}};
}

LaplaceAtMinusOne LaplaceAtMinusOne::from_json(const json& j) {
    LaplaceAtMinusOne l;
    l.value = interval_from_json(j.at("value"));
    l.S = interval_from_json(j.at("S"));
    l.K2hat = interval_from_json(j.at("K2hat"));
    for (std::size_t i = 0; i < l.pieces.size(); ++i) l.pieces[i] = interval_from_json(j.at("pieces").at(i));
    l.cert = Certificate::from_json(j.at("certificate"));
    return l;
}

LaplaceAtMinusOne laplace_minus_one(const ProfileBounds& pb, const LaplaceConfig& cfg) {
    const long J0 = cfg.J0, K0 = cfg.K0, N1 = cfg.N1, N2 = cfg.N2;
    if (J0 + 1 < 39) throw std::invalid_argument("laplace split below the certified row-sum range");
    if (K0 < 14 || K0 + 1 >= static_cast<long>(pb.a.size())) throw std::invalid_argument("laplace: K0 out of range");
    if (J0 >= static_cast<long>(pb.Ifmod.size())) throw std::invalid_argument("laplace: integral tables too short");
    if (!(J0 < N2 && N2 <= N1)) throw std::invalid_argument("laplace: need J0 < N2 <= N1");
    const unsigned bits = cfg.bits;
    LaplaceAtMinusOne out;

    // decay of the ring values: |N_j(-1)|_inf <= 1 - 0.85/j from j = J0 + 1 on
    const Certificate rows = rowsum_check(J0 + 1, N1);
    out.cert.append(rows);
    const Certificate gap = weighted_gap_certificate(tail_gap(), 200);
    out.cert.append(gap);

    const RingAtMinusOne ring = ring_at_minus_one(N1, bits);
    auto x_at = [&](long j) { return std::max(ring.c[j].mag(), ring.d[j].mag()); };

    // c_1^(j) for j <= N1 by c_1^(j) = c_1^(j-1) (j - 1/2)/j
    std::vector<RationalInterval> c1(N1 + 1);
    c1[0] = RationalInterval(Rational(1));
    for (long j = 1; j <= N1; ++j) c1[j] = rounded(c1[j - 1] * RationalInterval(rat(2 * j - 1, 2 * j)), bits);
    const BetaTable table(N2, K0 + 1, bits);

    // (1) j <= J0 through the integral tables
    RationalInterval p1(Rational(0));
    for (long j = 0; j <= J0; ++j) p1 += ring.c[j] * pb.Ifmod[j] + ring.d[j] * pb.Jfmod[j];
    out.pieces[0] = rounded(p1, bits);

    // (2) k = 1, J0 < j < N1
    RationalInterval p2(Rational(0));
    for (long j = J0 + 1; j < N1; ++j)
        p2 = rounded(p2 + (pb.afm[1] * ring.c[j] + pb.bfm[1] * ring.d[j]) * c1[j], bits);
    out.pieces[1] = p2;

    // the ring values are nonnegative for j >= 1: N_j(-1) has nonnegative
    // entries and ring_1 = (10/17, 13/34)
    out.cert.add("laplace", "ring values at -1 are positive at j = 1", ring.c[1].positive() && ring.d[1].positive());

    // (3) k = 1, j >= N1
    out.pieces[2] = signed_tail(pb.afm[1], pb.bfm[1], horizontal_tail(1, N1, x_at(N1), c1[N1]).hi());

    // (4) 2 <= k <= K0, J0 < j < N2
    std::vector<RationalInterval> rows4(K0 + 1, RationalInterval(Rational(0)));
#pragma omp parallel for schedule(dynamic)
    for (long k = 2; k <= K0; ++k) {
        RationalInterval s(Rational(0));
        for (long j = J0 + 1; j < N2; ++j)
            s = rounded(s + (pb.afm[k] * ring.c[j] + pb.bfm[k] * ring.d[j]) * table(j, k), bits);
        rows4[k] = s;
    }
    RationalInterval p4(Rational(0));
    for (long k = 2; k <= K0; ++k) p4 += rows4[k];
    out.pieces[3] = p4;

    // (5) 2 <= k <= K0, j >= N2
    RationalInterval p5(Rational(0));
    for (long k = 2; k <= K0; ++k)
        p5 += signed_tail(pb.afm[k], pb.bfm[k], horizontal_tail(k, N2, x_at(N2), table(N2, k)).hi());
    out.pieces[4] = p5;

    // (6) k > K0, j > J0: |afm_k| + |bfm_k| <= (C_afm + C_bfm) e_{k-1} <= (C_afm + C_bfm) e_K0,
    // x_j <= x_{J0+1}, and the column and row sums of c_k^(j) telescope to c_K0^(J0)
    const Rational c = profile_constants::c_mod(), w = tail_gap().w;
    const Rational C_afm = rat(1, 2) + c + rat(13, 2) / w, C_bfm = Rational(10) + (rat(1, 2) + c) / w;
    const Rational a = pb.a[K0].mag(), b = pb.b[K0].mag();
    const Rational e_K0 = sqrt_upper(a * a + w * w * b * b, 128);
    const Rational p6 = x_at(J0 + 1) * (C_afm + C_bfm) * e_K0 * table(J0, K0).hi();
    out.pieces[5] = symmetric(p6);

    RationalInterval S(Rational(0));
    for (const auto& p : out.pieces) S += p;
    out.S = S;

    // K2-hat(-1) = sum_j d_j(-1) c_1^(j); all d_j(-1) >= 0, so the tail is one-sided
    RationalInterval k2(Rational(0));
    for (long j = 0; j < N1; ++j) k2 = rounded(k2 + ring.d[j] * c1[j], bits);
    k2 += RationalInterval(Rational(0), horizontal_tail(1, N1, x_at(N1), c1[N1]).hi());
    out.K2hat = k2;

    out.cert.add("laplace", "integral term is negative", S.hi() < 0, json{{"S", certify::to_json(S)}});
    if (S.hi() >= 0) throw std::runtime_error("laplace: integral term not negative, bound direction would flip");
    if (k2.lo() <= -1) throw std::runtime_error("laplace: 1 + K2-hat(-1) not positive");
    const RationalInterval base = pb.at("F10mod") * RationalInterval(rat(1, 5)) + pb.at("F20mod") * RationalInterval(rat(13, 40));
    out.value = base + RationalInterval(rat(9, 40)) * S / (RationalInterval(Rational(1)) + k2);

    out.cert.add("laplace", "avg Theta1^mod-hat(-1) >= " + to_string(cfg.target), out.value.lo() >= cfg.target,
                 json{{"value", certify::to_json(out.value)}, {"approx", to_double(out.value.mid())}});
    out.cert.add("laplace", "enclosure width <= 1", out.value.width() <= 1,
                 json{{"width", to_double(out.value.width())}});
    return out;
}

ExpPoly upsilon_lower(const CascadeBounds& cb, const LaplaceAtMinusOne& lap, const Rational& c_mod) {
    if (!cb.avg.is_zero() && cb.avg.min_rate() <= 1) throw std::logic_error("upsilon_lower: envelope decays too slowly");
    return ExpPoly::exp(1, 26 * c_mod + lap.value.lo()) - cb.avg - cb.avg.tail_integral(1);
}

json LongtimeResult::to_json() const {
    return json{{"upsilon_lower", certify::to_json(upsilon)},
                {"neglog", neglog.to_json()},
                {"crossing", json{{"lo", certify::to_json(crossing_lo)}, {"hi", certify::to_json(crossing_hi)}}},
                {"certificate", cert.to_json()}};
}

LongtimeResult longtime_positivity(const CascadeBounds& cb, const LaplaceAtMinusOne& lap, const Rational& c_mod,
                                   const Rational& t0, const Rational& t1, const Rational& step) {
    LongtimeResult r;
    r.cert.add("longtime", "Laplace value certified", lap.cert.passed());
    // Upsilon = (26 c - L) e^{-t} + avg + tail; (26 c + L_lo) is below 26 c - L when L_lo + L_hi <= 0
    r.cert.add("longtime", "Laplace value is negative", lap.value.hi() <= 0,
               json{{"hi", certify::to_json(lap.value.hi())}});
    r.upsilon = upsilon_lower(cb, lap, c_mod);
    if (r.upsilon.max_power() != 0) throw std::logic_error("longtime: envelope has polynomial factors");
    // u = e^{-t}: t >= log 4 becomes u in (0, 1/4]
    std::vector<Rational> co(r.upsilon.max_rate() + 1);
    for (const auto& [k, v] : r.upsilon.terms()) co[k.n] = v;
    r.neglog = neglog_coeff_test(Poly(std::move(co)), 4);
    r.cert.add("longtime", "Upsilon_l(t) > 0 for t >= log 4", r.neglog.passed, r.neglog.to_json());

    r.crossing_lo = -1;
    r.crossing_hi = -1;
    for (Rational t = t0; t <= t1; t += step) {
        const ExpTable tab(t, r.upsilon.max_rate(), 128);
        const RationalInterval v = tab.eval(r.upsilon);
        r.curve.emplace_back(t, v);
        if (v.hi() < 0) r.crossing_lo = t;
        if (v.lo() > 0 && r.crossing_hi < 0 && r.crossing_lo >= 0) r.crossing_hi = t;
    }
    return r;
}

}  // namespace certify
