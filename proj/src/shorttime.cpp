#include "certify/shorttime.hpp"

#include "certify/constants.hpp"

#include <algorithm>
#include <stdexcept>

namespace certify {

namespace {

// Bracket of I * f for an interval I and a signed ExpPoly f, termwise.
ExpPoly times_lower(const RationalInterval& I, const ExpPoly& f) {
    return f.positive_part() * I.lo() + f.negative_part() * I.hi();
}
ExpPoly times_upper(const RationalInterval& I, const ExpPoly& f) {
    return f.positive_part() * I.hi() + f.negative_part() * I.lo();
}

ExpPoly invert(const RationalFunction& f, Rational* delta = nullptr) {
    Rational d = 0;
    ExpPoly e = f.inverse_laplace(&d);
    if (delta) *delta = d;
    else if (d != 0) throw std::logic_error("unexpected point mass");
    return e;
}

ExpPoly round_to(const ExpPoly& f, const Integer& budget, Direction dir) {
    return budget == 0 ? f : f.rounded(budget, dir);
}

// sup |f| on [a, b]
Rational abs_sup(const ExpPoly& f, const Rational& a, const Rational& b) {
    const RationalInterval r = f.range(a, b);
    return std::max(abs(r.lo()), abs(r.hi()));
}

// sup of f on [lo, hi] over windows of width 1/pieces
Rational windowed_sup(const ExpPoly& f, const Rational& lo, const Rational& hi, long pieces) {
    Rational best = f.range(lo, lo).hi();
    for (Rational a = lo; a < hi;) {
        const Rational b = std::min<Rational>(hi, a + rat(1, pieces));
        best = std::max(best, f.range(a, b).hi());
        a = b;
    }
    return best;
}

}  // namespace

EtaBound eta_bounds(long M, long N, EtaVariant variant) {
    if (M < 1 || N < 1) throw std::invalid_argument("eta_bounds needs M, N >= 1");
    const BetaTable c(M, N, 0);
    const unsigned long rate = 8 * N - 4;
    EtaBound e;
    const long Nu = std::min(N, M);  // beta^N <= beta^M when N > M
    e.upper = ExpPoly::exp(8 * Nu - 4, c(M - Nu, Nu).hi());
    if (variant == EtaVariant::sharp || N == 1) {
        e.lower = ExpPoly::exp(rate, c(M, N).lo());
        if (variant == EtaVariant::sharp) return e;
    }
    // split at gamma = 1: below, (g^2/(1+g^2))^N >= g^{2N}/2^N and
    // (1 + e^{8r} g^2)^{-M} >= 2^{-M} e^{-8Mr}; above, the weight is at most g^{-2}
    const RationalInterval two_over_pi = Rational(2) / pi_enclosure(rat(1, 1000000));
    if (N > 1) {
        Rational low = two_over_pi.lo() / (2 * M + 1);
        mpz_class p2;
        mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(M + N));
        e.lower = ExpPoly::exp(8 * (M + 1), low / Rational(p2));
    }
    e.upper += ExpPoly::exp(4, two_over_pi.hi() / (2 * M - 1));
    return e;
}

AlphaBeta alphabeta_bounds(const PQPair& pq, const EtaBound& k, const Rational& coupling_coeff,
                           unsigned long coupling_rate) {
    const ExpPoly diff = pq.P - pq.Q;
    const ExpPoly e23 = ExpPoly::exp(23);
    // propagator of [[-10, 10], [13, -13]]
    const ExpPoly A11 = (ExpPoly(13) + e23 * Rational(10)) * rat(1, 23);
    const ExpPoly A12 = (ExpPoly(10) - e23 * Rational(10)) * rat(1, 23);
    const ExpPoly A21 = (ExpPoly(13) - e23 * Rational(13)) * rat(1, 23);
    const ExpPoly A22 = (ExpPoly(10) + e23 * Rational(13)) * rat(1, 23);
    AlphaBeta ab;
    // upper: the same propagator written through P - Q >= 0 and Q >= 0
    ab.beta.upper = convolve(diff, A21 * k.upper) + convolve(pq.Q, k.upper);
    ab.alpha.upper = convolve(diff, A11 * k.upper) + convolve(pq.Q, k.upper);
    if (coupling_coeff == 0) {
        ab.alpha.lower = convolve(pq.P, ExpPoly::exp(10) * k.lower);
        ab.beta.lower = convolve(pq.Q, ExpPoly::exp(13) * k.lower);
        return ab;
    }
    if (coupling_rate < 8) throw std::invalid_argument("coupling rate below 8");
    ab.alpha.lower = convolve(pq.P, A11 * k.lower) + convolve(pq.Q, A12 * k.lower);
    ab.beta.lower = convolve(pq.P, A21 * k.lower) + convolve(pq.Q, A22 * k.lower);
    const ExpPoly inner = ExpPoly::exp(coupling_rate);
    const ExpPoly X = convolve(diff, A21 * inner) + convolve(pq.Q, inner);
    const ExpPoly outer = ExpPoly::exp(coupling_rate - 8, 10 * coupling_coeff);
    ab.alpha.lower -= convolve(A11 * outer, X);
    ab.beta.lower -= convolve(A21 * outer, X);
    return ab;
}

AlphaBeta alphabeta_bounds(const PQPair& pq, long N, EtaVariant variant) {
    const long order = pq.M + 1;
    const EtaBound k = eta_bounds(order, N, variant);
    if (variant == EtaVariant::paper) return alphabeta_bounds(pq, k);
    // beta^N g^{-2} e^{8 r1} g^2 <= e^{8 r1} g^{2N}
    const BetaTable c(order, N + 1, 0);
    return alphabeta_bounds(pq, k, c(order - 1 - N, N + 1).hi(), 8 * N + 4);
}

VolterraBounds assemble_g_and_K2(const ProfileBounds& pb, const WeightRecursion& w, const PQPair& pq,
                                 const ShorttimeConfig& cfg) {
    const long M = w.M, N3 = cfg.N3;
    if (pq.M != M) throw std::invalid_argument("weight recursion and P, Q disagree on M");
    if (static_cast<long>(pb.If.size()) <= M) throw std::invalid_argument("integral tables are too short");
    VolterraBounds v;
    const BetaTable c(M, 1, 0);

    // K_2: ring part plus the beta error against 1/(1 + g^2)
    ExpPoly ring;
    for (long j = 0; j <= M; ++j) ring += w.ring_d[j] * c(j, 1).lo();
    ExpPoly ring_hi;
    for (long j = 0; j <= M; ++j) ring_hi += w.ring_d[j] * c(j, 1).hi();
    const AlphaBeta k1 = alphabeta_bounds(pq, 1, cfg.eta);
    const AlphaBeta k1_floor = alphabeta_bounds(pq, eta_bounds(M + 1, 1, cfg.eta));
    v.K2.lower = ring + k1.beta.lower;
    v.K2.upper = ring_hi + k1.beta.upper;
    v.K2_floor = ring + k1_floor.beta.lower;

    // W = (2/pi) int (H1 w1 + H2 w2): ring part through the integral tables
    for (long j = 0; j <= M; ++j) {
        v.W.lower += times_lower(pb.If[j], w.ring_c[j]) + times_lower(pb.Jf[j], w.ring_d[j]);
        v.W.upper += times_upper(pb.If[j], w.ring_c[j]) + times_upper(pb.Jf[j], w.ring_d[j]);
    }
    // errors against the leading H terms, then the remainder |H - H^(N3)| <= L beta^N3
    for (long k = 1; k <= N3; ++k) {
        const AlphaBeta e = alphabeta_bounds(pq, k, cfg.eta);
        const RationalInterval& a = pb.af[k];
        const RationalInterval& b = pb.bf[k];
        v.W.lower += e.alpha.lower * a.lo() + e.alpha.upper * std::min(a.lo(), Rational(0)) -
                     e.alpha.lower * std::min(a.lo(), Rational(0));
        v.W.upper += e.alpha.lower * a.hi() + e.alpha.upper * std::max(a.hi(), Rational(0)) -
                     e.alpha.lower * std::max(a.hi(), Rational(0));
        v.W.lower += e.beta.lower * b.lo() + e.beta.upper * std::min(b.lo(), Rational(0)) -
                     e.beta.lower * std::min(b.lo(), Rational(0));
        v.W.upper += e.beta.lower * b.hi() + e.beta.upper * std::max(b.hi(), Rational(0)) -
                     e.beta.lower * std::max(b.hi(), Rational(0));
    }
    {
        // (2/pi) int beta^N3 (1 + e^{8r} g^2)^{-(M+1)} <= c_{N3+1}^(M-N3) e^{-(8 N3 + 4) r}
        const BetaTable cr(M, N3 + 1, 0);
        EtaBound rem;
        rem.lower = ExpPoly();
        rem.upper = ExpPoly::exp(8 * N3 + 4, cr(M - N3, N3 + 1).hi());
        const AlphaBeta e = alphabeta_bounds(pq, rem);
        const ExpPoly r = e.alpha.upper * pb.at("L1").hi() + e.beta.upper * pb.at("L2").hi();
        v.W.lower -= r;
        v.W.upper += r;
    }

    // T1 = L^{-1}[ xi/(xi+1) (F1(0)/(xi+6) + 13 F2(0)/((xi+6)(xi+9))) ]
    const RationalFunction xi = RationalFunction::xi();
    const RationalFunction t1hat =
        xi * RationalFunction::pole(1) * RationalFunction::pole(6) *
        (RationalFunction(profile_constants::F1_at_zero()) +
         RationalFunction::pole(9, 1, 13 * profile_constants::F2_at_zero()));
    v.T1 = invert(t1hat);

    // T2 = R * (130 Ibar/(xi (xi+23)) - W-hat), R = xi (xi+19)(xi-4)/(10 (xi+1)(xi+6)(xi+9))
    const RationalFunction Rhat = xi * RationalFunction::linear(19) * RationalFunction::linear(-4) *
                                  RationalFunction::pole(1) * RationalFunction::pole(6) * RationalFunction::pole(9) *
                                  RationalFunction(rat(1, 10));
    const ExpPoly E1 = invert(Rhat * RationalFunction::pole(0) * RationalFunction::pole(23, 1, 130));
    Rational r_delta = 0;
    const ExpPoly r = invert(Rhat, &r_delta);
    if (r_delta != rat(1, 10)) throw std::logic_error("unexpected point mass of R");
    const RationalInterval& Ibar = pb.at("Ibar_full");
    const ExpPoly rp = r.positive_part(), rn = -r.negative_part();
    ExpPoly T2l = times_lower(Ibar, E1) - v.W.upper * r_delta - convolve(rp, v.W.upper) + convolve(rn, v.W.lower);
    ExpPoly T2u = times_upper(Ibar, E1) - v.W.lower * r_delta - convolve(rp, v.W.lower) + convolve(rn, v.W.upper);

    // g = T1 + K2 * T1 + T2
    const ExpPoly tp = v.T1.positive_part(), tn = -v.T1.negative_part();
    v.g.lower = v.T1 + convolve(v.K2.lower, tp) - convolve(v.K2.upper, tn) + T2l;
    v.g.upper = v.T1 + convolve(v.K2.upper, tp) - convolve(v.K2.lower, tn) + T2u;

    // K2_l >= 0: d_j ring >= 0 comes from the pq stage, c_1^(j) > 0 and the
    // beta kernel is Q * (positive exponential)
    bool k2_ok = true;
    for (long j = 0; j <= M; ++j) k2_ok = k2_ok && c(j, 1).lo() > 0;
    v.cert.add("K2", "K2 floor is a nonnegative combination of the d_j ring weights and Q", k2_ok,
               json{{"terms_lower", v.K2.lower.size()}, {"terms_upper", v.K2.upper.size()}});
    v.cert.add("K2", "K2_l(0) <= K2_u(0)", v.K2.lower.at_zero() <= v.K2.upper.at_zero(),
               json{{"lower", to_json(v.K2.lower.at_zero())}, {"upper", to_json(v.K2.upper.at_zero())}});
    v.cert.add("g", "g_l(0) <= g_u(0)", v.g.lower.at_zero() <= v.g.upper.at_zero(),
               json{{"lower", to_json(v.g.lower.at_zero())}, {"upper", to_json(v.g.upper.at_zero())},
                    {"terms_lower", v.g.lower.size()}, {"terms_upper", v.g.upper.size()}});
    return v;
}

json PicardIterates::sizes() const {
    return json{{"g", {g.lower.size(), g.upper.size()}},
                {"K2", {K2.lower.size(), K2.upper.size()}},
                {"P1_lower", P1_lower.size()},
                {"P2_upper", P2_upper.size()},
                {"P3_lower", P3_lower.size()}};
}

PicardIterates picard(const BoundPair& g, const BoundPair& K2, const ExpPoly& K2_floor, const Integer& budget) {
    // valid while K2 >= 0 and g >= 0, which the caller certifies on the range used
    PicardIterates P;
    P.g = g;
    P.K2 = K2;
    P.K2_floor = K2_floor;
    const ExpPoly Kg_u = round_to(convolve(K2.upper, g.upper), budget, Direction::upper);
    const ExpPoly Kg_l = round_to(convolve(K2_floor, g.lower), budget, Direction::lower);
    const ExpPoly KKg_l = round_to(convolve(K2_floor, Kg_l), budget, Direction::lower);
    const ExpPoly KKg_u = round_to(convolve(K2.upper, Kg_u), budget, Direction::upper);
    const ExpPoly KKKg_u = round_to(convolve(K2.upper, KKg_u), budget, Direction::upper);
    P.P1_lower = g.lower - Kg_u;
    P.P2_upper = g.upper - Kg_l + KKg_u;
    P.P3_lower = g.lower - Kg_u + KKg_l - KKKg_u;
    return P;
}

ExpPoly derivative_bound(const CascadeBounds& mod, const CascadeBounds& td, const Rational& c_mod) {
    return td.avg + ExpPoly::exp(1, 26 * c_mod) + mod.avg + convolve(ExpPoly::exp(1), mod.avg);
}

// rounded outward to 2^-72 so that grid points stay short dyadics
RationalInterval log3_enclosure() {
    return log_enclosure(Rational(3), rat(Integer(1), Integer("100000000000000000000"))).outward(72);
}
RationalInterval log4_enclosure() {
    return log_enclosure(Rational(4), rat(Integer(1), Integer("100000000000000000000"))).outward(72);
}

json ShorttimeResult::to_json() const {
    return json{{"early", early.to_json()},
                {"late", late.to_json()},
                {"g_positive", g_positive.to_json()},
                {"L_early", certify::to_json(L_early)},
                {"L_late", certify::to_json(L_late)},
                {"negative_at", certify::to_json(negative_at)},
                {"certificate", cert.to_json()}};
}

ShorttimeResult shorttime_positivity(const PicardIterates& P, const ExpPoly& dbound, const ShorttimeConfig& cfg) {
    ShorttimeResult res;
    const RationalInterval l3 = log3_enclosure(), l4 = log4_enclosure();
    const unsigned bits = cfg.eval_bits;
    auto lower_of = [bits](const ExpPoly& f) {
        const unsigned long rate = f.is_zero() ? 0 : f.max_rate();
        return LowerEval([&f, rate, bits](const Rational& t) { return ExpTable(t, rate, bits).eval_lower(f); });
    };
    const SlopeBound slope = [&dbound](const Rational& a, const Rational& b) { return dbound.range(a, b).hi(); };

    // the Picard bounds need K2 >= 0 (structural) and g >= 0 on [0, log 4]
    const ExpPoly dg = P.g.lower.derivative();
    res.g_positive = lipschitz_grid_check(lower_of(P.g.lower), Rational(0), l4.hi(),
                                          [&dg](const Rational& a, const Rational& b) { return abs_sup(dg, a, b); });
    res.cert.add("g", "g_l > 0 on [0, log 4]", res.g_positive.passed, res.g_positive.to_json());

    res.L_early = round_dyadic(windowed_sup(dbound, Rational(0), l3.hi(), 256), 16, Direction::upper);
    res.L_late = round_dyadic(windowed_sup(dbound, l3.lo(), l4.hi(), 256), 16, Direction::upper);
    res.cert.add("derivative", "sup |Upsilon'| on [0, log 3] <= " + cfg.L_early.get_str(), res.L_early <= cfg.L_early,
                 json{{"bound", certify::to_json(res.L_early)}});
    res.cert.add("derivative", "sup |Upsilon'| on [log 3, log 4] <= " + cfg.L_late.get_str(), res.L_late <= cfg.L_late,
                 json{{"bound", certify::to_json(res.L_late)}});

    res.early = lipschitz_grid_check(lower_of(P.P1_lower), Rational(0), l3.hi(), slope);
    res.cert.add("Picard", "P1_l > 0 on [0, log 3]", res.early.passed, res.early.to_json());
    res.late = lipschitz_grid_check(lower_of(P.P3_lower), l3.lo(), l4.hi(), slope);
    res.cert.add("Picard", "P3_l > 0 on [log 3, log 4]", res.late.passed, res.late.to_json());

    // where the lower bound stops being informative; reported, not certified
    const unsigned long rate = P.P3_lower.max_rate();
    for (Rational t = rat(13, 10); t <= rat(19, 10); t += rat(1, 100)) {
        if (ExpTable(t, rate, bits).eval(P.P3_lower).hi() < 0) {
            res.negative_at = t;
            break;
        }
    }
    return res;
}

}  // namespace certify
