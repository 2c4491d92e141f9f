#include "certify/profile.hpp"

#include "certify/constants.hpp"

#include <algorithm>
#include <stdexcept>

namespace certify {

namespace profile_constants {
Rational A() { return rat(-351, 19); }
Rational c_mod() { return rat(237, 46); }
// the average of Gamma1 is 26, so Gamma1(0) = 26 - A
Rational gamma1_at_zero() { return Rational(26) - A(); }
// the gamma = 0 equation 6 Gamma1 - 13 Gamma2 = 0
Rational gamma2_at_zero() { return gamma1_at_zero() * 6 / 13; }
Rational F1_at_zero() { return gamma1_at_zero() * 5 / 2; }
Rational F2_at_zero() { return gamma2_at_zero() * 4; }
}  // namespace profile_constants

namespace pc = profile_constants;

Mat2 M_matrix(long k) {
    Mat2 m;
    m.m[0][0] = 8 * k + 6;
    m.m[0][1] = -13;
    m.m[1][0] = -10;
    m.m[1][1] = 8 * k + 9;
    return m;
}

Mat2 N_matrix(long k) {
    Mat2 m;
    m.m[0][0] = 8 * (k - 1);
    m.m[0][1] = 0;
    m.m[1][0] = -10;
    m.m[1][1] = 8 * (k - 1);
    return m;
}

Mat2 W_matrix(long k) {
    const long d = 16 * k * k + 30 * k - 19;
    Mat2 w;
    w.m[0][0] = rat(32 * k * k + 4 * k - 101, 2 * d);
    w.m[0][1] = rat(26 * k - 26, d);
    w.m[1][0] = rat(-35, d);
    w.m[1][1] = rat(16 * k * k - 4 * k - 12, d);
    return w;
}

ProfileSeries profile_recursion(long K_max, unsigned bits) {
    if (K_max < 1) throw std::invalid_argument("profile_recursion needs K_max >= 1");
    ProfileSeries p;
    p.A = pc::A();
    p.bits = bits;
    p.a.assign(K_max + 1, Rational(0));
    p.b.assign(K_max + 1, Rational(0));
    const Rational b1 = p.A * 35 / 27;
    p.b[1] = b1;
    p.a[1] = Rational(b1 * 13 / 14);
    for (long k = 2; k <= K_max; ++k) {
        const Mat2 w = W_matrix(k);
        RationalInterval a = p.a[k - 1] * w.m[0][0] + p.b[k - 1] * w.m[0][1];
        RationalInterval b = p.a[k - 1] * w.m[1][0] + p.b[k - 1] * w.m[1][1];
        if (bits) {
            a = a.outward(bits);
            b = b.outward(bits);
        }
        p.a[k] = a;
        p.b[k] = b;
    }
    return p;
}

bool eigen_below(const Rational& g11, const Rational& g12, const Rational& g22, const Rational& s0) {
    const Rational tr = g11 + g22, det = g11 * g22 - g12 * g12;
    return 2 * s0 >= tr && det - s0 * tr + s0 * s0 >= 0;
}

namespace {

// largest singular value of D W D^{-1} at most sqrt(s0), D = diag(1, w)
bool weighted_norm_below(const Mat2& W, const Rational& w, const Rational& s0) {
    const Rational x11 = W.m[0][0], x12 = W.m[0][1] / w, x21 = W.m[1][0] * w, x22 = W.m[1][1];
    return eigen_below(x11 * x11 + x21 * x21, x11 * x12 + x21 * x22, x12 * x12 + x22 * x22, s0);
}

Poly k_poly(std::initializer_list<long> c) {
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    return Poly(std::move(v));
}

}  // namespace

Certificate spectral_gap_check(long k_from, long k_to) {
    if (k_from < 4) throw std::invalid_argument("spectral_gap_check needs k_from >= 4");
    Certificate cert("spectral_gap_literal");
    long fails = 0, first = -1, last = -1;
    for (long k = k_from; k <= k_to; ++k) {
        const Rational r = 1 - rat(11, 10 * k);
        if (!weighted_norm_below(W_matrix(k + 1), 1, r * r)) {
            ++fails;
            if (first < 0) first = k;
            last = k;
        }
    }
    cert.add("spectral gap", "||W_{k+1}||_2 <= 1 - 1.1/k for " + std::to_string(k_from) + " <= k <= " + std::to_string(k_to),
             fails == 0, json{{"failures", fails}, {"first_failure", first}, {"last_failure", last}});
    return cert;
}

std::pair<Poly, Poly> gap_polynomials(const Rational& alpha, const Rational& w) {
    // entries of W_k times den(k) = 2(16k^2 + 30k - 19)
    const Poly w11 = k_poly({-101, 4, 32}), w12 = k_poly({-52, 52}), w21 = k_poly({-70}), w22 = k_poly({-24, -8, 32});
    const Poly den = k_poly({-38, 60, 32});
    const Poly x12 = w12 * (1 / w), x21 = w21 * w;
    const Poly tr = w11 * w11 + x12 * x12 + x21 * x21 + w22 * w22;
    const Poly det = w11 * w22 - w12 * w21;
    const Poly k = Poly::linear(0, 1), ka = Poly::linear(-alpha, 1);
    const Poly k2 = k * k, ka2 = ka * ka, den2 = den * den;
    Poly c1 = ka2 * den2 * 2 - k2 * tr;
    Poly c2 = det * det * k2 * k2 - ka2 * k2 * den2 * tr + ka2 * ka2 * den2 * den2;
    return {c1, c2};
}

long nonnegative_shift(const Poly& p, long from, long limit) {
    for (long x0 = from; x0 <= limit; ++x0) {
        const Poly q = p.shifted(x0);
        if (std::all_of(q.coeffs().begin(), q.coeffs().end(), [](const Rational& c) { return c >= 0; })) return x0;
    }
    return -1;
}

Certificate weighted_gap_certificate(const GapSpec& g, long k_explicit_to) {
    Certificate cert("weighted_gap");
    const std::string tag = "alpha=" + to_string(g.alpha) + ", w=" + to_string(g.w);
    long first_fail = -1;
    for (long k = g.k_from; k <= k_explicit_to && first_fail < 0; ++k) {
        const Rational r = 1 - g.alpha / k;
        if (r < 0 || !weighted_norm_below(W_matrix(k), g.w, r * r)) first_fail = k;
    }
    cert.add("weighted gap", "||D W_k D^-1||_2 <= 1 - alpha/k for " + std::to_string(g.k_from) + " <= k <= " +
                                 std::to_string(k_explicit_to) + " (" + tag + ")",
             first_fail < 0, json{{"first_failure", first_fail}});
    const auto [c1, c2] = gap_polynomials(g.alpha, g.w);
    const long start = k_explicit_to + 1;
    const bool ok1 = nonnegative_shift(c1, start, start) == start;
    const bool ok2 = nonnegative_shift(c2, start, start) == start;
    const bool alpha_ok = start > g.alpha;
    cert.add("weighted gap", "both eigenvalue polynomials have nonnegative coefficients in k - " + std::to_string(start) +
                                 " (" + tag + ")",
             ok1 && ok2 && alpha_ok,
             json{{"shift", start}, {"trace_condition", ok1}, {"determinant_condition", ok2},
                  {"min_shift_trace", nonnegative_shift(c1, 1, start)}, {"min_shift_det", nonnegative_shift(c2, 1, start)}});
    return cert;
}

GapSpec tail_gap() { return {rat(8, 5), Rational(4), 14}; }

RationalInterval tail_bound(long M, long k, const RationalInterval& base_norm) {
    if (M < 4) throw std::invalid_argument("tail_bound needs M >= 4");
    if (k < M) throw std::invalid_argument("tail_bound needs k >= M");
    if (k == M) return base_norm;
    const RationalInterval f = pow_enclosure(rat(k + 1, M + 1), -11, 10, rat(1, 1000000000000L));
    return {Rational(0), base_norm.hi() * f.hi()};
}

BetaTable::BetaTable(long J_max, long K_max, unsigned bits) {
    if (J_max < 0 || K_max < 1) throw std::invalid_argument("beta table needs J_max >= 0, K_max >= 1");
    c_.assign(J_max + 1, std::vector<RationalInterval>(K_max));
    auto round = [bits](RationalInterval x) { return bits ? x.outward(bits) : x; };
    c_[0][0] = Rational(1);
    for (long k = 2; k <= K_max; ++k) c_[0][k - 1] = round(c_[0][k - 2] * rat(2 * k - 3, 2 * (k - 1)));
    for (long j = 1; j <= J_max; ++j)
        for (long k = 1; k <= K_max; ++k) c_[j][k - 1] = round(c_[j - 1][k - 1] * rat(2 * j - 1, 2 * (j + k - 1)));
}

DerivedCoefficients derived_coefficients(const ProfileSeries& p) {
    DerivedCoefficients d;
    d.c_mod = pc::c_mod();
    const long K = p.K();
    d.af.assign(K + 1, Rational(0));
    d.bf = d.afm = d.bfm = d.af;
    const Rational half(rat(1, 2));
    for (long k = 1; k <= K; ++k) {
        d.af[k] = p.a[k] * Rational(-half) + p.b[k] * rat(13, 2);
        RationalInterval bf = (p.a[k] - p.a[k - 1]) * Rational(5) - p.b[k] * half;
        if (k == 1) bf += RationalInterval(p.A * 5);
        d.bf[k] = bf;
        d.afm[k] = d.af[k] - p.a[k] * d.c_mod;
        d.bfm[k] = d.bf[k] - p.b[k] * d.c_mod;
    }
    return d;
}

Rational sqrt_upper(const Rational& x, unsigned bits) {
    if (x < 0) throw std::domain_error("sqrt of negative");
    Integer scale = Integer(1) << (2 * bits);
    Integer n = x.get_num() * scale / x.get_den(), r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return rat(r + 1, Integer(1) << bits);
}

Rational sqrt_lower(const Rational& x, unsigned bits) {
    if (x < 0) throw std::domain_error("sqrt of negative");
    Integer scale = Integer(1) << (2 * bits);
    Integer n = x.get_num() * scale / x.get_den(), r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return rat(r, Integer(1) << bits);
}

const RationalInterval& ProfileBounds::at(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) throw std::out_of_range("profile bound missing: " + key);
    return it->second;
}

namespace {

json interval_array(const std::vector<RationalInterval>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(certify::to_json(x));
    return a;
}

std::vector<RationalInterval> interval_vector(const json& j) {
    std::vector<RationalInterval> v;
    for (const auto& x : j) v.push_back(interval_from_json(x));
    return v;
}

// Decay data of the weighted norm e_k = sqrt(a_k^2 + w^2 b_k^2).
struct TailData {
    Rational eK;     // bound for e_K
    Rational ehat;   // max(e_{K-1}, e_K); (j+1) e_j <= K ehat for j >= K-1
    Rational sumA;   // bound for sum_{k>K} |a_k|
    Rational sumB;   // bound for sum_{k>K} |b_k|
    Rational w, alpha;
};

Rational weighted_norm_upper(const ProfileSeries& p, long k, const Rational& w) {
    const Rational a = p.a[k].mag(), b = p.b[k].mag();
    return sqrt_upper(a * a + w * w * b * b, 64);
}

TailData tail_data(const ProfileSeries& p) {
    const GapSpec g = tail_gap();
    const long K = p.K();
    if (K - 1 < g.k_from) throw std::invalid_argument("profile truncation too short for the tail law");
    TailData t;
    t.w = g.w;
    t.alpha = g.alpha;
    t.eK = weighted_norm_upper(p, K, g.w);
    t.ehat = std::max(t.eK, weighted_norm_upper(p, K - 1, g.w));
    t.sumA = t.eK * (K + 1) / (g.alpha - 1);
    t.sumB = t.sumA / g.w;
    return t;
}

RationalInterval symmetric(const Rational& r) { return {Rational(-r), r}; }

// Range of sum_{k>=1} r_k x^k over x in [0, 1]. By Abel summation the sum is
// sum_n R_n (x^n - x^{n+1}) + R_N x^{N+1} with R_n the partial sums; the
// weights are nonnegative with total x <= 1.
RationalInterval abel_range(const std::vector<RationalInterval>& r) {
    RationalInterval R(0);
    Rational lo = 0, hi = 0;
    for (std::size_t k = 1; k < r.size(); ++k) {
        R += r[k];
        lo = std::min(lo, R.lo());
        hi = std::max(hi, R.hi());
    }
    return {lo, hi};
}

}  // namespace

json ProfileBounds::to_json() const {
    json j;
    j["K"] = K;
    json v = json::object();
    for (const auto& [k, x] : values) v[k] = certify::to_json(x);
    j["values"] = std::move(v);
    j["I"] = interval_array(I);
    j["J"] = interval_array(J);
    j["If"] = interval_array(If);
    j["Jf"] = interval_array(Jf);
    j["Ifmod"] = interval_array(Ifmod);
    j["Jfmod"] = interval_array(Jfmod);
    j["a"] = interval_array(a);
    j["b"] = interval_array(b);
    j["af"] = interval_array(af);
    j["bf"] = interval_array(bf);
    j["afm"] = interval_array(afm);
    j["bfm"] = interval_array(bfm);
    j["certificate"] = cert.to_json();
    j["literal_gap"] = literal_gap.to_json();
    return j;
}

ProfileBounds ProfileBounds::from_json(const json& j) {
    ProfileBounds p;
    p.K = j.at("K").get<long>();
    for (const auto& [k, x] : j.at("values").items()) p.values[k] = interval_from_json(x);
    p.I = interval_vector(j.at("I"));
    p.J = interval_vector(j.at("J"));
    p.If = interval_vector(j.at("If"));
    p.Jf = interval_vector(j.at("Jf"));
    p.Ifmod = interval_vector(j.at("Ifmod"));
    p.Jfmod = interval_vector(j.at("Jfmod"));
    p.a = interval_vector(j.at("a"));
    p.b = interval_vector(j.at("b"));
    p.af = interval_vector(j.at("af"));
    p.bf = interval_vector(j.at("bf"));
    p.afm = interval_vector(j.at("afm"));
    p.bfm = interval_vector(j.at("bfm"));
    p.cert = Certificate::from_json(j.at("certificate"));
    p.literal_gap = Certificate::from_json(j.at("literal_gap"));
    return p;
}

void profile_integrals(const ProfileSeries& p, const DerivedCoefficients& d, const BetaTable& table, long J_max,
                       ProfileBounds& out) {
    (void)d;
    const long K = p.K();
    if (table.J() < J_max + 1 || table.K() < K + 1) throw std::invalid_argument("beta table too small for integrals");
    const TailData t = tail_data(p);
    std::vector<RationalInterval> I(J_max + 2), J(J_max + 2);
#pragma omp parallel for schedule(dynamic)
    for (long j = 0; j <= J_max + 1; ++j) {
        RationalInterval si(0), sj(0);
        for (long k = 1; k <= K; ++k) {
            si += p.a[k] * table(j, k);
            sj += p.b[k] * table(j, k);
        }
        // sum_{k>K} |a_k| c_k^(j): c is decreasing in k, and for j >= 1 the
        // column sums telescope to c_{K+1}^(j-1)
        Rational ta = table(j, K + 1).hi() * t.sumA;
        if (j >= 1) ta = std::min(ta, Rational(t.eK * table(j - 1, K + 1).hi()));
        const Rational tb = ta / t.w;
        I[j] = (si + symmetric(ta)).outward(p.bits ? p.bits : 256);
        J[j] = (sj + symmetric(tb)).outward(p.bits ? p.bits : 256);
    }
    const Rational c = pc::c_mod();
    out.I = I;
    out.J = J;
    out.If.assign(J_max + 1, {});
    out.Jf = out.Ifmod = out.Jfmod = out.If;
    for (long j = 0; j <= J_max; ++j) {
        out.If[j] = J[j] * rat(13, 2) - I[j] * rat(1, 2);
        out.Jf[j] = (I[j + 1] + table(j, 1) * p.A) * Rational(5) - J[j] * rat(1, 2);
        out.Ifmod[j] = out.If[j] - I[j] * c;
        out.Jfmod[j] = out.Jf[j] - J[j] * c;
    }
}

std::pair<RationalInterval, RationalInterval> invariant_partial(const ProfileSeries& p, const DerivedCoefficients& d,
                                                                const BetaTable& table, long K) {
    if (K < 1 || K > p.K() || table.K() < K + 1) throw std::invalid_argument("invariant_partial range");
    RationalInterval s(0);
    for (long k = 1; k <= K; ++k) s += (d.afm[k] + d.bfm[k]) * table(0, k);
    const RationalInterval closed = table(0, K + 1) * Rational(K) * (p.a[K] * rat(104, 23) + p.b[K] * Rational(4));
    return {s, closed};
}

namespace {

bool overlaps(const RationalInterval& x, const RationalInterval& y) { return x.lo() <= y.hi() && y.lo() <= x.hi(); }

void claim(Certificate& cert, const std::string& name, const Rational& value, const Rational& bound) {
    cert.add("profile bounds", name + " <= " + to_string(bound), value <= bound,
             json{{"value", to_string(value)}, {"approx", to_double(value)}});
}

}  // namespace

ProfileBounds linfty_bounds(const ProfileSeries& p, const DerivedCoefficients& d, const ProfileConfig& cfg) {
    const long K = p.K();
    const TailData t = tail_data(p);
    const Rational c = pc::c_mod(), half = rat(1, 2);
    ProfileBounds out;
    out.K = K;
    Certificate& cert = out.cert;

    // partial sums, split by sign for the range of Gamma
    Rational S1 = 0, S2 = 0, pos1 = 0, neg1 = 0, pos2 = 0, neg2 = 0, Saf = 0, Sbf = 0, Safm = 0, Sbfm = 0;
    Rational sup_a = 0, sup_b = 0, sup_afm = 0, sup_bfm = 0, sup_af5 = 0, sup_bf5 = 0;
    for (long k = 1; k <= K; ++k) {
        S1 += p.a[k].mag();
        S2 += p.b[k].mag();
        pos1 += std::max(p.a[k].hi(), Rational(0));
        neg1 += std::max(Rational(-p.a[k].lo()), Rational(0));
        pos2 += std::max(p.b[k].hi(), Rational(0));
        neg2 += std::max(Rational(-p.b[k].lo()), Rational(0));
        Saf += d.af[k].mag();
        Sbf += d.bf[k].mag();
        Safm += d.afm[k].mag();
        Sbfm += d.bfm[k].mag();
        if (k >= 2) {
            sup_a = std::max(sup_a, p.a[k].mag());
            sup_b = std::max(sup_b, p.b[k].mag());
            sup_afm = std::max(sup_afm, d.afm[k].mag());
            sup_bfm = std::max(sup_bfm, d.bfm[k].mag());
        }
        if (k >= 5) {
            sup_af5 = std::max(sup_af5, d.af[k].mag());
            sup_bf5 = std::max(sup_bf5, d.bf[k].mag());
        }
    }
    const Rational w = t.w;
    // coefficient bounds beyond K in units of the weighted norm
    const Rational C_afm = half + c + rat(13, 2) / w, C_bfm = Rational(10) + (half + c) / w;
    const Rational C_af = half + rat(13, 2) / w, C_bf = Rational(10) + half / w;

    auto put = [&](const std::string& key, const RationalInterval& x) { out.values[key] = x; };
    auto put_sup = [&](const std::string& key, const Rational& x) { out.values[key] = RationalInterval(0, x); };

    const Rational g10 = pc::gamma1_at_zero(), g20 = pc::gamma2_at_zero();
    put("A", p.A);
    put("c_mod", c);
    put("Gam100", g10);
    put("Gam200", g20);
    put("F10", pc::F1_at_zero());
    put("F20", pc::F2_at_zero());
    put("F10mod", Rational(pc::F1_at_zero() - c * g10));
    put("F20mod", Rational(pc::F2_at_zero() - c * g20));
    put_sup("E1", t.sumA);
    put_sup("E2", t.sumB);
    put_sup("weighted_norm_K", t.eK);
    put_sup("weighted_norm_hat", t.ehat);
    put("tail_w", w);
    put("tail_alpha", t.alpha);
    put_sup("S1", S1);
    put_sup("S2", S2);
    const RationalInterval ab1 = abel_range(p.a), ab2 = abel_range(p.b);
    const Rational gb1 = std::min(S1, ab1.mag()) + t.sumA, gb2 = std::min(S2, ab2.mag()) + t.sumB;
    put_sup("Gam1bar_sup", gb1);
    put_sup("Gam2bar_sup", gb2);
    const RationalInterval G1range(g10 + std::max(Rational(-neg1), ab1.lo()) - t.sumA,
                                   g10 + std::min(pos1, ab1.hi()) + t.sumA);
    const RationalInterval G2range(g20 + std::max(Rational(-neg2), ab2.lo()) - t.sumB,
                                   g20 + std::min(pos2, ab2.hi()) + t.sumB);
    put("Gam1_range", G1range);
    put("Gam2_range", G2range);
    const Rational g1sup = G1range.mag(), g2sup = G2range.mag();
    // the F2 series carries one extra term -5 a_K beta^{K+1} from the (1 - beta) factor
    std::vector<RationalInterval> bfx(d.bf), bfmx(d.bfm);
    bfx.push_back(p.a[K] * Rational(-5));
    bfmx.push_back(p.a[K] * Rational(-5));
    const Rational F1bar = std::min(Saf, abel_range(d.af).mag()) + half * t.sumA + rat(13, 2) * t.sumB;
    const Rational F2bar = std::min(Rational(Sbf + 5 * p.a[K].mag()), abel_range(bfx).mag()) + 5 * t.sumA + half * t.sumB;
    const Rational F1mod = std::min(Safm, abel_range(d.afm).mag()) + (half + c) * t.sumA + rat(13, 2) * t.sumB;
    const Rational F2mod =
        std::min(Rational(Sbfm + 5 * p.a[K].mag()), abel_range(bfmx).mag()) + 5 * t.sumA + (half + c) * t.sumB;
    put_sup("F1bar_sup", F1bar);
    put_sup("F2bar_sup", F2bar);
    put_sup("F1modbar_sup", F1mod);
    put_sup("F2modbar_sup", F2mod);
    const Rational G1bar0 = d.afm[1].mag() + std::max(sup_afm, Rational(C_afm * t.ehat));
    const Rational G2bar0 = d.bfm[1].mag() + std::max(sup_bfm, Rational(C_bfm * t.ehat));
    const Rational Gamb10 = p.a[1].mag() + std::max(sup_a, t.ehat);
    const Rational Gamb20 = p.b[1].mag() + std::max(sup_b, Rational(t.ehat / w));
    put_sup("G1bar0", G1bar0);
    put_sup("G2bar0", G2bar0);
    put_sup("Gamb10", Gamb10);
    put_sup("Gamb20", Gamb20);
    const Rational L1 = std::max(sup_af5, Rational(C_af * t.ehat));
    const Rational L2 = std::max(sup_bf5, Rational(C_bf * t.ehat));
    put_sup("L1", L1);
    put_sup("L2", L2);

    // integrals
    const BetaTable table(cfg.J_integrals + 1, K + 1, p.bits);
    profile_integrals(p, d, table, cfg.J_integrals, out);
    const RationalInterval pie = pi_enclosure(cfg.pi_width);
    const RationalInterval SG10 = abs(out.Ifmod[0]) * pie * rat(1, 2);
    put_sup("SG10", SG10.hi());
    put("Ibar_full", out.If[0] + out.Jf[0]);

    // data of M = -L F*, the initial value of the time derivative
    const RationalInterval F1m0 = out.values["F10mod"], F2m0 = out.values["F20mod"];
    const RationalInterval Av = out.Ifmod[0] - out.Ifmod[1];  // average of the barred first component of F*,mod
    put("M1_0", F1m0 * Rational(-6) + F2m0 * Rational(13));
    put("M2_0", F2m0 * Rational(-9) - Av * Rational(10));
    RationalInterval m1_1, m2_1;
    Rational sup_m1 = 0, sup_m2 = 0;
    for (long k = 1; k <= K; ++k) {
        const RationalInterval m1 =
            d.afm[k] * Rational(-(8 * k + 6)) + d.afm[k - 1] * Rational(8 * (k - 1)) + d.bfm[k] * Rational(13);
        RationalInterval m2 = d.bfm[k] * Rational(-(8 * k + 9)) + d.bfm[k - 1] * Rational(8 * (k - 1));
        if (k == 1) {
            m2 += (d.afm[1] + Av) * Rational(10);
            m1_1 = m1;
            m2_1 = m2;
        } else {
            m2 += (d.afm[k] - d.afm[k - 1]) * Rational(10);
            sup_m1 = std::max(sup_m1, m1.mag());
            sup_m2 = std::max(sup_m2, m2.mag());
        }
    }
    const Rational tail_m1 = 16 * C_afm * K * t.ehat + 13 * C_bfm * t.ehat;
    const Rational tail_m2 = 17 * C_bfm * K * t.ehat + 20 * C_afm * t.ehat;
    put("MG1_0", m1_1);
    put("MG2_0", m2_1);
    put_sup("MG1bar0", m1_1.mag() + std::max(sup_m1, tail_m1));
    put_sup("MG2bar0", m2_1.mag() + std::max(sup_m2, tail_m2));
    put("MSG0", out.Ifmod[0] * Rational(-23));

    // leading coefficients
    const long ks = std::min(cfg.k_store, K);
    out.a.assign(p.a.begin(), p.a.begin() + ks + 1);
    out.b.assign(p.b.begin(), p.b.begin() + ks + 1);
    out.af.assign(d.af.begin(), d.af.begin() + ks + 1);
    out.bf.assign(d.bf.begin(), d.bf.begin() + ks + 1);
    out.afm.assign(d.afm.begin(), d.afm.begin() + ks + 1);
    out.bfm.assign(d.bfm.begin(), d.bfm.begin() + ks + 1);
    put_sup("norm_v_stored", sqrt_upper(p.a[ks].mag() * p.a[ks].mag() + p.b[ks].mag() * p.b[ks].mag(), 64));

    // claimed constants
    claim(cert, "sum |a_k|, k <= N", S1, rat(99, 2));
    claim(cert, "sum |b_k|, k <= N", S2, Rational(33));
    claim(cert, "|E_N^1|", t.sumA, half);
    claim(cert, "|E_N^2|", t.sumB, half);
    claim(cert, "|Gamma1-bar|", gb1, Rational(50));
    claim(cert, "|Gamma2-bar|", gb2, rat(67, 2));
    claim(cert, "|Gamma1|", g1sup, Rational(50));
    claim(cert, "|Gamma2|", g2sup, rat(67, 2));
    claim(cert, "|F1*,mod-bar|", F1mod, Rational(167));
    claim(cert, "|F2*,mod-bar|", F2mod, Rational(113));
    claim(cert, "|G1-bar (F mod)|", G1bar0, Rational(68));
    claim(cert, "|G2-bar (F mod)|", G2bar0, Rational(147));
    claim(cert, "|G1-bar (Gamma)|", Gamb10, Rational(32));
    claim(cert, "|G2-bar (Gamma)|", Gamb20, Rational(27));
    claim(cert, "(pi/2)|If_0 mod|", SG10.hi(), Rational(33));
    claim(cert, "|M1|", rat(39, 2) * g2sup, Rational(654));
    claim(cert, "|M2|", 55 * g1sup + 26 * 40 + 45 * 26 + 65 * g2sup, Rational(7200));
    claim(cert, "|M1-bar|", rat(39, 2) * gb2, Rational(654));
    claim(cert, "|M2-bar|", 70 * gb1 + 26 * 40 + 45 * 26 + 65 * g2sup, Rational(8000));
    claim(cert, "|G1-bar (M)|", rat(39, 2) * Gamb20, Rational(527));
    claim(cert, "|G2-bar (M)|", 40 * gb1 + abs(p.A) + 15 * g1sup + 15 * gb1 + 15 * gb1 + 45 * 26 + 65 * g2sup,
          Rational(8100));
    cert.add("profile bounds", "|af_k| <= |af_4| for k >= 4", L1 <= d.af[4].mag(),
             json{{"sup_k_above_4", to_double(L1)}, {"af_4", to_double(d.af[4].mag())}});
    cert.add("profile bounds", "|bf_k| <= |bf_4| for k >= 4", L2 <= d.bf[4].mag(),
             json{{"sup_k_above_4", to_double(L2)}, {"bf_4", to_double(d.bf[4].mag())}});

    // exact profile identities of the integrals
    cert.add("profile integrals", "10 I_0 = 13 J_0", overlaps(out.I[0] * Rational(10), out.J[0] * Rational(13)),
             json{{"I0", certify::to_json(out.I[0])}, {"J0", certify::to_json(out.J[0])}});
    cert.add("profile integrals", "13 J_0 - 10 I_1 - 10 A = 0",
             (out.J[0] * Rational(13) - out.I[1] * Rational(10) - RationalInterval(p.A * 10)).contains(Rational(0)),
             json{});

    // invariant of F*,mod: the partial sums equal a boundary term that vanishes as K grows
    const auto [part, closed] = invariant_partial(p, d, table, K);
    cert.add("invariant", "partial invariant sum equals K c_{K+1}^(0) (104 a_K/23 + 4 b_K)", overlaps(part, closed),
             json{{"partial", certify::to_json(part.outward(64))}, {"closed_form", certify::to_json(closed.outward(64))}});
    put("invariant_partial", part);
    // K^{1/2} c_{K+1}^(0) stays bounded while sqrt(K) |v_K| decays, so the limit is 0
    put("invariant", Rational(0));
    return out;
}

ProfileBounds run_profile(const ProfileConfig& cfg) {
    const ProfileSeries p = profile_recursion(cfg.K, cfg.bits);
    const DerivedCoefficients d = derived_coefficients(p);
    ProfileBounds out = linfty_bounds(p, d, cfg);
    // the literal form is reported separately: it is false for small k, and
    // nothing downstream relies on it
    out.literal_gap = spectral_gap_check(4, std::max<long>(4, cfg.K - 1));
    out.cert.append(weighted_gap_certificate({rat(11, 10), Rational(1), 4}, cfg.gap_explicit));
    out.cert.append(weighted_gap_certificate(tail_gap(), cfg.gap_explicit));
    return out;
}

}  // namespace certify
