#include "pwhs/rootkit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace pwhs {

namespace {

// span coefficients -> exact polynomial pair (A, B) with f = A + B atanh
std::pair<RationalPolynomial, RationalPolynomial> rationalize(const SpanFunction& f) {
    return {RationalPolynomial::from_doubles(f.poly_part()),
            RationalPolynomial::from_doubles(f.atanh_part())};
}

int sturm_count_nudged(const RationalPolynomial& p, Rational lo, Rational hi) {
    const Rational step = (hi - lo) / 1000000000;
    for (int tries = 0; tries < 64; ++tries) {
        try {
            return sturm_count(p, lo, hi);
        } catch (const endpoint_root&) {
            lo += step * (tries + 1);
            hi -= step * (tries + 1);
        }
    }
    throw domain_error("could not nudge endpoints off roots");
}

RationalPolynomial one_minus_r2() {
    return RationalPolynomial({Rational(1), Rational(0), Rational(-1)});
}

// truncated atanh series sum_{k<=K} x^{2k+1}/(2k+1)
Rational atanh_taylor(const Rational& x, int K) {
    Rational term = x, sum = x;
    const Rational x2 = x * x;
    for (int k = 1; k <= K; ++k) {
        term *= x2;
        sum += term / (2 * k + 1);
    }
    return sum;
}

// exact rational enclosure of atanh on [a, b] in (0, 1):
// T_K(a) <= atanh <= T_K(b) + b^(2K+3)/((2K+3)(1-b^2))
std::pair<Rational, Rational> atanh_enclosure(const Rational& a, const Rational& b) {
    const int K = b < Rational(1, 2) ? 6 : (b < Rational(4, 5) ? 10 : 13);
    const Rational lo = atanh_taylor(a, K);
    Rational pw = b;
    for (int i = 0; i < 2 * K + 2; ++i) pw *= b;
    const Rational hi = atanh_taylor(b, K) + pw / ((2 * K + 3) * (1 - b * b));
    return {lo, hi};
}

// rounds onto a denominator-2^28 grid, upward or downward
Rational snap(double x, bool up) {
    const double scaled = x * 268435456.0;
    const double snapped = up ? std::ceil(scaled) : std::floor(scaled);
    return rational_from_double(snapped) / 268435456;
}

// p keeps the given nonzero sign everywhere on (lo, hi)
bool poly_has_sign(const RationalPolynomial& p, int sign, const Rational& lo,
                   const Rational& hi) {
    if (p.is_zero()) return false;
    if (p.degree() >= 1 && sturm_count_nudged(p, lo, hi) != 0) return false;
    const Rational v = p((lo + hi) / 2);
    return sign > 0 ? v > 0 : v < 0;
}

// a low-denominator split point strictly inside (a, b)
Rational nice_midpoint(const Rational& a, const Rational& b) {
    const Rational mid = (a + b) / 2;
    for (long den : {1024L, 65536L, 1L << 24, 1L << 40}) {
        const Rational scaled = mid * den;
        const boost::multiprecision::cpp_int trunc =
            boost::multiprecision::numerator(scaled) /
            boost::multiprecision::denominator(scaled);
        const Rational r(trunc, den);
        if (r > a && r < b) return r;
    }
    return mid;
}

// Adaptive box certification: f = A + B u with u = atanh(r) confined to an
// exact rational enclosure per slice; f keeps `sign` if both frozen-u
// polynomials do. A second box with nu = atanh(r)/r frozen covers the left
// end, where f vanishes linearly and the additive enclosure is too loose.
// Splits when both boxes are too coarse; close to r = 1 the split is
// geometric in 1-r so the logarithmic growth of atanh halves per level.
bool certify_gap(const RationalPolynomial& A, const RationalPolynomial& B,
                 const Rational& a, const Rational& b, int sign, int& budget) {
    if (a >= b) return true;
    if (--budget < 0) return false;
    const auto [ulo, uhi] = atanh_enclosure(a, b);
    if (poly_has_sign(A + B * ulo, sign, a, b) &&
        poly_has_sign(A + B * uhi, sign, a, b))
        return true;
    if (b < Rational(3, 4)) {
        const RationalPolynomial Br = B * RationalPolynomial({Rational(0), Rational(1)});
        if (poly_has_sign(A + Br * (ulo / a), sign, a, b) &&
            poly_has_sign(A + Br * (uhi / b), sign, a, b))
            return true;
    }
    if (budget <= 0) return false;
    Rational mid;
    if (b > Rational(15, 16)) {
        const double ga = to_double(1 - a), gb = to_double(1 - b);
        mid = snap(1.0 - std::sqrt(ga * gb), false);
        if (!(mid > a && mid < b)) mid = nice_midpoint(a, b);
    } else {
        mid = nice_midpoint(a, b);
    }
    return certify_gap(A, B, a, mid, sign, budget) &&
           certify_gap(A, B, mid, b, sign, budget);
}

}  // namespace

int ZeroReport::simple_count() const {
    return static_cast<int>(
        std::count_if(zeros.begin(), zeros.end(),
                      [](const IsolatedZero& z) { return z.simple; }));
}

std::optional<int> certify_sign(const RationalPolynomial& A,
                                const RationalPolynomial& B,
                                const Rational& lo, const Rational& hi) {
    // candidate sign from a cheap evaluation at the midpoint
    const double mid = to_double((lo + hi) / 2);
    const double guess = A(mid) + B(mid) * std::atanh(mid);
    const int sign = guess > 0 ? 1 : -1;
    int budget = 96;
    if (certify_gap(A, B, lo, hi, sign, budget)) return sign;
    return std::nullopt;
}

int rolle_zero_bound(const RationalPolynomial& A, const RationalPolynomial& B,
                     const Rational& lo, const Rational& hi) {
    if (B.is_zero()) {
        if (A.is_zero() || A.degree() == 0) return 0;
        return sturm_count_nudged(A, lo, hi);
    }
    if (A.is_zero()) {
        // f = B atanh; atanh does not vanish on (0,1)
        return B.degree() >= 1 ? sturm_count_nudged(B, lo, hi) : 0;
    }
    // Where B != 0 the zeros of f match those of f/B = A/B + atanh, whose
    // derivative has numerator N after clearing the positive (1-r^2) B^2.
    const RationalPolynomial N =
        (A.derivative() * B - A * B.derivative()) * one_minus_r2() + B * B;
    const int zb = B.degree() >= 1 ? sturm_count_nudged(B, lo, hi) : 0;
    const RationalPolynomial g = gcd(A, B);
    const int zg = g.degree() >= 1 ? sturm_count_nudged(g, lo, hi) : 0;
    // Every span built from the averaged functions vanishes at r = 0; that
    // known zero extends the Rolle chain one step to the left and tightens
    // the bound by one.
    const bool anchored = !A.coeffs().empty() && A.coeffs()[0] == 0 && B(Rational(0)) != 0;
    const Rational from = anchored ? Rational(1, 1000000000000000LL) : lo;
    const int zn = N.is_zero()
                       ? 0
                       : (N.degree() >= 1 ? sturm_count_nudged(N, from, hi) : 0);
    return zn + zb + (anchored ? 0 : 1) + zg;
}

ZeroReport isolate_zeros(const SpanFunction& f, double lo, double hi, double tol) {
    if (!(lo >= 1e-9 && hi <= 1.0 - 1e-9 && lo < hi))
        throw domain_error("isolate_zeros interval must lie inside [1e-9, 1-1e-9]");
    ZeroReport rep;
    rep.ceiling = f.zero_ceiling;

    auto [A, B] = rationalize(f);
    if (A.is_zero() && B.is_zero()) {
        // identically zero: no simple (isolated) zeros exist
        rep.count_certified = true;
        return rep;
    }

    const Rational rlo = rational_from_double(lo), rhi = rational_from_double(hi);

    double coeff_scale = 0;
    for (double c : f.coefficients) coeff_scale = std::max(coeff_scale, std::abs(c));
    const double deriv_floor = 1e-8 * std::max(1.0, coeff_scale);

    if (B.is_zero()) {
        // polynomial case: exact isolation and counting; bisect on the
        // squarefree part so every root carries a sign change
        const RationalPolynomial g = gcd(A, A.derivative());
        const RationalPolynomial sf = g.degree() >= 1 ? A.divide_exact(g) : A;
        for (auto [a, b] : isolate_real_roots(A, rlo, rhi)) {
            Rational aa = a, bb = b;
            int sa = sf(aa) > 0 ? 1 : -1;
            while (to_double(bb - aa) > tol) {
                const Rational mid = (aa + bb) / 2;
                const Rational v = sf(mid);
                if (v == 0) { aa = bb = mid; break; }
                if ((v > 0 ? 1 : -1) == sa) aa = mid;
                else bb = mid;
            }
            IsolatedZero z;
            z.location = to_double((aa + bb) / 2);
            z.half_width = to_double(bb - aa) / 2;
            bool multiple = false;
            if (g.degree() >= 1) {
                try {
                    multiple = sturm_count(g, a, b) > 0;
                } catch (const endpoint_root&) {
                    multiple = true;  // root of the gcd at the bracket edge
                }
            }
            z.simple = !multiple && std::abs(f.span_derivative(z.location)) > deriv_floor;
            rep.zeros.push_back(z);
        }
        rep.count_certified = true;
        return rep;
    }

    // transcendental path: dense scan + bisection, then exact certification
    constexpr int kScanPoints = 10000;
    auto val = [&f](double r) { return f.span_value(r); };
    std::vector<double> xs(kScanPoints + 1), vs(kScanPoints + 1);
    double grid_scale = 0;
    for (int i = 0; i <= kScanPoints; ++i) {
        xs[i] = lo + (hi - lo) * i / kScanPoints;
        vs[i] = val(xs[i]);
        grid_scale = std::max(grid_scale, std::abs(vs[i]));
    }
    const double near_zero = tol * std::max(1.0, grid_scale) * 1e3;

    bool suspected_nonsimple = false;
    for (int i = 0; i < kScanPoints; ++i) {
        if (vs[i] == 0.0) {
            const double x = std::nextafter(xs[i], lo);
            if (val(x) * vs[i + 1] > 0) continue;
        }
        if (vs[i] * vs[i + 1] < 0) {
            double a = xs[i], b = xs[i + 1], fa = vs[i];
            while (b - a > 2 * tol) {
                const double m = 0.5 * (a + b), fm = val(m);
                if (fm == 0.0) { a = b = m; break; }
                if ((fm < 0) == (fa < 0)) { a = m; fa = fm; }
                else b = m;
            }
            IsolatedZero z;
            z.location = 0.5 * (a + b);
            z.half_width = std::max(0.5 * (b - a), tol);
            z.simple = std::abs(f.span_derivative(z.location)) > deriv_floor;
            rep.zeros.push_back(z);
        } else if (i > 0 && std::abs(vs[i]) < near_zero &&
                   std::abs(vs[i]) <= std::abs(vs[i - 1]) &&
                   std::abs(vs[i]) <= std::abs(vs[i + 1]) &&
                   vs[i - 1] * vs[i + 1] > 0) {
            // local extremum hugging zero without a crossing
            IsolatedZero z;
            z.location = xs[i];
            z.half_width = (hi - lo) / kScanPoints;
            z.simple = false;
            rep.zeros.push_back(z);
            suspected_nonsimple = true;
        }
    }

    // merge near-coincident zeros; simple-zero semantics need separation
    std::sort(rep.zeros.begin(), rep.zeros.end(),
              [](const IsolatedZero& x, const IsolatedZero& y) {
                  return x.location < y.location;
              });
    for (std::size_t i = 1; i < rep.zeros.size();) {
        if (rep.zeros[i].location - rep.zeros[i - 1].location < 10 * tol) {
            rep.zeros[i - 1].simple = false;
            rep.zeros[i - 1].half_width += rep.zeros[i].half_width;
            rep.zeros.erase(rep.zeros.begin() + i);
            suspected_nonsimple = true;
        } else {
            ++i;
        }
    }

    if (suspected_nonsimple) return rep;  // uncertified by construction

    const int found = rep.count();
    if (found == rep.ceiling) {
        rep.count_certified = true;
        return rep;
    }
    if (found == rolle_zero_bound(A, B, rlo, rhi)) {
        rep.count_certified = true;
        return rep;
    }
    // gap certification: a constant sign on every stretch between brackets,
    // plus strict monotonicity across each (slightly widened) bracket, pins
    // the count exactly. The derivative is boxed through the pair
    // (1-r^2) f' = [A'(1-r^2) + B] + [(1-r^2) B'] atanh.
    // Gaps where the scan already shows the function skimming zero cannot
    // certify; give up on those without burning the proof budget.
    const double gate = 1e-8 * std::max(1.0, grid_scale);
    // the spans vanish structurally at r = 0 and may flatten toward r = 1,
    // so the skim test only looks at interior scan points
    auto scan_min = [&](double a, double b) {
        a = std::max(a, 2e-3);
        b = std::min(b, 1.0 - 2e-3);
        double mn = std::numeric_limits<double>::infinity();
        const double step = (hi - lo) / kScanPoints;
        int ia = std::max(0, static_cast<int>(std::ceil((a - lo) / step)));
        int ib = std::min(kScanPoints, static_cast<int>(std::floor((b - lo) / step)));
        for (int i = ia; i <= ib; ++i) mn = std::min(mn, std::abs(vs[i]));
        return mn;
    };
    const RationalPolynomial dA = A.derivative() * one_minus_r2() + B;
    const RationalPolynomial dB = B.derivative() * one_minus_r2();
    // widen the monotone zone around each zero as far as its neighbours
    // allow; gaps then start where the function has already grown
    const int n = rep.count();
    std::vector<double> radius(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double room = 1e-3;
        const double z = rep.zeros[i].location;
        if (i > 0) room = std::min(room, 0.25 * (z - rep.zeros[i - 1].location));
        if (i + 1 < n) room = std::min(room, 0.25 * (rep.zeros[i + 1].location - z));
        room = std::min({room, 0.25 * (z - lo), 0.25 * (hi - z)});
        radius[i] = std::max(room, rep.zeros[i].half_width);
    }
    bool certified = true;
    Rational left = rlo;
    for (int i = 0; i <= n && certified; ++i) {
        const Rational right =
            i < n ? snap(rep.zeros[i].location - radius[i], false) : rhi;
        if (left < right) {
            certified = scan_min(to_double(left), to_double(right)) > gate &&
                        certify_sign(A, B, left, right).has_value();
        }
        if (i < n) {
            left = snap(rep.zeros[i].location + radius[i], true);
            const Rational sl_lo = std::max(rlo, right);
            const Rational sl_hi = std::min(rhi, left);
            if (certified && sl_lo < sl_hi)
                certified = certify_sign(dA, dB, sl_lo, sl_hi).has_value();
        }
    }
    rep.count_certified = certified;
    return rep;
}

// --- Wronskians --------------------------------------------------------------

namespace {

// value = P(r)/(1-r^2)^p + Q(r)/(1-r^2)^q * atanh(r), integer powers
struct RatLog {
    std::vector<double> P;
    int p = 0;
    std::vector<double> Q;
    int q = 0;

    static std::vector<double> dpoly(const std::vector<double>& c) {
        if (c.size() <= 1) return {};
        std::vector<double> d(c.size() - 1);
        for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = i * c[i];
        return d;
    }
    static std::vector<double> mul(const std::vector<double>& a,
                                   const std::vector<double>& b) {
        if (a.empty() || b.empty()) return {};
        std::vector<double> c(a.size() + b.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
        return c;
    }
    static std::vector<double> add(std::vector<double> a, const std::vector<double>& b) {
        if (a.size() < b.size()) a.resize(b.size(), 0.0);
        for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
        return a;
    }
    static double horner(const std::vector<double>& c, double r) {
        double v = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * r + *it;
        return v;
    }

    RatLog derivative() const {
        const std::vector<double> omr2{1.0, 0.0, -1.0};  // 1 - r^2
        const std::vector<double> two_r{0.0, 2.0};
        RatLog d;
        // P-part: [P'(1-r^2) + 2 p r P] / (1-r^2)^{p+1}
        d.P = add(mul(dpoly(P), omr2), mul(mul(two_r, {static_cast<double>(p)}), P));
        d.p = p + 1;
        // Q-part contributes Q/(1-r^2)^{q+1} rationally
        // and [Q'(1-r^2) + 2 q r Q]/(1-r^2)^{q+1} * atanh
        if (!Q.empty()) {
            const int np = std::max(p + 1, q + 1);
            std::vector<double> padd = Q;
            for (int i = 0; i < np - (q + 1); ++i) padd = mul(padd, omr2);
            std::vector<double> pold = d.P;
            for (int i = 0; i < np - (p + 1); ++i) pold = mul(pold, omr2);
            d.P = add(pold, padd);
            d.p = np;
            d.Q = add(mul(dpoly(Q), omr2), mul(mul(two_r, {static_cast<double>(q)}), Q));
            d.q = q + 1;
        }
        return d;
    }

    double eval(double r) const {
        const double omr2 = 1.0 - r * r;
        double v = horner(P, r) * std::pow(omr2, -p);
        if (!Q.empty()) v += horner(Q, r) * std::pow(omr2, -q) * std::atanh(r);
        return v;
    }
};

std::vector<RatLog> basis_ratlogs(WronskianBasis basis, int m) {
    std::vector<RatLog> out;
    if (basis == WronskianBasis::F) {
        for (int j = 1; j <= 4; ++j) {
            RatLog b;
            b.P.assign(j + 1, 0.0);
            b.P[j] = 1.0;
            out.push_back(b);
        }
        RatLog f4;  // (r^2-1)^2 atanh = (1-r^2)^2 atanh
        f4.Q = {1.0};
        f4.q = -2;
        out.push_back(f4);
        RatLog f5;  // (r^4-1) atanh
        f5.Q = {-1.0, 0.0, 0.0, 0.0, 1.0};
        f5.q = 0;
        out.push_back(f5);
        RatLog f6;  // r^2 atanh
        f6.Q = {0.0, 0.0, 1.0};
        f6.q = 0;
        out.push_back(f6);
        return out;
    }
    if (m < 3) throw domain_error("G basis requires m >= 3");
    for (int j = 0; j <= 2 * (m - 2); ++j) {
        RatLog b;
        b.P.assign(j + 1, 0.0);
        b.P[j] = 1.0;
        out.push_back(b);
    }
    RatLog last;  // r (r^2-1)^(m-3) atanh = (-1)^(m-3) r (1-r^2)^(m-3) atanh
    last.Q = {0.0, (m - 3) % 2 == 0 ? 1.0 : -1.0};
    last.q = -(m - 3);
    out.push_back(last);
    return out;
}

// The numerators of W4, W5, W6 cancel catastrophically near r = 0, so they
// are evaluated there through exact power series of P + Q atanh.
struct SeriesNumerator {
    std::vector<double> series;  // coefficients of P + Q * atanh, degree <= 45
    std::vector<double> P, Q;    // direct form for larger r

    SeriesNumerator(std::vector<double> P_, std::vector<double> Q_)
        : P(std::move(P_)), Q(std::move(Q_)) {
        const RationalPolynomial Pr = RationalPolynomial::from_doubles(P);
        const RationalPolynomial Qr = RationalPolynomial::from_doubles(Q);
        std::vector<Rational> at(46, Rational(0));
        for (int k = 0; 2 * k + 1 <= 45; ++k) at[2 * k + 1] = Rational(1, 2 * k + 1);
        const RationalPolynomial sum = Pr + Qr * RationalPolynomial(std::move(at));
        series.assign(46, 0.0);
        for (int i = 0; i <= sum.degree() && i <= 45; ++i)
            series[i] = to_double(sum.coeffs()[i]);
    }

    double operator()(double r) const {
        if (r < 0.35) return RatLog::horner(series, r);
        return RatLog::horner(P, r) + RatLog::horner(Q, r) * std::atanh(r);
    }
};

}  // namespace

std::vector<double> wronskians_numeric(WronskianBasis basis, double r, int m) {
    if (!(r > 0.0 && r < 1.0)) throw domain_error("wronskians need r in (0,1)");
    auto fs = basis_ratlogs(basis, m);
    const int n = static_cast<int>(fs.size());
    std::vector<std::vector<double>> table(n, std::vector<double>(n));
    for (int j = 0; j < n; ++j) {
        RatLog cur = fs[j];
        for (int i = 0; i < n; ++i) {
            table[i][j] = cur.eval(r);
            if (i + 1 < n) cur = cur.derivative();
        }
    }
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k) {
        Eigen::MatrixXd Mk(k + 1, k + 1);
        for (int i = 0; i <= k; ++i)
            for (int j = 0; j <= k; ++j) Mk(i, j) = table[i][j];
        out[k] = Mk.determinant();
    }
    return out;
}

std::vector<double> wronskians(WronskianBasis basis, double r, int m) {
    if (!(r > 0.0 && r < 1.0)) throw domain_error("wronskians need r in (0,1)");
    if (basis == WronskianBasis::F) {
        static const SeriesNumerator w4num({0, -288, 0, 480}, {288, 0, -576, 0, 288});
        static const SeriesNumerator w5num(
            {0, -46080, 0, 67584, 0, -9216},
            {46080, 0, -82944, 0, 27648, 0, 9216});
        static const SeriesNumerator w6num(
            {0, 0, -30965760, 0, 42762240, 0, -4423680, 0, -2654208},
            {0, 30965760, 0, -53084160, 0, 15925248, 0, 3538944, 0, 2654208});
        const double r2 = r * r;
        const double s2 = (r2 - 1.0) * (r2 - 1.0);
        std::vector<double> w(7);
        w[0] = r;
        w[1] = r2;
        w[2] = 2 * r2 * r;
        w[3] = 12 * r2 * r2;
        w[4] = w4num(r) / s2;
        w[5] = w5num(r) / (s2 * s2 * s2);
        w[6] = w6num(r) / std::pow(s2, 6);
        return w;
    }
    if (m < 3) throw domain_error("G basis requires m >= 3");
    const int n = 2 * (m - 2) + 2;
    std::vector<double> w(n);
    double fact = 1.0, prod = 1.0;
    for (int j = 0; j <= 2 * (m - 2); ++j) {
        if (j > 0) fact *= j;
        prod *= fact;
        w[j] = prod;
    }
    w[n - 1] = wronskians_numeric(basis, r, m).back();
    return w;
}

double wronskian4_derivative(double r) {
    // numerator of W4' over (1-r^2)^3, combined once in exact arithmetic
    // from the closed form 96(5r^3-3r)/(r^2-1)^2 + 288 atanh
    static const std::vector<double> numer = [] {
        const RationalPolynomial P({Rational(0), Rational(-288), Rational(0), Rational(480)});
        const RationalPolynomial omr2({Rational(1), Rational(0), Rational(-1)});
        const RationalPolynomial twor({Rational(0), Rational(2)});
        // [P'(1-r^2) + 2*2 r P] + 288 (1-r^2)^2
        const RationalPolynomial comb =
            P.derivative() * omr2 + twor * P * Rational(2) +
            omr2 * omr2 * Rational(288);
        std::vector<double> c;
        for (const auto& v : comb.coeffs()) c.push_back(to_double(v));
        return c;
    }();
    double num = 0;
    for (auto it = numer.rbegin(); it != numer.rend(); ++it) num = num * r + *it;
    return num / std::pow(1.0 - r * r, 3);
}

// --- parametric root regions -------------------------------------------------

std::vector<RootRegion> parametric_root_regions(const ParametricFamily& family,
                                                double window_lo, double window_hi,
                                                const Rational& interval_lo,
                                                const Rational& interval_hi) {
    const RationalPolynomial disc = family.discriminant_in_kappa();
    if (disc.is_zero())
        throw degenerate_family("discriminant vanishes identically on the window");

    std::vector<double> cuts;
    auto add_roots = [&](const RationalPolynomial& p) {
        if (p.is_zero() || p.degree() < 1) return;
        for (double x : real_roots(p))
            if (x > window_lo && x < window_hi) cuts.push_back(x);
    };
    add_roots(disc);
    add_roots(family.coeffs.back());  // degree drop in r
    RationalPolynomial at_lo, at_hi;
    Rational plo = 1, phi = 1;
    for (const auto& c : family.coeffs) {
        at_lo = at_lo + c * plo;
        at_hi = at_hi + c * phi;
        plo *= interval_lo;
        phi *= interval_hi;
    }
    add_roots(at_lo);
    add_roots(at_hi);

    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               cuts.end());

    std::vector<double> edges{window_lo};
    edges.insert(edges.end(), cuts.begin(), cuts.end());
    edges.push_back(window_hi);

    std::vector<RootRegion> regions;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        RootRegion reg;
        reg.kappa_lo = edges[i];
        reg.kappa_hi = edges[i + 1];
        double sample;
        if (std::isinf(reg.kappa_hi))
            sample = (std::abs(reg.kappa_lo) + 1.0) * 2.0;
        else if (std::isinf(reg.kappa_lo))
            sample = -(std::abs(reg.kappa_hi) + 1.0) * 2.0;
        else
            sample = 0.5 * (reg.kappa_lo + reg.kappa_hi);

        bool ok = true;
        Rational kap = rational_from_double(sample);
        if (disc(kap) == 0 || (!family.coeffs.back().is_zero() && family.coeffs.back()(kap) == 0)) {
            kap += Rational(1, 9973);
            if (disc(kap) == 0) ok = false;
        }
        RationalPolynomial F = family.at_kappa(kap);
        try {
            reg.count = sturm_count(F, interval_lo, interval_hi);
        } catch (const endpoint_root&) {
            ok = false;
        }
        // sample the hypothesis checks across the region
        const double wlo = std::isinf(reg.kappa_lo) ? sample - 8 : reg.kappa_lo;
        const double whi = std::isinf(reg.kappa_hi) ? sample + 8 : reg.kappa_hi;
        for (int s = 1; s <= 5 && ok; ++s) {
            const Rational ks = rational_from_double(wlo + (whi - wlo) * s / 6.0);
            const RationalPolynomial Fs = family.at_kappa(ks);
            if (Fs.is_zero() || Fs(interval_lo) == 0 || Fs(interval_hi) == 0 ||
                disc(ks) == 0)
                ok = false;
        }
        reg.certified = ok;
        regions.push_back(reg);
    }
    return regions;
}

}  // namespace pwhs
