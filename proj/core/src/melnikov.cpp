#include "pwhs/melnikov.hpp"

#include <cmath>
#include <numbers>

#include "coeff_tables.hpp"

namespace pwhs {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kCap = 1.0 - 1e-12;

void check_r(double r) {
    if (!(r > 0.0 && r < 1.0))
        throw domain_error("r must lie in (0,1), got " + std::to_string(r));
}
}  // namespace

double arctanh_capped(double r) {
    if (!(r >= 0.0 && r < 1.0))
        throw domain_error("atanh argument outside [0,1)");
    return std::atanh(std::min(r, kCap));
}

double arctanh_over_r(double r) {
    if (!(r >= 0.0 && r < 1.0))
        throw domain_error("atanh argument outside [0,1)");
    if (r < 1e-2) {
        const double r2 = r * r;
        // atanh(r)/r = sum r^{2k}/(2k+1); the r^12 tail is < 1e-25 here
        return 1.0 + r2 * (1.0 / 3 + r2 * (1.0 / 5 + r2 * (1.0 / 7 + r2 * (1.0 / 9 + r2 / 11))));
    }
    return std::atanh(std::min(r, kCap)) / r;
}

double eval_I_kl(Complex coefficient, int k, int l, Side side, double r) {
    check_r(r);
    if (l > 3 || l < 0 || k < 0 || k > l)
        throw domain_error("eval_I_kl supports 0 <= k <= l <= 3");
    const auto& t = detail::term_map(k, l);
    const double sgn = (side == Side::Plus) ? 1.0 : -1.0;
    const double r2 = r * r;
    const double aor = arctanh_over_r(r);
    // r*I = Im(a) * (im . basis) + sgn * pi * Re(a) * (re . [r..r^4]);
    // the leading r cancels algebraically against the basis elements.
    const double im_part =
        t.im[0] + t.im[1] * r + t.im[2] * r2 + t.im[3] * r2 * r +
        (t.im[4] * (r2 - 1) * (r2 - 1) + t.im[5] * (r2 * r2 - 1) + t.im[6] * r2) * aor;
    const double re_part = t.re[0] + t.re[1] * r + t.re[2] * r2 + t.re[3] * r2 * r;
    return coefficient.imag() * im_part + sgn * kPi * coefficient.real() * re_part;
}

double eval_M1(const MelnikovParams& p, double r) {
    check_r(r);
    const double r2 = r * r;
    const double aor = arctanh_over_r(r);
    return p.a + p.b * r + p.c * r2 + p.d * r2 * r +
           (p.alpha * (r2 - 1) * (r2 - 1) + p.beta * (r2 * r2 - 1) + p.gamma * r2) * aor;
}

double eval_N1(const MelnikovParams& p, double r) {
    MelnikovParams q;
    q.a = p.c;
    q.b = p.b + 2 * p.d - p.kappa + p.rho;
    q.c = p.a;
    q.d = -p.d + p.kappa;
    q.alpha = p.alpha;
    q.beta = -p.beta;
    q.gamma = p.gamma;
    return eval_M1(q, r);
}

double eval_melnikov(const MelnikovParams& p, Which which, double r) {
    return which == Which::M1 ? eval_M1(p, r) : eval_N1(p, r);
}

MelnikovParams holomorphic_to_params(const HolomorphicParams& h) {
    MelnikovParams p;
    p.a = h.a;
    p.b = h.b;
    p.c = h.c;
    p.gamma = h.alpha;
    p.rho = -h.kappa;
    return p;
}

double eval_holomorphic(const HolomorphicParams& h, int m, Which which, double r) {
    check_r(r);
    if (m > 3) throw unsupported_degree(m);
    if (m <= 2 && (h.alpha != 0 || h.kappa != 0))
        throw domain_error("holomorphic m<=2 requires alpha = kappa = 0");
    return eval_melnikov(holomorphic_to_params(h), which, r);
}

// --- SpanFunction -----------------------------------------------------------

std::vector<double> SpanFunction::poly_part() const {
    if (basis == Basis::F) {
        // coefficients are on [r, r^2, r^3, r^4, ...atanh terms]
        return {0.0, coefficients[0], coefficients[1], coefficients[2], coefficients[3]};
    }
    std::vector<double> a(coefficients.begin(), coefficients.end() - 1);
    return a;
}

std::vector<double> SpanFunction::atanh_part() const {
    if (basis == Basis::F) {
        const double al = coefficients[4], be = coefficients[5], ga = coefficients[6];
        // alpha (r^2-1)^2 + beta (r^4-1) + gamma r^2
        return {al - be, 0.0, ga - 2 * al, 0.0, al + be};
    }
    // c_at * r * (r^2-1)^(m-3)
    std::vector<double> b(1, 0.0);
    std::vector<double> pw{1.0};
    for (int i = 0; i < m - 3; ++i) {
        std::vector<double> nx(pw.size() + 2, 0.0);
        for (std::size_t j = 0; j < pw.size(); ++j) {
            nx[j] -= pw[j];
            nx[j + 2] += pw[j];
        }
        pw = std::move(nx);
    }
    b.insert(b.end(), pw.begin(), pw.end());
    for (double& v : b) v *= coefficients.back();
    return b;
}

namespace {
double horner(const std::vector<double>& c, double r) {
    double v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * r + *it;
    return v;
}
}  // namespace

double SpanFunction::span_value(double r) const {
    return horner(poly_part(), r) + horner(atanh_part(), r) * arctanh_capped(r);
}

double SpanFunction::span_derivative(double r) const {
    const auto A = poly_part();
    const auto B = atanh_part();
    double dA = 0, dB = 0;
    for (std::size_t j = A.size(); j-- > 1;) dA = dA * r + j * A[j];
    for (std::size_t j = B.size(); j-- > 1;) dB = dB * r + j * B[j];
    return dA + dB * arctanh_capped(r) + horner(B, r) / (1.0 - r * r);
}

double SpanFunction::value(double r) const {
    const double s = span_value(r);
    switch (prefactor) {
        case Prefactor::None: return s;
        case Prefactor::DivideByR: return s / r;
        case Prefactor::DivideByR2Minus1Pow:
            return s / std::pow(r * r - 1.0, prefactor_power);
    }
    return s;
}

SpanFunction span_from_params(const MelnikovParams& p, Which which) {
    MelnikovParams q = p;
    if (which == Which::N1) {
        q.a = p.c;
        q.b = p.b + 2 * p.d - p.kappa + p.rho;
        q.c = p.a;
        q.d = -p.d + p.kappa;
        q.beta = -p.beta;
    }
    SpanFunction f;
    f.basis = SpanFunction::Basis::F;
    f.coefficients = {q.a, q.b, q.c, q.d, q.alpha, q.beta, q.gamma};
    f.prefactor = SpanFunction::Prefactor::DivideByR;
    // ECT ceiling: the ordered family is extended-complete-Chebyshev on (0,1),
    // so a combination of its first n+1 members has at most n zeros; the
    // degree-0 slice (c=-a, reciprocal roots) sharpens to 1.
    int last = -1;
    for (int j = 0; j < 7; ++j)
        if (f.coefficients[j] != 0) last = j;
    f.zero_ceiling = std::max(last, 0);
    const bool degree0 = q.d == 0 && q.alpha == 0 && q.beta == 0 && q.gamma == 0 && q.c == -q.a;
    if (degree0) f.zero_ceiling = 1;
    return f;
}

SpanFunction span_from_holomorphic(const HolomorphicParams& h, Which which) {
    SpanFunction f;
    f.basis = SpanFunction::Basis::G;
    f.m = 3;
    if (which == Which::M1)
        f.coefficients = {h.a, h.b, h.c, h.alpha};
    else
        f.coefficients = {h.c, h.b - h.kappa, h.a, h.alpha};
    f.prefactor = SpanFunction::Prefactor::None;
    f.zero_ceiling = 3;
    return f;
}

}  // namespace pwhs
