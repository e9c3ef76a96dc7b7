#include "pwhs/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>
#include <vector>

namespace pwhs {

namespace {

constexpr double kPi = std::numbers::pi;

// 15-point Kronrod rule with embedded 7-point Gauss (QUADPACK dqk15 nodes).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15_panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double res_g = kWg[3] * fc;
    double res_k = kWgk[7] * fc;
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double fsum = f(c - x) + f(c + x);
        res_k += kWgk[j] * fsum;
        if (j % 2 == 1) res_g += kWg[j / 2] * fsum;
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.value = res_k * h;
    p.error = std::abs((res_k - res_g) * h);
    return p;
}

}  // namespace

QuadResult integrate_gk15(const std::function<double(double)>& f, double a,
                          double b, double abs_tol, double rel_tol,
                          int max_subdivisions) {
    const double sign = (a <= b) ? 1.0 : -1.0;
    if (a > b) std::swap(a, b);
    std::priority_queue<Panel> panels;
    panels.push(gk15_panel(f, a, b));
    double total = panels.top().value, err = panels.top().error;
    int n = 1;
    while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (n >= max_subdivisions)
            throw quadrature_failure(
                "adaptive quadrature did not converge within " +
                    std::to_string(max_subdivisions) + " subdivisions",
                err);
        Panel worst = panels.top();
        panels.pop();
        total -= worst.value;
        err -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        for (Panel half : {gk15_panel(f, worst.a, mid), gk15_panel(f, mid, worst.b)}) {
            total += half.value;
            err += half.error;
            panels.push(half);
        }
        ++n;
    }
    return {sign * total, err, n};
}

double composite_simpson(const std::function<double(double)>& f, double a,
                         double b, int panels) {
    if (panels < 1) throw domain_error("composite_simpson needs >= 1 panel");
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += 2.0 * f(a + i * h);
    for (int i = 0; i < panels; ++i) s += 4.0 * f(a + (i + 0.5) * h);
    return s * h / 6.0;
}

// --- registry ---------------------------------------------------------------

namespace {

void validate_system(const LinearizedSystem& s) {
    for (double r : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        if (r > s.r_max) continue;
        for (int j = 0; j < 16; ++j) {
            const Complex w = std::polar(r, 2 * kPi * j / 16.0);
            if (std::abs(s.phi(s.phi_inverse(w)) - w) > 1e-12)
                throw domain_error("system '" + s.name +
                                   "': phi(phi_inverse(w)) != w on test circle");
        }
        // phi maps the section into the section
        const Complex x = s.phi_inverse(Complex{r, 0});
        if (std::abs(x.imag()) > 1e-12 || std::abs(s.phi(x).imag()) > 1e-12)
            throw domain_error("system '" + s.name + "': phi does not preserve the section");
    }
}

std::map<std::string, LinearizedSystem>& registry() {
    static std::map<std::string, LinearizedSystem> reg = [] {
        std::map<std::string, LinearizedSystem> m;
        LinearizedSystem iz;
        iz.name = "iz";
        iz.phi = [](Complex z) { return z; };
        iz.phi_prime = [](Complex) { return Complex{1, 0}; };
        iz.phi_inverse = [](Complex w) { return w; };
        iz.center = 0;
        iz.rotation = Rotation::PlusI;
        iz.r_max = 1.0;
        iz.domain_note = "identity linearization, valid on the whole plane";
        m[iz.name] = iz;

        LinearizedSystem left;
        left.name = "half-i-z2-minus-1-left";
        left.phi = [](Complex z) { return (1.0 + z) / (1.0 - z); };
        left.phi_prime = [](Complex z) { return 2.0 / ((1.0 - z) * (1.0 - z)); };
        left.phi_inverse = [](Complex w) { return (w - 1.0) / (w + 1.0); };
        left.center = -1;
        left.rotation = Rotation::MinusI;
        left.r_max = 1.0 - 1e-6;  // phi_inverse pole at w = -1 hits |w| = 1
        left.domain_note = "annulus of the center -1; valid for |w| < 1";
        m[left.name] = left;

        LinearizedSystem right;
        right.name = "half-i-z2-minus-1-right";
        right.phi = [](Complex z) { return (z - 1.0) / (z + 1.0); };
        right.phi_prime = [](Complex z) { return 2.0 / ((1.0 + z) * (1.0 + z)); };
        right.phi_inverse = [](Complex w) { return (1.0 + w) / (1.0 - w); };
        right.center = 1;
        right.rotation = Rotation::PlusI;
        right.r_max = 1.0 - 1e-6;
        right.domain_note = "annulus of the center +1; valid for |w| < 1";
        m[right.name] = right;
        return m;
    }();
    return reg;
}

std::mutex registry_mutex;

}  // namespace

const LinearizedSystem& builtin_system(const std::string& model) {
    std::lock_guard lock(registry_mutex);
    auto it = registry().find(model);
    if (it == registry().end())
        throw domain_error("unknown model system '" + model + "'");
    return it->second;
}

void register_system(const LinearizedSystem& sys) {
    validate_system(sys);
    std::lock_guard lock(registry_mutex);
    registry()[sys.name] = sys;
}

MelnikovQuadResult melnikov_quadrature(const LinearizedSystem& sys,
                                       const PerturbationSpec& spec, double r,
                                       const QuadratureConfig& cfg) {
    if (!(r > 0.0 && r < 1.0))
        throw domain_error("melnikov_quadrature requires 0 < r < 1");
    if (r > sys.r_max)
        throw domain_error("circle |w|=" + std::to_string(r) +
                           " leaves the linearization domain of '" + sys.name + "'");
    const double outer = (sys.rotation == Rotation::MinusI) ? -1.0 : 1.0;

    auto side_integrand = [&](bool plus) {
        return [&sys, &spec, r, outer, plus](double theta) {
            const Complex w = std::polar(r, theta);
            const Complex z = sys.phi_inverse(w);
            const Complex pref = sys.phi_prime(z) * eval_perturbation(spec, plus, z);
            const Complex ie = Complex{0, 1} * std::polar(1.0, theta);
            return outer * (std::conj(pref) * ie).imag();
        };
    };

    MelnikovQuadResult out;
    if (cfg.rule == QuadratureConfig::Rule::AdaptiveGaussKronrod) {
        auto qp = integrate_gk15(side_integrand(true), 0.0, kPi, cfg.abs_tol,
                                 cfg.rel_tol, cfg.max_subdivisions);
        auto qm = integrate_gk15(side_integrand(false), 0.0, -kPi, cfg.abs_tol,
                                 cfg.rel_tol, cfg.max_subdivisions);
        out.m1_plus = qp.value;
        out.m1_minus = qm.value;
        out.error_estimate = qp.error_estimate + qm.error_estimate;
    } else {
        const int panels = std::max(1, cfg.max_subdivisions);
        out.m1_plus = composite_simpson(side_integrand(true), 0.0, kPi, panels);
        out.m1_minus = composite_simpson(side_integrand(false), 0.0, -kPi, panels);
        out.error_estimate = std::numeric_limits<double>::quiet_NaN();
    }
    out.m1 = out.m1_plus - out.m1_minus;
    return out;
}

}  // namespace pwhs
