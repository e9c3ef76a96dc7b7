#include "pwhs/pwsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "pwhs/designer.hpp"
#include "pwhs/melnikov.hpp"
#include "pwhs/rootkit.hpp"
#include "parallel.hpp"

namespace pwhs {

void SimConfig::validate() const {
    if (!(epsilon >= 0)) throw domain_error("epsilon must be nonnegative");
    if (epsilon > 0.1 && !allow_large_epsilon)
        throw domain_error("epsilon > 0.1 leaves the averaging regime; set "
                           "allow_large_epsilon to override");
    if (!(rk_tol > 0) || !(event_tol > 0))
        throw domain_error("tolerances must be positive");
    if (max_steps < 1) throw domain_error("max_steps must be >= 1");
}

namespace {

// Dormand-Prince 5(4) coefficients
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB5[7] = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kB4[7] = {5179.0 / 57600, 0.0, 7571.0 / 16695, 393.0 / 640,
                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

class PiecewiseField {
public:
    PiecewiseField(const PerturbationSpec& spec, double eps)
        : spec_(spec), eps_(eps) {}

    Complex operator()(bool upper, Complex z) const {
        const Complex f = Complex{0, 0.5} * (z * z - 1.0);
        if (eps_ == 0.0) return f;
        return f + eps_ * eval_perturbation(spec_, upper, z);
    }

private:
    const PerturbationSpec& spec_;
    double eps_;
};

struct Step {
    Complex y;
    double err;  // weighted error norm
};

Step dp45_step(const PiecewiseField& f, bool upper, Complex y0, double h,
               double tol) {
    Complex k[7];
    k[0] = f(upper, y0);
    for (int s = 1; s < 7; ++s) {
        Complex acc = 0;
        for (int j = 0; j < s; ++j) acc += kA[s][j] * k[j];
        k[s] = f(upper, y0 + h * acc);
    }
    Complex y5 = y0, e = 0;
    for (int s = 0; s < 7; ++s) {
        y5 += h * kB5[s] * k[s];
        e += h * (kB5[s] - kB4[s]) * k[s];
    }
    const double scale = tol * (1.0 + std::max(std::abs(y0), std::abs(y5)));
    return {y5, std::abs(e) / scale};
}

constexpr double kMaxStep = 0.05;

class PiecewiseIntegrator {
public:
    PiecewiseIntegrator(const PerturbationSpec& spec, const SimConfig& cfg)
        : field_(spec, cfg.epsilon), cfg_(cfg) {}

    // Integrates from (t, z) on the given side until the trajectory crosses
    // the switching line or t reaches t_stop. Returns the crossing event if
    // one happened. Optionally records every accepted step.
    std::optional<CrossingEvent> run(double& t, Complex& z, bool& upper,
                                     double t_stop, Trajectory* record) {
        double h = 1e-4;
        while (t < t_stop) {
            if (++steps_ > cfg_.max_steps)
                throw integration_failure("step budget exhausted");
            h = std::min({h, kMaxStep, t_stop - t});
            const Step s = dp45_step(field_, upper, z, h, cfg_.rk_tol);
            if (s.err > 1.0) {
                h *= std::max(0.2, 0.9 * std::pow(s.err, -0.2));
                continue;
            }
            const double t1 = t + h;
            const double side_sign = upper ? 1.0 : -1.0;
            if (s.y.imag() * side_sign < 0.0) {
                // crossed the line inside this step; locate and switch sides
                const CrossingEvent ev = locate_crossing(t, z, upper, h);
                t = ev.t;
                z = Complex{ev.x, 0.0};
                if (record) {
                    record->t.push_back(t);
                    record->z.push_back(z);
                    record->events.push_back(ev);
                }
                upper = !upper;
                return ev;
            }
            t = t1;
            z = s.y;
            if (record) {
                record->t.push_back(t);
                record->z.push_back(z);
            }
            h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(s.err, 1e-10), -0.2)));
        }
        return std::nullopt;
    }

    // Checks the Filippov condition at a crossing point and fills the event.
    CrossingEvent classify(double t, double x, bool arriving_upper) const {
        CrossingEvent ev;
        ev.t = t;
        ev.x = x;
        const Complex p{x, 0};
        ev.im_f_plus = field_(true, p).imag();
        ev.im_f_minus = field_(false, p).imag();
        const double arriving = arriving_upper ? ev.im_f_plus : ev.im_f_minus;
        const double leaving = arriving_upper ? ev.im_f_minus : ev.im_f_plus;
        // transversal crossing needs both normal components on one side
        ev.sliding = arriving * leaving <= 0.0;
        if (ev.sliding)
            throw sliding_segment(
                "sliding segment at x=" + std::to_string(x) +
                    " (one-sided fields point at the switching line); the "
                    "crossing analysis does not apply",
                x);
        return ev;
    }

    const PiecewiseField& field() const { return field_; }

private:
    CrossingEvent locate_crossing(double t0, Complex z0, bool upper, double h) {
        // bisection on the substep length; each probe re-integrates from
        // (t0, z0), so the located point inherits the step's accuracy
        double lo = 0.0, hi = h;
        Complex z_hi = dp45_step(field_, upper, z0, hi, cfg_.rk_tol).y;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            const Complex zm = mid == 0.0 ? z0 : dp45_step(field_, upper, z0, mid, cfg_.rk_tol).y;
            const bool still_on_side = zm.imag() != 0.0 && (zm.imag() > 0) == upper;
            if (still_on_side) {
                lo = mid;
            } else {
                hi = mid;
                z_hi = zm;
            }
            if (std::abs(z_hi.imag()) < cfg_.event_tol && hi - lo < cfg_.event_tol)
                break;
        }
        return classify(t0 + hi, z_hi.real(), upper);
    }

    PiecewiseField field_;
    const SimConfig& cfg_;
    std::int64_t steps_ = 0;
};

bool starting_side(const PiecewiseField& f, Complex z0) {
    if (z0.imag() > 0) return true;
    if (z0.imag() < 0) return false;
    // on the line: follow the field; crossing requires agreeing signs
    const double up = f(true, z0).imag();
    const double dn = f(false, z0).imag();
    if (up > 0 && dn > 0) return true;
    if (up < 0 && dn < 0) return false;
    if (up == 0 && dn == 0) return true;  // equilibrium or tangency; side moot
    throw sliding_segment("starting point lies in a sliding region", z0.real());
}

double section_to_radius(double x, Nest nest) {
    return nest == Nest::Left ? std::abs((1 + x) / (1 - x))
                              : std::abs((x - 1) / (x + 1));
}

}  // namespace

Trajectory integrate_piecewise(const PerturbationSpec& spec, const SimConfig& cfg,
                               Complex z0, double t_max) {
    cfg.validate();
    if (!(t_max > 0)) throw domain_error("t_max must be positive");
    PiecewiseIntegrator integ(spec, cfg);
    Trajectory traj;
    double t = 0;
    Complex z = z0;
    traj.t.push_back(t);
    traj.z.push_back(z);
    bool upper = starting_side(integ.field(), z0);
    while (t < t_max) {
        if (!integ.run(t, z, upper, t_max, &traj)) break;
    }
    return traj;
}

double poincare_map(const PerturbationSpec& spec, const SimConfig& cfg, double x0) {
    cfg.validate();
    const bool left = cfg.nest == Nest::Left;
    if (left ? !(x0 > -1 && x0 < 0) : !(x0 > 0 && x0 < 1))
        throw domain_error("seed x0 is outside the section interval");

    PiecewiseIntegrator integ(spec, cfg);
    double t = 0;
    Complex z{x0, 0};
    bool upper = starting_side(integ.field(), z);
    // one passage through each half plane
    for (int crossing = 0; crossing < 2; ++crossing) {
        const auto ev = integ.run(t, z, upper, t + 4.0 * std::numbers::pi, nullptr);
        if (!ev) throw integration_failure("no return to the switching line");
    }
    const double x1 = z.real();
    if (left ? !(x1 > -1 && x1 < 0) : !(x1 > 0 && x1 < 1))
        throw integration_failure("trajectory left the period annulus");
    return x1;
}

double predicted_cycle_location(double r0, Nest nest) {
    if (!(r0 > 0 && r0 < 1)) throw domain_error("r0 must lie in (0,1)");
    return nest == Nest::Left ? (r0 - 1) / (r0 + 1) : (1 - r0) / (1 + r0);
}

FindCyclesResult find_limit_cycles(const PerturbationSpec& spec,
                                   const SimConfig& cfg, double r_lo,
                                   double r_hi, int n_seeds) {
    cfg.validate();
    if (!(0 < r_lo && r_lo < r_hi && r_hi < 1))
        throw domain_error("need 0 < r_lo < r_hi < 1");
    if (n_seeds < 2) throw domain_error("need at least two seeds");

    // certified averaged-function zeros of this nest, for the deviation column
    std::vector<double> predicted;
    if (spec.degree() <= 3) {
        const MelnikovParams p = melnikov_params(spec);
        const Which side = cfg.nest == Nest::Left ? Which::M1 : Which::N1;
        const auto [rm, rn] = zero_reports(p, spec.degree(), spec.holomorphic());
        for (const auto& z : (side == Which::M1 ? rm : rn).zeros)
            predicted.push_back(z.location);
    }

    std::vector<double> xs(n_seeds), disp(n_seeds);
    const double ratio = r_hi / r_lo;
    for (int i = 0; i < n_seeds; ++i) {
        const double r = r_lo * std::pow(ratio, static_cast<double>(i) / (n_seeds - 1));
        xs[i] = predicted_cycle_location(r, cfg.nest);
    }
    std::sort(xs.begin(), xs.end());
    detail::parallel_for(n_seeds, [&](int i) {
        disp[i] = poincare_map(spec, cfg, xs[i]) - xs[i];
    });

    FindCyclesResult out;
    const double identity_floor = std::max(100 * cfg.rk_tol, 10 * cfg.event_tol);
    if (std::all_of(disp.begin(), disp.end(), [&](double d) {
            return std::abs(d) < identity_floor;
        })) {
        out.degenerate_identity = true;
        return out;
    }

    std::vector<std::pair<double, double>> brackets;
    for (int i = 0; i + 1 < n_seeds; ++i)
        if (disp[i] == 0.0 || (disp[i] < 0) != (disp[i + 1] < 0))
            brackets.push_back({xs[i], xs[i + 1]});

    std::vector<CycleReport> reports(brackets.size());
    detail::parallel_for(static_cast<int>(brackets.size()), [&](int bi) {
        auto [a, b] = brackets[bi];
        double fa = poincare_map(spec, cfg, a) - a;
        for (int it = 0; it < 80 && b - a > cfg.event_tol; ++it) {
            const double m = 0.5 * (a + b);
            const double fm = poincare_map(spec, cfg, m) - m;
            if (fm == 0.0) { a = b = m; break; }
            if ((fm < 0) == (fa < 0)) { a = m; fa = fm; }
            else b = m;
        }
        CycleReport rep;
        rep.section_point = 0.5 * (a + b);
        rep.radius_in_w = section_to_radius(rep.section_point, cfg.nest);
        const double h = 1e-5;
        const double pp = (poincare_map(spec, cfg, rep.section_point + h) -
                           poincare_map(spec, cfg, rep.section_point - h)) / (2 * h);
        rep.p_prime = pp;
        rep.stable = std::abs(pp) < 1.0;
        rep.hyperbolic = std::abs(pp - 1.0) > 10 * (cfg.rk_tol / h);
        rep.predicted_r0 = std::numeric_limits<double>::quiet_NaN();
        rep.deviation = std::numeric_limits<double>::quiet_NaN();
        for (double r0 : predicted) {
            const double dev = std::abs(rep.radius_in_w - r0);
            if (std::isnan(rep.deviation) || dev < rep.deviation) {
                rep.deviation = dev;
                rep.predicted_r0 = r0;
            }
        }
        reports[bi] = rep;
    });

    std::sort(reports.begin(), reports.end(),
              [](const CycleReport& x, const CycleReport& y) {
                  return x.radius_in_w < y.radius_in_w;
              });
    for (const auto& rep : reports) {
        if (!out.cycles.empty() &&
            std::abs(rep.section_point - out.cycles.back().section_point) <
                100 * cfg.event_tol)
            continue;
        out.cycles.push_back(rep);
    }
    return out;
}

}  // namespace pwhs
