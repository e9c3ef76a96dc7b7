#include <cmath>

#include "doctest.h"
#include "pwhs/designer.hpp"
#include "pwhs/pwsim.hpp"

using namespace pwhs;

namespace {

PerturbationSpec single_cycle_spec() {
    // degree 0, parameters (a,b) = (1,-1/2): one averaged zero at
    // (sqrt(17)-1)/4 = 0.78077640640441514
    MelnikovParams p;
    p.a = 1;
    p.b = -0.5;
    p.c = -1;
    return params_to_perturbation(p, 0, false);
}

constexpr double kRStar = 0.78077640640441514;
constexpr double kXStar = -0.12310562561766055;

double phi_left(double x) { return (1 + x) / (1 - x); }

}  // namespace

TEST_CASE("predicted cycle locations") {
    CHECK(predicted_cycle_location(0.5, Nest::Left) == doctest::Approx(-1.0 / 3));
    CHECK(predicted_cycle_location(kRStar, Nest::Left) ==
          doctest::Approx(kXStar).epsilon(1e-12));
    CHECK(predicted_cycle_location(1e-9, Nest::Left) ==
          doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(predicted_cycle_location(0.5, Nest::Right) == doctest::Approx(1.0 / 3));
    CHECK_THROWS_AS(predicted_cycle_location(1.5, Nest::Left), domain_error);
}

TEST_CASE("unperturbed trajectories") {
    SimConfig cfg;
    cfg.epsilon = 0.0;
    const PerturbationSpec zero(1);

    SUBCASE("the center is stationary") {
        const Trajectory tr = integrate_piecewise(zero, cfg, Complex{-1, 0}, 1.0);
        for (const auto& z : tr.z) CHECK(std::abs(z - Complex{-1, 0}) < 1e-12);
    }
    SUBCASE("orbits keep |phi(z)| constant within 1e-8 over a period") {
        const Trajectory tr = integrate_piecewise(zero, cfg, Complex{-1.0 / 3, 0},
                                                  2 * std::acos(-1.0));
        for (std::size_t i = 0; i < tr.z.size(); ++i) {
            const Complex w = (1.0 + tr.z[i]) / (1.0 - tr.z[i]);
            CHECK(std::abs(std::abs(w) - 0.5) < 1e-8);
        }
    }
    SUBCASE("crossing points land on the mirror section point") {
        const Trajectory tr = integrate_piecewise(zero, cfg, Complex{-1.0 / 3, 0},
                                                  2 * std::acos(-1.0));
        REQUIRE(tr.events.size() >= 1);
        CHECK(tr.events[0].x == doctest::Approx(-3.0).epsilon(1e-7));
        REQUIRE(tr.events.size() == 2);  // two crossings per period
        CHECK(tr.events[1].x == doctest::Approx(-1.0 / 3).epsilon(1e-7));
    }
    SUBCASE("the return map is the identity to 1e-9") {
        CHECK(poincare_map(zero, cfg, -1.0 / 3) ==
              doctest::Approx(-1.0 / 3).epsilon(1e-9));
    }
}

TEST_CASE("config guards") {
    SimConfig cfg;
    cfg.epsilon = 0.5;
    CHECK_THROWS_AS(cfg.validate(), domain_error);
    cfg.allow_large_epsilon = true;
    CHECK_NOTHROW(cfg.validate());
    SimConfig bad;
    bad.epsilon = -1;
    CHECK_THROWS_AS(integrate_piecewise(PerturbationSpec(0), bad, {0.5, 0}, 1.0),
                    domain_error);
}

TEST_CASE("the single-zero spec produces one unstable cycle") {
    const PerturbationSpec spec = single_cycle_spec();
    SimConfig cfg;
    cfg.epsilon = 1e-3;

    SUBCASE("the displacement map changes sign across the prediction") {
        const double lo = kXStar - 0.03, hi = kXStar + 0.03;
        const double dlo = poincare_map(spec, cfg, lo) - lo;
        const double dhi = poincare_map(spec, cfg, hi) - hi;
        CHECK(dlo * dhi < 0);
    }

    SUBCASE("find_limit_cycles pins it with first-order accuracy") {
        const FindCyclesResult res = find_limit_cycles(spec, cfg, 0.3, 0.95, 24);
        REQUIRE(res.cycles.size() == 1);
        const CycleReport& c = res.cycles[0];
        CHECK(c.predicted_r0 == doctest::Approx(kRStar).epsilon(1e-9));
        CHECK(c.deviation < 50 * cfg.epsilon);
        CHECK(c.deviation < 1e-3);  // measured constant is ~0.2 eps
        CHECK(c.hyperbolic);
        // the zero has negative slope; with the left nest's clockwise time
        // the cycle is repelling, so P' > 1
        CHECK_FALSE(c.stable);
        CHECK(c.p_prime > 1.0);
        CHECK(c.section_point == doctest::Approx(kXStar).epsilon(1e-2));
    }
}

TEST_CASE("zero perturbation is flagged as a degenerate identity") {
    SimConfig cfg;
    cfg.epsilon = 1e-3;
    const FindCyclesResult res =
        find_limit_cycles(PerturbationSpec(1), cfg, 0.2, 0.8, 8);
    CHECK(res.degenerate_identity);
    CHECK(res.cycles.empty());
}

TEST_CASE("sliding is detected and aborts the map") {
    PerturbationSpec spec(0);
    spec.set_minus(0, 0, {0, -0.5});  // lower field pushed upward near the ends
    SimConfig cfg;
    cfg.epsilon = 0.05;
    CHECK_THROWS_AS(
        integrate_piecewise(spec, cfg, Complex{-0.99, 1e-3}, 3.0),
        sliding_segment);
}

TEST_CASE("the two nests mirror under reflection") {
    // fixed points of the right-nest map are the left-nest fixed points of
    // the reflected spec under x -> -x
    MelnikovParams p;
    p.a = 1;
    p.b = -0.5;
    p.c = -1;
    const PerturbationSpec spec = params_to_perturbation(p, 0, false);
    const PerturbationSpec rspec = reflect(spec);
    SimConfig right;
    right.epsilon = 1e-3;
    right.nest = Nest::Right;
    SimConfig left;
    left.epsilon = 1e-3;
    left.nest = Nest::Left;
    const auto r_res = find_limit_cycles(rspec, right, 0.4, 0.95, 16);
    const auto l_res = find_limit_cycles(spec, left, 0.4, 0.95, 16);
    REQUIRE(l_res.cycles.size() == 1);
    REQUIRE(r_res.cycles.size() == 1);
    CHECK(r_res.cycles[0].section_point ==
          doctest::Approx(-l_res.cycles[0].section_point).epsilon(1e-6));
    CHECK(r_res.cycles[0].radius_in_w ==
          doctest::Approx(l_res.cycles[0].radius_in_w).epsilon(1e-6));
}

TEST_CASE("deviation shrinks linearly in epsilon") {
    const PerturbationSpec spec = single_cycle_spec();
    double prev = 0;
    for (double eps : {4e-3, 2e-3}) {
        SimConfig cfg;
        cfg.epsilon = eps;
        const auto res = find_limit_cycles(spec, cfg, 0.5, 0.95, 12);
        REQUIRE(res.cycles.size() == 1);
        const double dev = res.cycles[0].deviation;
        if (prev != 0) {
            const double ratio = dev / prev;
            CHECK(ratio > 0.25);
            CHECK(ratio < 0.75);
        }
        prev = dev;
    }
}

TEST_CASE("section seeds outside the interval are rejected") {
    SimConfig cfg;
    const PerturbationSpec spec(0);
    CHECK_THROWS_AS(poincare_map(spec, cfg, 0.5), domain_error);
    cfg.nest = Nest::Right;
    CHECK_THROWS_AS(poincare_map(spec, cfg, -0.5), domain_error);
}

TEST_CASE("phi_left helper sanity") {
    CHECK(phi_left(-1.0 / 3) == doctest::Approx(0.5));
}
