#pragma once

#include <cstdint>
#include <vector>

#include "pwhs/perturbation.hpp"

namespace pwhs {

enum class Nest { Left, Right };  // around -1 / around +1

struct SimConfig {
    double epsilon = 1e-3;
    double rk_tol = 1e-10;
    double event_tol = 1e-12;
    std::int64_t max_steps = 2000000;
    Nest nest = Nest::Left;
    bool allow_large_epsilon = false;  // overrides the epsilon <= 0.1 guard

    void validate() const;
};

struct CrossingEvent {
    double t = 0;
    double x = 0;             // crossing point on the switching line
    double im_f_plus = 0;     // one-sided normal components there
    double im_f_minus = 0;
    bool sliding = false;
};

struct Trajectory {
    std::vector<double> t;
    std::vector<Complex> z;
    std::vector<CrossingEvent> events;
};

// Integrates z' = i(z^2-1)/2 + eps R^{sign(Im z)} with an embedded 5(4)
// adaptive pair, locating every switching-line crossing to event_tol and
// recording the one-sided transversality signs. Sliding (both fields
// pointing at the line) aborts with sliding_segment.
Trajectory integrate_piecewise(const PerturbationSpec& spec, const SimConfig& cfg,
                               Complex z0, double t_max);

// First return to the section (the real interval (-1,0) for the left nest,
// (0,1) for the right) after one lower and one upper passage. eps = 0 gives
// the identity up to integrator tolerance.
double poincare_map(const PerturbationSpec& spec, const SimConfig& cfg, double x0);

struct CycleReport {
    double section_point = 0;
    double predicted_r0 = 0;   // nearest certified averaged-function zero
    double radius_in_w = 0;    // |phi(section_point)|
    double deviation = 0;      // |radius_in_w - predicted_r0|
    bool stable = false;       // |P'| < 1
    bool hyperbolic = false;   // |P'-1| clears the numerical noise floor
    double p_prime = 1;
};

struct FindCyclesResult {
    std::vector<CycleReport> cycles;  // sorted by radius
    bool degenerate_identity = false; // P = id to tolerance at every seed
};

// Seeds the section at the radii grid, brackets sign changes of P(x)-x,
// refines by bisection, and compares each fixed point against the certified
// zeros of the matching averaged function.
FindCyclesResult find_limit_cycles(const PerturbationSpec& spec,
                                   const SimConfig& cfg, double r_lo,
                                   double r_hi, int n_seeds = 64);

// Section point of the cycle predicted at radius r0: (r0-1)/(r0+1) for the
// left nest, (1-r0)/(1+r0) for the right.
double predicted_cycle_location(double r0, Nest nest);

}  // namespace pwhs
