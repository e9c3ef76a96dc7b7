#pragma once

#include <functional>
#include <string>

#include "pwhs/perturbation.hpp"

namespace pwhs {

using ComplexMap = std::function<Complex(Complex)>;

// Rotation sign of the linearized equation w' = (+-i) w. It fixes the sign
// convention of the averaged integral and the direction of physical time
// relative to the polar angle.
enum class Rotation { MinusI, PlusI };

// A conformal linearization of a holomorphic center: w = phi(z) conjugates
// z' = f(z) to w' = (+-i) w near the center p, and phi maps the switching
// line into itself.
struct LinearizedSystem {
    std::string name;
    ComplexMap phi, phi_prime, phi_inverse;
    Complex center;
    Rotation rotation = Rotation::MinusI;
    double r_max = 1.0;       // largest circle radius inside the domain
    std::string domain_note;
};

struct QuadratureConfig {
    enum class Rule { AdaptiveGaussKronrod, CompositeSimpson };
    Rule rule = Rule::AdaptiveGaussKronrod;
    double abs_tol = 1e-11;
    double rel_tol = 1e-10;
    int max_subdivisions = 200;
};

struct MelnikovQuadResult {
    double m1_plus = 0, m1_minus = 0, m1 = 0;
    double error_estimate = 0;
};

// Registered model systems:
//   "iz"                      f(z) = i z, identity linearization (+i)
//   "half-i-z2-minus-1-left"  f(z) = i(z^2-1)/2 around -1, phi = (1+z)/(1-z)
//   "half-i-z2-minus-1-right" same field around +1, phi = (z-1)/(z+1) (+i)
const LinearizedSystem& builtin_system(const std::string& model);

// Registers a new validated map triple. The triple is checked on test
// circles (round trip phi(phi_inverse(w)) = w to 1e-12) and on section
// samples (phi real on real points); failures are rejected.
void register_system(const LinearizedSystem& sys);

// First-order averaged function by direct numerical integration of the
// conjugated-pullback integrand over the two half-circles. Works for any
// registered system and any polynomial perturbation degree.
MelnikovQuadResult melnikov_quadrature(const LinearizedSystem& sys,
                                       const PerturbationSpec& spec, double r,
                                       const QuadratureConfig& cfg = {});

// --- generic 1-d quadrature (exposed for tests) -----------------------------
struct QuadResult {
    double value = 0;
    double error_estimate = 0;
    int subdivisions = 0;
};
QuadResult integrate_gk15(const std::function<double(double)>& f, double a,
                          double b, double abs_tol, double rel_tol,
                          int max_subdivisions);
double composite_simpson(const std::function<double(double)>& f, double a,
                         double b, int panels);

}  // namespace pwhs
