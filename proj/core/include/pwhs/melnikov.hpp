#pragma once

#include <vector>

#include "pwhs/perturbation.hpp"

namespace pwhs {

// atanh with the evaluation domain capped at 1 - 1e-12; domain error outside
// [0, 1).
double arctanh_capped(double r);
// atanh(r)/r, finite at r = 0 (series near the origin).
double arctanh_over_r(double r);

enum class Side { Plus, Minus };
enum class Which { M1, N1 };

// One building-block term I_{k,l}(r) of the averaged function, for the model
// system: the closed form of the conjugated-pullback integral carrying the
// coefficient a_{k,l} on the given side. 0 <= k <= l <= 3, 0 < r < 1.
double eval_I_kl(Complex coefficient, int k, int l, Side side, double r);

// Averaged function of the left nest on the basis
// [r..r^4, (r^2-1)^2 atanh, (r^4-1) atanh, r^2 atanh], divided by r.
// The removable 1/r is cancelled algebraically; no division by r happens.
double eval_M1(const MelnikovParams& params, double r);
// Second nest, by coefficient substitution into the M1 evaluator:
// (c, b+2d-kappa+rho, a, -d+kappa, alpha, -beta, gamma).
double eval_N1(const MelnikovParams& params, double r);
double eval_melnikov(const MelnikovParams& params, Which which, double r);

// Holomorphic perturbations: for m <= 2, M1 = a + b r + c r^2 and
// N1(r) = r^2 M1(1/r) (reciprocal pair, alpha = kappa = 0 required);
// for m = 3, M1 = a + b r + c r^2 + alpha r atanh(r) and
// N1 = c + (b-kappa) r + a r^2 + alpha r atanh(r).
struct HolomorphicParams {
    double a = 0, b = 0, c = 0;
    double alpha = 0, kappa = 0;
};
double eval_holomorphic(const HolomorphicParams& params, int m, Which which,
                        double r);

// Bridge to the nine-parameter form (gamma carries the r*atanh coefficient,
// rho = -kappa).
MelnikovParams holomorphic_to_params(const HolomorphicParams& p);

// A linear combination over a declared transcendental basis, reduced to
// S(r) = A(r) + B(r) atanh(r) with polynomial A, B; evaluable with first
// derivative on any closed subinterval of (0,1). The stored prefactor does
// not affect zeros (it is sign-constant on (0,1)).
struct SpanFunction {
    enum class Basis { F, G };
    enum class Prefactor { None, DivideByR, DivideByR2Minus1Pow };

    Basis basis = Basis::F;
    int m = 3;                         // degree tag (selects G(m) basis size)
    std::vector<double> coefficients;  // length 7 for F, 2(m-2)+2 for G
    Prefactor prefactor = Prefactor::None;
    int prefactor_power = 0;           // exponent for DivideByR2Minus1Pow
    int zero_ceiling = 6;  // max zeros in (0,1) for the declared family

    std::vector<double> poly_part() const;    // A, ascending degree
    std::vector<double> atanh_part() const;   // B, ascending degree
    double span_value(double r) const;        // A + B atanh
    double span_derivative(double r) const;
    double value(double r) const;             // prefactor applied
};

// r*M1 (or r*N1) as an F-basis span with the divide-by-r prefactor.
SpanFunction span_from_params(const MelnikovParams& params, Which which);
// Holomorphic m=3 averaged function on the G(3) basis [1, r, r^2, r atanh].
SpanFunction span_from_holomorphic(const HolomorphicParams& params, Which which);

}  // namespace pwhs
