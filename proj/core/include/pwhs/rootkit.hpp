#pragma once

#include <optional>
#include <vector>

#include "pwhs/melnikov.hpp"
#include "pwhs/rational.hpp"

namespace pwhs {

struct IsolatedZero {
    double location = 0;
    double half_width = 0;
    bool simple = false;
};

struct ZeroReport {
    std::vector<IsolatedZero> zeros;
    bool count_certified = false;
    int ceiling = 0;  // family bound used for certification
    int count() const { return static_cast<int>(zeros.size()); }
    int simple_count() const;
};

// Isolates the sign-change zeros of the span part of f on
// [lo, hi] subset of [1e-9, 1-1e-9]; bisects each to half-width <= tol.
// The count is certified when it matches either the family ceiling or an
// exact derivative-based bound (Rolle recursion on the rationalized pair
// A + B atanh; atanh' = 1/(1-r^2) keeps everything polynomial after
// clearing), or, for an empty report, when a rational sandwich proves a
// constant sign. Suspected non-simple zeros (local extremum with |f| below
// scale*tol but no sign change) are reported with simple=false and leave the
// count uncertified.
ZeroReport isolate_zeros(const SpanFunction& f, double lo = 1e-9,
                         double hi = 1.0 - 1e-9, double tol = 1e-12);

// Exact upper bound for the number of zeros of A + B atanh on (lo, hi); used
// by the certification path and exposed for tests.
int rolle_zero_bound(const RationalPolynomial& A, const RationalPolynomial& B,
                     const Rational& lo, const Rational& hi);

// Proves sign-constancy of A + B atanh on (lo, hi) through one-sided
// polynomial bounds on atanh; returns +1 / -1 when proven, nullopt otherwise.
std::optional<int> certify_sign(const RationalPolynomial& A,
                                const RationalPolynomial& B,
                                const Rational& lo, const Rational& hi);

// --- Wronskians -------------------------------------------------------------

enum class WronskianBasis { F, G };

// Wronskians of the ordered basis. For F: the closed forms W0..W6 (all
// positive on (0,1)). For G(m): the factorial products for the monomial
// segment plus the final one computed numerically from exact derivatives.
std::vector<double> wronskians(WronskianBasis basis, double r, int m = 3);

// Same Wronskians evaluated as determinants of the derivative matrix built
// from exact basis derivatives; cross-check for the closed forms.
std::vector<double> wronskians_numeric(WronskianBasis basis, double r, int m = 3);

// d/dr of the closed-form W4, for the identity W4'(r) (1-r^2)^3 = 768 r^4.
double wronskian4_derivative(double r);

// --- parametric families ------------------------------------------------

struct RootRegion {
    double kappa_lo = 0, kappa_hi = 0;  // +-inf allowed
    int count = 0;                      // roots of F_kappa in the interval
    bool certified = false;             // hypothesis checks passed
};

// Splits the window at the kappa where the r-discriminant of the family (or
// an endpoint value, or the leading coefficient) vanishes, and reports one
// certified constant root count per open region. Throws degenerate_family if
// the discriminant vanishes identically.
std::vector<RootRegion> parametric_root_regions(const ParametricFamily& family,
                                                double window_lo, double window_hi,
                                                const Rational& interval_lo,
                                                const Rational& interval_hi);

}  // namespace pwhs
