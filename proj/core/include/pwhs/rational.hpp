#pragma once

#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pwhs/errors.hpp"

namespace pwhs {

using Rational = boost::multiprecision::cpp_rational;

// Sturm input touches an interval endpoint; callers nudge and retry.
struct endpoint_root : domain_error {
    using domain_error::domain_error;
};

Rational rational_from_double(double x);  // exact
double to_double(const Rational& q);

// Dense univariate polynomial with exact rational coefficients, ascending
// degree. The zero polynomial has an empty coefficient list.
class RationalPolynomial {
public:
    RationalPolynomial() = default;
    explicit RationalPolynomial(std::vector<Rational> coeffs);
    static RationalPolynomial from_doubles(const std::vector<double>& coeffs);
    static RationalPolynomial constant(const Rational& c);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    const Rational& leading() const;
    Rational operator()(const Rational& x) const;
    double operator()(double x) const;

    RationalPolynomial derivative() const;
    RationalPolynomial operator-() const;
    RationalPolynomial operator+(const RationalPolynomial&) const;
    RationalPolynomial operator-(const RationalPolynomial&) const;
    RationalPolynomial operator*(const RationalPolynomial&) const;
    RationalPolynomial operator*(const Rational&) const;
    // Remainder of this / d (monic-agnostic rational division).
    RationalPolynomial remainder(const RationalPolynomial& d) const;
    // Exact quotient; throws domain_error if the division has a remainder.
    RationalPolynomial divide_exact(const RationalPolynomial& d) const;
    // Divides out the content so coefficients stay modest along PRS chains.
    RationalPolynomial primitive() const;

    bool operator==(const RationalPolynomial&) const = default;
    std::string str() const;

private:
    void normalize_();
    std::vector<Rational> coeffs_;
};

RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b);

// Number of distinct real roots in the open interval (lo, hi). Requires
// p(lo) != 0 and p(hi) != 0 (throws endpoint_root otherwise).
int sturm_count(const RationalPolynomial& p, const Rational& lo, const Rational& hi);

// Sign-variation count of the nonzero coefficients; the positive real root
// count (with multiplicity) equals this minus an even number.
int descartes_bound(const RationalPolynomial& p);

Rational resultant(const RationalPolynomial& p, const RationalPolynomial& q);
// (-1)^{n(n-1)/2} Res(p, p') / leading(p); requires degree >= 2.
Rational discriminant(const RationalPolynomial& p);

// Disjoint isolating intervals, one per distinct real root in (lo, hi).
std::vector<std::pair<Rational, Rational>> isolate_real_roots(
    const RationalPolynomial& p, Rational lo, Rational hi);

// Distinct real roots in (lo, hi) refined to absolute tolerance tol.
std::vector<double> real_roots(const RationalPolynomial& p, const Rational& lo,
                               const Rational& hi, double tol = 1e-12);

// All distinct real roots (Cauchy-bound window).
std::vector<double> real_roots(const RationalPolynomial& p, double tol = 1e-12);

// --- one-parameter polynomial families --------------------------------------

// F_kappa(r) = sum_i coeffs[i](kappa) r^i.
struct ParametricFamily {
    std::vector<RationalPolynomial> coeffs;  // index = power of r

    int degree_r() const { return static_cast<int>(coeffs.size()) - 1; }
    RationalPolynomial at_kappa(const Rational& kappa) const;
    // Discriminant in r as a polynomial in kappa (via the resultant with the
    // r-derivative, divided exactly by the leading coefficient).
    RationalPolynomial discriminant_in_kappa() const;
};

}  // namespace pwhs
