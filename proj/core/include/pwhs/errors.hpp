#pragma once

#include <stdexcept>
#include <string>

namespace pwhs {

// Bad input: out-of-range arguments, malformed spec files, schema violations.
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Degree outside the closed-form range (m > 3); callers should fall back to
// quadrature.
struct unsupported_degree : domain_error {
    explicit unsupported_degree(int m)
        : domain_error("degree m=" + std::to_string(m) +
                       " has no closed form; use quadrature"), m(m) {}
    int m;
};

// params_to_perturbation target outside the reachable subspace.
struct unreachable_target : domain_error {
    using domain_error::domain_error;
};

// Adaptive quadrature failed to meet its tolerance.
struct quadrature_failure : std::runtime_error {
    quadrature_failure(const std::string& what, double estimate)
        : std::runtime_error(what), error_estimate(estimate) {}
    double error_estimate;
};

// Linear design system is singular or too ill-conditioned to trust.
struct degenerate_targets : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested configuration lies outside the supported realizability table.
// Distinct from "proven impossible": the message names the blocking bound.
struct not_supported : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filippov sliding segment reached: both one-sided fields point at the
// switching line, so the crossing analysis does not apply.
struct sliding_segment : std::runtime_error {
    sliding_segment(const std::string& what, double where)
        : std::runtime_error(what), location(where) {}
    double location;  // point on the switching line
};

// Integrator ran out of steps or failed to converge.
struct integration_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parametric family whose discriminant vanishes identically on the window.
struct degenerate_family : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pwhs
