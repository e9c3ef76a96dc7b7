#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pwhs/rootkit.hpp"

namespace pwhs {

// realize() exhausted its jittered layouts without certifying the target.
struct realize_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A prescribed zero of f = r*M1 (or g = r*N1) at a location in (-1,1)\{0};
// negative locations consume a degree of freedom without contributing a
// limit cycle.
struct ZeroTarget {
    double location = 0;
    Which which = Which::M1;
};

struct Configuration {
    int m1 = 0, n1 = 0;
    bool certified = false;
    bool operator==(const Configuration&) const = default;
};

// Solves the linear system that forces f/g to vanish at the targets, with the
// top transcendental coefficient pinned to 1 (alpha for m=1, beta for m=2,
// gamma for m=3; alpha again in the holomorphic cubic case). The target count
// must equal the free-parameter count: 4 / 6 / 8 (complex m=1,2,3), 4
// (holomorphic m=3). Throws degenerate_targets when the system is singular
// or its condition number exceeds 1e12.
MelnikovParams design(const std::vector<ZeroTarget>& targets, int m,
                      bool holomorphic);

// Certified simultaneous zero counts of M1 and N1 in (0,1).
Configuration verify_configuration(const MelnikovParams& params, int m,
                                   bool holomorphic);
Configuration verify_configuration(const PerturbationSpec& spec);

// Underlying reports, for callers that need locations.
std::pair<ZeroReport, ZeroReport> zero_reports(const MelnikovParams& params,
                                               int m, bool holomorphic);

struct PolynomialCaseResult {
    Configuration config;
    int bound = 0;          // m1+n1 ceiling for this m: {1,4,4,5}
    bool bound_ok = false;  // m1+n1 <= bound
    // populated when m=3, m1=3 and N1 has two zeros in (0,1): the remaining
    // N1 root from the closed formula vs direct root-finding
    std::optional<double> third_root_formula;
    std::optional<double> third_root_direct;
};

// Both averaged functions polynomial (alpha = beta = gamma = 0 required);
// exact root counting.
PolynomialCaseResult polynomial_case_analysis(const MelnikovParams& params, int m);

// Builds a perturbation whose verified configuration is exactly [[i,j]],
// from a canned target layout (retrying with seeded jitter up to 20 times).
// Throws not_supported when (i,j) lies outside the realizable table for
// (m, holomorphic).
PerturbationSpec realize(int i, int j, int m, bool holomorphic,
                         std::uint64_t seed = 0);

}  // namespace pwhs
