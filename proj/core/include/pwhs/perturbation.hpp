#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "pwhs/errors.hpp"

namespace pwhs {

using Complex = std::complex<double>;

// Piecewise polynomial perturbation of degree m: one coefficient table per
// side of the switching line. Row l holds the coefficients a_{k,l} for
// k = 0..l, so each side has (m+1)(m+2)/2 complex entries.
class PerturbationSpec {
public:
    PerturbationSpec(int m, bool holomorphic = false);

    int degree() const { return m_; }
    bool holomorphic() const { return holomorphic_; }

    Complex plus(int k, int l) const { return side_(plus_, k, l); }
    Complex minus(int k, int l) const { return side_(minus_, k, l); }
    void set_plus(int k, int l, Complex v);
    void set_minus(int k, int l, Complex v);

    std::size_t entries_per_side() const { return plus_.size(); }
    bool is_zero() const;

    // Largest |entry|; used for relative tolerances.
    double max_abs() const;

    bool operator==(const PerturbationSpec&) const = default;

private:
    Complex side_(const std::vector<Complex>& t, int k, int l) const;
    std::size_t index_(int k, int l) const;
    void check_holomorphic_(int k, Complex v) const;

    int m_;
    bool holomorphic_;
    std::vector<Complex> plus_, minus_;  // row-major triangular, row l at l(l+1)/2
};

// The nine reals parameterizing the averaged functions of both nests over the
// transcendental basis [r, r^2, r^3, r^4, (r^2-1)^2 atanh r, (r^4-1) atanh r,
// r^2 atanh r].
struct MelnikovParams {
    double a = 0, b = 0, c = 0, d = 0;
    double alpha = 0, beta = 0, gamma = 0;
    double kappa = 0, rho = 0;

    std::array<double, 9> as_array() const { return {a, b, c, d, alpha, beta, gamma, kappa, rho}; }
    double max_abs() const;
    // Checks the degree restrictions (m=2: gamma=rho=0; m=1: also beta=kappa=0;
    // m=0: also alpha=d=0 and c=-a), to the given absolute tolerance.
    bool respects_degree(int m, double tol = 1e-12) const;
};

// Linear map from perturbation coefficients to Melnikov parameters (m <= 3).
MelnikovParams melnikov_params(const PerturbationSpec& spec);

// R(z, zbar) = sum over k,l of conj(a_{k,l}) z^{l-k} zbar^k for one side.
Complex eval_perturbation(const PerturbationSpec& spec, bool plus_side, Complex z);

// a^pm_{k,l} -> (-1)^l a^mp_{k,l}: swaps the roles of the two nests.
// An involution: reflect(reflect(s)) == s.
PerturbationSpec reflect(const PerturbationSpec& spec);

// Right inverse of melnikov_params on a designated coefficient slice: only
// plus-side entries are used, pivots in the order a00, a11, a01, a12, a23
// (holomorphic: a00, a01, a03). Throws unreachable_target if params lie
// outside the reachable subspace for (m, holomorphic).
PerturbationSpec params_to_perturbation(const MelnikovParams& params, int m,
                                        bool holomorphic);

// --- JSON interface -------------------------------------------------------
// Schema: {"m": 3, "holomorphic": false,
//          "plus":  [[{"re":..,"im":..}], ..., m+1 rows, row l has l+1 cells],
//          "minus": [...]}
// Validation is strict: unknown or missing fields are rejected.
std::string to_json(const PerturbationSpec& spec, int indent = 2);
PerturbationSpec spec_from_json(const std::string& text);
PerturbationSpec load_spec(const std::string& path);
void save_spec(const PerturbationSpec& spec, const std::string& path);

// --- Coefficient-table audit ----------------------------------------------
// The per-term integrals I_{k,l} are the authority for the coefficient maps
// (they are checked against direct quadrature). The aggregate tables
// published alongside the derivation are transcribed here as a secondary
// reference; the audit reports every entry where the two disagree.
struct RemarkAuditEntry {
    std::string row;      // "a".."rho"
    int k, l;
    double published;     // aggregate-table value (0 when the entry is absent)
    double derived;       // value from summing the per-term integrals
    bool present_in_table;
};

struct RemarkAuditReport {
    std::vector<RemarkAuditEntry> mismatches;    // printed value != derived
    std::vector<RemarkAuditEntry> missing;       // absent from the table, nonzero derived
    int entries_checked = 0;
    // Uniform ratio derived/published over the gamma row, 0 if not uniform.
    double gamma_ratio = 0;
    bool row_clean(const std::string& row) const;
    std::string summary() const;
};

RemarkAuditReport audit_remarks();

}  // namespace pwhs
