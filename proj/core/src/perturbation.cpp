#include "pwhs/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "coeff_tables.hpp"

namespace pwhs {

namespace {

constexpr double kPi = std::numbers::pi;
using detail::TermMap;
using detail::kTermMaps;
using detail::term_map;

// First seven parameters (a..gamma) of M1 for one spec.
std::array<double, 7> m1_coefficients(const PerturbationSpec& spec) {
    std::array<double, 7> f{};
    for (int l = 0; l <= spec.degree(); ++l) {
        for (int k = 0; k <= l; ++k) {
            const TermMap& t = term_map(k, l);
            const double D = spec.plus(k, l).imag() - spec.minus(k, l).imag();
            const double S = spec.plus(k, l).real() + spec.minus(k, l).real();
            for (int j = 0; j < 7; ++j) f[j] += t.im[j] * D;
            for (int j = 0; j < 4; ++j) f[j] += kPi * t.re[j] * S;
        }
    }
    return f;
}

}  // namespace

PerturbationSpec::PerturbationSpec(int m, bool holomorphic)
    : m_(m), holomorphic_(holomorphic) {
    if (m < 0) throw domain_error("degree must be nonnegative");
    const std::size_t n = static_cast<std::size_t>(m + 1) * (m + 2) / 2;
    plus_.assign(n, Complex{});
    minus_.assign(n, Complex{});
}

std::size_t PerturbationSpec::index_(int k, int l) const {
    if (l < 0 || l > m_ || k < 0 || k > l)
        throw domain_error("coefficient index (k,l)=(" + std::to_string(k) +
                           "," + std::to_string(l) + ") out of range for m=" +
                           std::to_string(m_));
    return static_cast<std::size_t>(l) * (l + 1) / 2 + k;
}

Complex PerturbationSpec::side_(const std::vector<Complex>& t, int k, int l) const {
    return t[index_(k, l)];
}

void PerturbationSpec::check_holomorphic_(int k, Complex v) const {
    if (holomorphic_ && k >= 1 && v != Complex{})
        throw domain_error("holomorphic spec requires a_{k,l}=0 for k>=1");
}

void PerturbationSpec::set_plus(int k, int l, Complex v) {
    check_holomorphic_(k, v);
    plus_[index_(k, l)] = v;
}

void PerturbationSpec::set_minus(int k, int l, Complex v) {
    check_holomorphic_(k, v);
    minus_[index_(k, l)] = v;
}

bool PerturbationSpec::is_zero() const {
    auto z = [](const Complex& c) { return c == Complex{}; };
    return std::all_of(plus_.begin(), plus_.end(), z) &&
           std::all_of(minus_.begin(), minus_.end(), z);
}

double PerturbationSpec::max_abs() const {
    double m = 0;
    for (const auto& c : plus_) m = std::max(m, std::abs(c));
    for (const auto& c : minus_) m = std::max(m, std::abs(c));
    return m;
}

double MelnikovParams::max_abs() const {
    double m = 0;
    for (double v : as_array()) m = std::max(m, std::abs(v));
    return m;
}

bool MelnikovParams::respects_degree(int m, double tol) const {
    auto ok = [tol](double v) { return std::abs(v) <= tol; };
    switch (m) {
        case 0: return ok(gamma) && ok(beta) && ok(alpha) && ok(kappa) && ok(rho) && ok(d) && ok(c + a);
        case 1: return ok(gamma) && ok(beta) && ok(kappa) && ok(rho);
        case 2: return ok(gamma) && ok(rho);
        default: return m >= 3;
    }
}

MelnikovParams melnikov_params(const PerturbationSpec& spec) {
    if (spec.degree() > 3) throw unsupported_degree(spec.degree());
    const auto f = m1_coefficients(spec);
    MelnikovParams p;
    p.a = f[0];
    p.b = f[1];
    p.c = f[2];
    p.d = f[3];
    p.alpha = f[4];
    p.beta = f[5];
    p.gamma = f[6];
    // kappa = d + d' and rho = (b'-b) + (d'-d), where the primed values
    // belong to the reflected spec; the reflection flips the pi-carrying
    // entries by (-1)^l, so the sums collapse to the terms below. Summing
    // them directly keeps the degree restrictions exact.
    for (int l = 0; l <= spec.degree(); ++l) {
        for (int k = 0; k <= l; ++k) {
            const TermMap& t = term_map(k, l);
            const double S = spec.plus(k, l).real() + spec.minus(k, l).real();
            if (l % 2 == 0)
                p.kappa += 2.0 * kPi * t.re[3] * S;
            else
                p.rho += -2.0 * kPi * (t.re[1] + t.re[3]) * S;
        }
    }
    return p;
}

Complex eval_perturbation(const PerturbationSpec& spec, bool plus_side, Complex z) {
    const Complex zb = std::conj(z);
    Complex sum = 0;
    for (int l = 0; l <= spec.degree(); ++l) {
        for (int k = 0; k <= l; ++k) {
            const Complex a = plus_side ? spec.plus(k, l) : spec.minus(k, l);
            if (a == Complex{}) continue;
            sum += std::conj(a) * std::pow(z, l - k) * std::pow(zb, k);
        }
    }
    return sum;
}

PerturbationSpec reflect(const PerturbationSpec& spec) {
    PerturbationSpec out(spec.degree(), spec.holomorphic());
    for (int l = 0; l <= spec.degree(); ++l) {
        const double s = (l % 2 == 0) ? 1.0 : -1.0;
        for (int k = 0; k <= l; ++k) {
            out.set_plus(k, l, s * spec.minus(k, l));
            out.set_minus(k, l, s * spec.plus(k, l));
        }
    }
    return out;
}

PerturbationSpec params_to_perturbation(const MelnikovParams& p, int m,
                                        bool holomorphic) {
    if (m > 3) throw unsupported_degree(m);
    if (m < 0) throw domain_error("degree must be nonnegative");
    const double tol = 1e-12 * std::max(1.0, p.max_abs());
    auto need_zero = [&](double v, const char* name) {
        if (std::abs(v) > tol)
            throw unreachable_target(std::string("parameter ") + name +
                                     " must vanish for this (m, holomorphic) target");
    };

    PerturbationSpec spec(m, holomorphic);
    if (holomorphic || m == 0) {
        need_zero(p.d, "d");
        need_zero(p.alpha, "alpha");
        need_zero(p.beta, "beta");
        need_zero(p.kappa, "kappa");
        if (m < 3) {
            need_zero(p.gamma, "gamma");
            need_zero(p.rho, "rho");
        }
        if (m == 0) need_zero(p.c + p.a, "c+a");
        const double im03 = (m == 3) ? p.gamma / 8 : 0.0;
        const double re03 = (m == 3) ? p.rho / (4 * kPi) : 0.0;
        const double im00 = (m == 0) ? p.a : (p.a - p.c) / 2;
        const double im01 = (m == 0) ? 0.0 : -(p.a + p.c) / 2 - im03;
        const double re00 = -p.b / kPi - 2 * re03;
        spec.set_plus(0, 0, {re00, im00});
        if (m >= 1) spec.set_plus(0, 1, {0, im01});
        if (m == 3) spec.set_plus(0, 3, {re03, im03});
        return spec;
    }

    if (m == 1) {
        need_zero(p.beta, "beta");
        need_zero(p.gamma, "gamma");
        need_zero(p.kappa, "kappa");
        need_zero(p.rho, "rho");
    } else if (m == 2) {
        need_zero(p.gamma, "gamma");
        need_zero(p.rho, "rho");
    }

    const double im23 = (m == 3) ? p.gamma / 8 : 0.0;
    const double re23 = (m == 3) ? -p.rho / (4 * kPi) : 0.0;
    const double im12 = (m >= 2) ? -p.beta / 2 : 0.0;
    const double re12 = (m >= 2) ? -p.kappa / (2 * kPi) : 0.0;
    const double im11 = 2 * im23 - p.alpha / 2;
    const double re11 = -p.d / kPi - re12 + 2 * re23;
    const double re00 = re11 - p.b / kPi;
    const double im00 = (p.a - p.c) / 2 + im12;
    const double im01 = im11 - 5 * im23 - (p.a + p.c) / 2;

    spec.set_plus(0, 0, {re00, im00});
    spec.set_plus(0, 1, {0, im01});
    spec.set_plus(1, 1, {re11, im11});
    if (m >= 2) spec.set_plus(1, 2, {re12, im12});
    if (m == 3) spec.set_plus(2, 3, {re23, im23});
    return spec;
}

// --- JSON ------------------------------------------------------------------

namespace {

using nlohmann::json;

json side_to_json(const PerturbationSpec& s, bool plus) {
    json rows = json::array();
    for (int l = 0; l <= s.degree(); ++l) {
        json row = json::array();
        for (int k = 0; k <= l; ++k) {
            Complex c = plus ? s.plus(k, l) : s.minus(k, l);
            row.push_back(json{{"re", c.real()}, {"im", c.imag()}});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void side_from_json(PerturbationSpec& s, const json& rows, bool plus,
                    const char* name) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != s.degree() + 1)
        throw domain_error(std::string(name) + " must have m+1 rows");
    for (int l = 0; l <= s.degree(); ++l) {
        const json& row = rows[l];
        if (!row.is_array() || static_cast<int>(row.size()) != l + 1)
            throw domain_error(std::string(name) + " row " + std::to_string(l) +
                               " must have " + std::to_string(l + 1) + " entries");
        for (int k = 0; k <= l; ++k) {
            const json& cell = row[k];
            if (!cell.is_object() || cell.size() != 2 || !cell.contains("re") ||
                !cell.contains("im") || !cell["re"].is_number() || !cell["im"].is_number())
                throw domain_error(std::string(name) + " cells must be {\"re\":..,\"im\":..}");
            Complex v{cell["re"].get<double>(), cell["im"].get<double>()};
            if (plus)
                s.set_plus(k, l, v);
            else
                s.set_minus(k, l, v);
        }
    }
}

}  // namespace

std::string to_json(const PerturbationSpec& spec, int indent) {
    json j{{"m", spec.degree()},
           {"holomorphic", spec.holomorphic()},
           {"plus", side_to_json(spec, true)},
           {"minus", side_to_json(spec, false)}};
    return j.dump(indent);
}

PerturbationSpec spec_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw domain_error(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw domain_error("spec must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (key != "m" && key != "holomorphic" && key != "plus" && key != "minus")
            throw domain_error("unknown field '" + key + "' in spec");
    if (!j.contains("m") || !j["m"].is_number_integer())
        throw domain_error("spec requires integer field 'm'");
    if (!j.contains("holomorphic") || !j["holomorphic"].is_boolean())
        throw domain_error("spec requires boolean field 'holomorphic'");
    if (!j.contains("plus") || !j.contains("minus"))
        throw domain_error("spec requires 'plus' and 'minus' tables");
    const int m = j["m"].get<int>();
    if (m < 0) throw domain_error("m must be nonnegative");
    PerturbationSpec spec(m, j["holomorphic"].get<bool>());
    side_from_json(spec, j["plus"], true, "plus");
    side_from_json(spec, j["minus"], false, "minus");
    return spec;
}

PerturbationSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open spec file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return spec_from_json(ss.str());
}

void save_spec(const PerturbationSpec& spec, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw domain_error("cannot write spec file: " + path);
    out << to_json(spec) << '\n';
}

// --- Audit -------------------------------------------------------------

namespace {

struct PublishedRow {
    const char* row;
    // value per (k,l) on the plus side; Im-rows implicitly negate for minus,
    // pi-rows share the sign. Entries absent from the table are NaN.
    std::array<double, 10> v;
};

constexpr double kAbsent = std::numeric_limits<double>::quiet_NaN();

// Transcription of the aggregate tables as published; order matches kTermMaps:
// (0,0),(0,1),(1,1),(0,2),(1,2),(2,2),(0,3),(1,3),(2,3),(3,3).
const std::array<PublishedRow, 9> kPublished{{
    {"a", {1, -1, 1, 1, -1, 5, -1, 1, -5, 5}},
    {"b", {-1, kAbsent, 1, 1, kAbsent, -1, -2, -1, kAbsent, 1}},
    {"c", {-1, -1, 1, -1, 1, -5, kAbsent, 1, -5, 5}},
    {"d", {kAbsent, kAbsent, -1, kAbsent, -1, 2, kAbsent, -1, 2, -3}},
    {"alpha", {kAbsent, kAbsent, -2, kAbsent, kAbsent, kAbsent, kAbsent, -2, 4, -6}},
    {"beta", {kAbsent, kAbsent, kAbsent, kAbsent, -2, 4, kAbsent, kAbsent, kAbsent, kAbsent}},
    {"gamma", {kAbsent, kAbsent, kAbsent, kAbsent, kAbsent, kAbsent, -1, 1, -1, 1}},
    {"kappa", {kAbsent, kAbsent, kAbsent, kAbsent, -2, 4, kAbsent, kAbsent, kAbsent, kAbsent}},
    {"rho", {kAbsent, kAbsent, kAbsent, kAbsent, kAbsent, kAbsent, 4, 4, -4, 4}},
}};

// Derived value for one (row, term) from the verified per-term maps.
double derived_entry(const std::string& row, const TermMap& t) {
    if (row == "a") return t.im[0];
    if (row == "b") return t.re[1];
    if (row == "c") return t.im[2];
    if (row == "d") return t.re[3];
    if (row == "alpha") return t.im[4];
    if (row == "beta") return t.im[5];
    if (row == "gamma") return t.im[6];
    if (row == "kappa") return (t.l % 2 == 0) ? 2.0 * t.re[3] : 0.0;
    if (row == "rho") return (t.l % 2 == 0) ? 0.0 : -2.0 * (t.re[1] + t.re[3]);
    throw domain_error("unknown audit row " + row);
}

}  // namespace

bool RemarkAuditReport::row_clean(const std::string& row) const {
    auto in = [&](const std::vector<RemarkAuditEntry>& v) {
        return std::any_of(v.begin(), v.end(),
                           [&](const RemarkAuditEntry& e) { return e.row == row; });
    };
    return !in(mismatches) && !in(missing);
}

std::string RemarkAuditReport::summary() const {
    std::ostringstream os;
    os << "audited " << entries_checked << " coefficient entries: "
       << mismatches.size() << " mismatched, " << missing.size()
       << " absent from the published table";
    if (gamma_ratio != 0)
        os << "; gamma row uniformly scaled by " << gamma_ratio
           << " (derived = " << gamma_ratio << " x published)";
    return os.str();
}

RemarkAuditReport audit_remarks() {
    RemarkAuditReport rep;
    bool gamma_uniform = true;
    double gamma_ratio = 0;
    for (const auto& row : kPublished) {
        for (std::size_t i = 0; i < kTermMaps.size(); ++i) {
            const TermMap& t = kTermMaps[i];
            const double derived = derived_entry(row.row, t);
            const double published = row.v[i];
            if (std::isnan(published)) {
                if (derived != 0)
                    rep.missing.push_back({row.row, t.k, t.l, 0.0, derived, false});
                continue;
            }
            ++rep.entries_checked;
            if (std::string(row.row) == "gamma") {
                if (published != 0 && derived != 0) {
                    const double ratio = derived / published;
                    if (gamma_ratio == 0) gamma_ratio = ratio;
                    else if (ratio != gamma_ratio) gamma_uniform = false;
                }
            }
            if (derived != published)
                rep.mismatches.push_back({row.row, t.k, t.l, published, derived, true});
        }
    }
    if (gamma_uniform && gamma_ratio != 1.0) rep.gamma_ratio = gamma_ratio;
    return rep;
}

}  // namespace pwhs
