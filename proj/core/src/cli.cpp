#include "pwhs/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "pwhs/designer.hpp"
#include "pwhs/manifest.hpp"
#include "pwhs/melnikov.hpp"
#include "pwhs/pwsim.hpp"
#include "pwhs/quadrature.hpp"
#include "pwhs/rootkit.hpp"
#include "parallel.hpp"

namespace pwhs::cli {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitCertification = 2;
constexpr int kExitUsage = 64;

std::string fmt15(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::vector<double> parse_grid(const std::string& s) {
    double lo, hi, step;
    char c1, c2;
    std::istringstream is(s);
    if (!(is >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' ||
        !(step > 0) || lo > hi)
        throw domain_error("grid must be lo:hi:step with step > 0, got '" + s + "'");
    std::vector<double> r;
    const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
    for (int i = 0; i <= n; ++i) r.push_back(lo + i * step);
    return r;
}

Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            return Rational(boost::multiprecision::cpp_int(s.substr(0, slash)),
                            boost::multiprecision::cpp_int(s.substr(slash + 1)));
        }
        if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
            s.find('E') != std::string::npos)
            return rational_from_double(std::stod(s));
        return Rational(boost::multiprecision::cpp_int(s));
    } catch (const std::exception&) {
        throw domain_error("cannot parse rational '" + s + "'");
    }
}

// sink for CSV artifacts: file or stdout, manifest comment first
void write_artifact(const std::string& out_path, const RunManifest& manifest,
                    const std::string& body) {
    if (out_path.empty()) {
        std::cout << manifest.csv_comment() << '\n' << body;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw domain_error("cannot write output file: " + out_path);
    out << manifest.csv_comment() << '\n' << body;
}

void emit_json(const RunManifest& manifest, const json& payload) {
    json j{{"manifest", json::parse(manifest.to_json(false))}};
    j.update(payload);
    std::cout << j.dump(2) << '\n';
}

struct CommandContext {
    RunManifest manifest;
    bool json_mode = false;
    int exit_code = kExitOk;
};

json zero_report_json(const ZeroReport& rep) {
    json zs = json::array();
    for (const auto& z : rep.zeros)
        zs.push_back({{"location", z.location},
                      {"half_width", z.half_width},
                      {"simple", z.simple}});
    return {{"zeros", zs},
            {"count", rep.count()},
            {"count_certified", rep.count_certified},
            {"ceiling", rep.ceiling}};
}

std::pair<ZeroReport, ZeroReport> reports_for_spec(const PerturbationSpec& spec) {
    return zero_reports(melnikov_params(spec), spec.degree(), spec.holomorphic());
}

// --- subcommand bodies ------------------------------------------------------

void cmd_melnikov_eval(CommandContext& ctx, const std::string& spec_path,
                       const std::string& grid, const std::string& method,
                       const std::string& out_path) {
    const PerturbationSpec spec = load_spec(spec_path);
    ctx.manifest.input_digest = digest_file(spec_path);
    const auto rs = parse_grid(grid);

    std::vector<double> m1(rs.size()), n1(rs.size());
    if (method == "closed") {
        const MelnikovParams p = melnikov_params(spec);
        for (std::size_t i = 0; i < rs.size(); ++i) {
            m1[i] = eval_M1(p, rs[i]);
            n1[i] = eval_N1(p, rs[i]);
        }
    } else if (method == "quad") {
        const auto& left = builtin_system("half-i-z2-minus-1-left");
        const auto& right = builtin_system("half-i-z2-minus-1-right");
        detail::parallel_for(static_cast<int>(rs.size()), [&](int i) {
            m1[i] = melnikov_quadrature(left, spec, rs[i]).m1;
            n1[i] = melnikov_quadrature(right, spec, rs[i]).m1;
        });
    } else {
        throw domain_error("--method must be closed or quad");
    }

    if (ctx.json_mode) {
        json rows = json::array();
        for (std::size_t i = 0; i < rs.size(); ++i)
            rows.push_back({{"r", rs[i]}, {"M1", m1[i]}, {"N1", n1[i]}});
        emit_json(ctx.manifest, {{"rows", rows}});
        return;
    }
    std::ostringstream body;
    body << "r,M1,N1\n";
    for (std::size_t i = 0; i < rs.size(); ++i)
        body << fmt15(rs[i]) << ',' << fmt15(m1[i]) << ',' << fmt15(n1[i]) << '\n';
    write_artifact(out_path, ctx.manifest, body.str());
}

void cmd_melnikov_zeros(CommandContext& ctx, const std::string& spec_path,
                        const std::string& which, double tol) {
    const PerturbationSpec spec = load_spec(spec_path);
    ctx.manifest.input_digest = digest_file(spec_path);
    const MelnikovParams p = melnikov_params(spec);
    (void)tol;

    const auto [rm, rn] = zero_reports(p, spec.degree(), spec.holomorphic());
    json payload;
    bool certified = true;
    if (which == "M1" || which == "both") {
        payload["M1"] = zero_report_json(rm);
        certified = certified && rm.count_certified;
    }
    if (which == "N1" || which == "both") {
        payload["N1"] = zero_report_json(rn);
        certified = certified && rn.count_certified;
    }
    if (ctx.json_mode) {
        emit_json(ctx.manifest, payload);
    } else {
        std::cout << ctx.manifest.csv_comment() << '\n';
        auto print = [](const char* name, const ZeroReport& rep) {
            std::cout << name << ": " << rep.count() << " zero(s), certified="
                      << (rep.count_certified ? "yes" : "no")
                      << ", ceiling=" << rep.ceiling << '\n';
            for (const auto& z : rep.zeros)
                std::cout << "  r=" << fmt15(z.location)
                          << " +-" << fmt15(z.half_width)
                          << (z.simple ? " simple" : " NOT simple") << '\n';
        };
        if (which == "M1" || which == "both") print("M1", rm);
        if (which == "N1" || which == "both") print("N1", rn);
    }
    if (!certified) ctx.exit_code = kExitCertification;
}

void cmd_quadcheck(CommandContext& ctx, const std::string& spec_path, double tol,
                   const std::string& grid) {
    const PerturbationSpec spec = load_spec(spec_path);
    ctx.manifest.input_digest = digest_file(spec_path);
    if (spec.degree() > 3)
        throw domain_error("quadcheck compares against closed forms; requires m <= 3");
    const MelnikovParams p = melnikov_params(spec);
    const auto rs = parse_grid(grid);
    const auto& left = builtin_system("half-i-z2-minus-1-left");
    const auto& right = builtin_system("half-i-z2-minus-1-right");

    std::vector<double> dm(rs.size()), dn(rs.size());
    detail::parallel_for(static_cast<int>(rs.size()), [&](int i) {
        dm[i] = std::abs(melnikov_quadrature(left, spec, rs[i]).m1 - eval_M1(p, rs[i]));
        dn[i] = std::abs(melnikov_quadrature(right, spec, rs[i]).m1 - eval_N1(p, rs[i]));
    });
    double worst = 0;
    for (std::size_t i = 0; i < rs.size(); ++i)
        worst = std::max({worst, dm[i], dn[i]});

    if (ctx.json_mode)
        emit_json(ctx.manifest, {{"max_discrepancy", worst}, {"tol", tol},
                                 {"pass", worst < tol}});
    else
        std::cout << ctx.manifest.csv_comment() << '\n'
                  << "max |closed - quadrature| over both nests: " << fmt15(worst)
                  << (worst < tol ? "  (within " : "  (EXCEEDS ") << tol << ")\n";
    if (!(worst < tol)) ctx.exit_code = kExitCertification;
}

void cmd_ect_check(CommandContext& ctx, const std::string& basis, int m,
                   int grid_points) {
    bool pass = true;
    json checks = json::array();
    auto record = [&](const std::string& name, bool ok, double value) {
        checks.push_back({{"check", name}, {"pass", ok}, {"worst", value}});
        if (!ctx.json_mode)
            std::cout << (ok ? "PASS " : "FAIL ") << name
                      << " (worst " << fmt15(value) << ")\n";
        pass = pass && ok;
    };

    if (basis == "F") {
        double min_w = std::numeric_limits<double>::infinity();
        double worst_id = 0, worst_xchk = 0;
        for (int i = 1; i <= grid_points; ++i) {
            const double r = static_cast<double>(i) / (grid_points + 1);
            const auto w = wronskians(WronskianBasis::F, r);
            for (double v : w) min_w = std::min(min_w, v);
            const double lhs = wronskian4_derivative(r) * std::pow(1 - r * r, 3);
            const double rhs = 768 * std::pow(r, 4);
            worst_id = std::max(worst_id, std::abs(lhs - rhs) / rhs);
        }
        for (double r : {0.3, 0.45, 0.6, 0.8}) {
            const auto wc = wronskians(WronskianBasis::F, r);
            const auto wn = wronskians_numeric(WronskianBasis::F, r);
            for (int k = 0; k < 7; ++k)
                worst_xchk = std::max(worst_xchk,
                                      std::abs(wc[k] - wn[k]) / std::abs(wc[k]));
        }
        record("F-basis Wronskians positive on the grid", min_w > 0, min_w);
        record("W4' (1-r^2)^3 = 768 r^4 (relative)", worst_id < 1e-8, worst_id);
        record("closed forms match numeric determinants (relative)",
               worst_xchk < 1e-6, worst_xchk);
    } else if (basis == "G") {
        double min_last = std::numeric_limits<double>::infinity();
        for (int i = 1; i <= grid_points; ++i) {
            const double r = static_cast<double>(i) / (grid_points + 1);
            const auto w = wronskians(WronskianBasis::G, r, m);
            const double sign = (m % 2 == 0 ? 1.0 : -1.0) * r /
                                std::pow(r * r - 1.0, m);
            min_last = std::min(min_last, w.back() * (sign > 0 ? 1.0 : -1.0));
        }
        record("G-basis final Wronskian keeps the predicted sign", min_last > 0,
               min_last);
    } else {
        throw domain_error("--basis must be F or G");
    }

    if (ctx.json_mode) emit_json(ctx.manifest, {{"checks", checks}, {"pass", pass}});
    if (!pass) ctx.exit_code = kExitCertification;
}

void cmd_sturm(CommandContext& ctx, const std::string& coeffs,
               const std::string& lo, const std::string& hi) {
    std::vector<Rational> cs;
    std::istringstream is(coeffs);
    std::string tok;
    while (std::getline(is, tok, ',')) cs.push_back(parse_rational(tok));
    const RationalPolynomial p(cs);
    const int count = sturm_count(p, parse_rational(lo), parse_rational(hi));
    const int desc = descartes_bound(p);
    if (ctx.json_mode)
        emit_json(ctx.manifest, {{"roots_in_interval", count},
                                 {"descartes_bound", desc},
                                 {"polynomial", p.str()}});
    else
        std::cout << "polynomial: " << p.str() << "\ndistinct roots in (" << lo
                  << ", " << hi << "): " << count
                  << "\nsign variations (positive-root bound): " << desc << '\n';
}

void cmd_design(CommandContext& ctx, int m, bool holomorphic,
                const std::vector<std::string>& target_strs,
                const std::string& out_path) {
    std::vector<ZeroTarget> targets;
    for (const auto& s : target_strs) {
        const auto colon = s.find(':');
        if (colon == std::string::npos || (s[0] != 'f' && s[0] != 'g'))
            throw domain_error("targets look like f:0.25 or g:-0.3, got '" + s + "'");
        targets.push_back({std::stod(s.substr(colon + 1)),
                           s[0] == 'f' ? Which::M1 : Which::N1});
    }
    const MelnikovParams p = design(targets, m, holomorphic);
    const PerturbationSpec spec = params_to_perturbation(p, m, holomorphic);
    const Configuration got = verify_configuration(spec);
    if (!out_path.empty()) save_spec(spec, out_path);

    json payload{{"params",
                  {{"a", p.a}, {"b", p.b}, {"c", p.c}, {"d", p.d},
                   {"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma},
                   {"kappa", p.kappa}, {"rho", p.rho}}},
                 {"configuration", {{"m1", got.m1}, {"n1", got.n1},
                                    {"certified", got.certified}}}};
    if (!out_path.empty()) payload["spec_file"] = out_path;
    if (ctx.json_mode) {
        emit_json(ctx.manifest, payload);
    } else {
        std::cout << ctx.manifest.csv_comment() << '\n'
                  << "designed [[" << got.m1 << "," << got.n1 << "]] certified="
                  << (got.certified ? "yes" : "no") << '\n'
                  << payload["params"].dump(2) << '\n';
        if (!out_path.empty()) std::cout << "spec written to " << out_path << '\n';
    }
}

void cmd_realize(CommandContext& ctx, int i, int j, int m, bool holomorphic,
                 std::uint64_t seed, const std::string& out_path) {
    const PerturbationSpec spec = realize(i, j, m, holomorphic, seed);
    const Configuration got = verify_configuration(spec);
    if (!out_path.empty()) save_spec(spec, out_path);
    if (ctx.json_mode) {
        json payload{{"configuration", {{"m1", got.m1}, {"n1", got.n1},
                                        {"certified", got.certified}}},
                     {"spec", json::parse(to_json(spec))}};
        if (!out_path.empty()) payload["spec_file"] = out_path;
        emit_json(ctx.manifest, payload);
    } else {
        std::cout << ctx.manifest.csv_comment() << '\n'
                  << "realized [[" << got.m1 << "," << got.n1 << "]] certified="
                  << (got.certified ? "yes" : "no") << '\n';
        if (out_path.empty())
            std::cout << to_json(spec) << '\n';
        else
            std::cout << "spec written to " << out_path << '\n';
    }
}

void cmd_verify(CommandContext& ctx, const std::string& spec_path) {
    const PerturbationSpec spec = load_spec(spec_path);
    ctx.manifest.input_digest = digest_file(spec_path);
    const auto [rm, rn] = reports_for_spec(spec);
    const Configuration got{
        rm.count(), rn.count(),
        rm.count_certified && rn.count_certified &&
            rm.simple_count() == rm.count() && rn.simple_count() == rn.count()};
    if (ctx.json_mode)
        emit_json(ctx.manifest,
                  {{"configuration", {{"m1", got.m1}, {"n1", got.n1},
                                      {"certified", got.certified}}},
                   {"M1", zero_report_json(rm)},
                   {"N1", zero_report_json(rn)}});
    else
        std::cout << ctx.manifest.csv_comment() << '\n'
                  << "[[" << got.m1 << "," << got.n1 << "]] certified="
                  << (got.certified ? "yes" : "no") << '\n';
    if (!got.certified) ctx.exit_code = kExitCertification;
}

void cmd_audit(CommandContext& ctx) {
    const RemarkAuditReport rep = audit_remarks();
    if (ctx.json_mode) {
        auto entry_json = [](const RemarkAuditEntry& e) {
            return json{{"row", e.row}, {"k", e.k}, {"l", e.l},
                        {"published", e.published}, {"derived", e.derived}};
        };
        json mism = json::array(), miss = json::array();
        for (const auto& e : rep.mismatches) mism.push_back(entry_json(e));
        for (const auto& e : rep.missing) miss.push_back(entry_json(e));
        emit_json(ctx.manifest, {{"summary", rep.summary()},
                                 {"entries_checked", rep.entries_checked},
                                 {"gamma_ratio", rep.gamma_ratio},
                                 {"mismatches", mism},
                                 {"missing_entries", miss}});
        return;
    }
    std::cout << ctx.manifest.csv_comment() << '\n' << rep.summary() << '\n';
    for (const auto& e : rep.mismatches)
        std::cout << "  mismatch: row " << e.row << " (k=" << e.k << ",l=" << e.l
                  << ") published " << e.published << " but the integral sums give "
                  << e.derived << '\n';
    for (const auto& e : rep.missing)
        std::cout << "  absent from published table: row " << e.row << " (k=" << e.k
                  << ",l=" << e.l << ") derived value " << e.derived << '\n';
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"averaged-function toolkit for piecewise-perturbed holomorphic centers"};
    app.name("pwhs");
    app.require_subcommand(1);

    CommandContext ctx;
    for (int i = 0; i < argc; ++i) ctx.manifest.argv.push_back(argv[i]);
    ctx.manifest.input_digest = "-";
    app.add_flag("--json", ctx.json_mode, "machine-readable JSON on stdout");

    std::function<void()> action;

    // melnikov eval|zeros
    auto* melnikov = app.add_subcommand("melnikov", "evaluate averaged functions");
    melnikov->require_subcommand(1);
    {
        auto* eval = melnikov->add_subcommand("eval", "tabulate M1 and N1 on a grid");
        auto spec = std::make_shared<std::string>();
        auto grid = std::make_shared<std::string>("0.05:0.95:0.05");
        auto method = std::make_shared<std::string>("closed");
        auto out = std::make_shared<std::string>();
        eval->add_option("--spec", *spec, "perturbation spec JSON")->required();
        eval->add_option("--grid", *grid, "r grid lo:hi:step");
        eval->add_option("--method", *method, "closed | quad");
        eval->add_option("--out", *out, "CSV output path (default stdout)");
        eval->callback([&ctx, spec, grid, method, out] {
            ctx.manifest.command = "melnikov eval";
            cmd_melnikov_eval(ctx, *spec, *grid, *method, *out);
        });
    }
    {
        auto* zeros = melnikov->add_subcommand("zeros", "isolate zeros in (0,1)");
        auto spec = std::make_shared<std::string>();
        auto which = std::make_shared<std::string>("both");
        auto tol = std::make_shared<double>(1e-12);
        zeros->add_option("--spec", *spec)->required();
        zeros->add_option("--which", *which, "M1 | N1 | both");
        zeros->add_option("--tol", *tol, "isolation half-width");
        zeros->callback([&ctx, spec, which, tol] {
            ctx.manifest.command = "melnikov zeros";
            cmd_melnikov_zeros(ctx, *spec, *which, *tol);
        });
    }

    {
        auto* qc = app.add_subcommand("quadcheck",
                                      "closed forms vs direct quadrature");
        auto spec = std::make_shared<std::string>();
        auto tol = std::make_shared<double>(1e-9);
        auto grid = std::make_shared<std::string>("0.05:0.95:0.05");
        qc->add_option("--spec", *spec)->required();
        qc->add_option("--tol", *tol, "max allowed discrepancy");
        qc->add_option("--grid", *grid, "r grid lo:hi:step");
        qc->callback([&ctx, spec, tol, grid] {
            ctx.manifest.command = "quadcheck";
            cmd_quadcheck(ctx, *spec, *tol, *grid);
        });
    }

    {
        auto* ect = app.add_subcommand("ect-check",
                                       "Wronskian positivity and identities");
        auto basis = std::make_shared<std::string>("F");
        auto m = std::make_shared<int>(3);
        auto pts = std::make_shared<int>(999);
        ect->add_option("--basis", *basis, "F | G");
        ect->add_option("--m", *m, "degree tag for the G basis");
        ect->add_option("--grid-points", *pts);
        ect->callback([&ctx, basis, m, pts] {
            ctx.manifest.command = "ect-check";
            cmd_ect_check(ctx, *basis, *m, *pts);
        });
    }

    {
        auto* st = app.add_subcommand("sturm", "exact distinct-root count");
        auto coeffs = std::make_shared<std::string>();
        auto lo = std::make_shared<std::string>("0");
        auto hi = std::make_shared<std::string>("1");
        st->add_option("--coeffs", *coeffs,
                       "ascending coefficients, e.g. -1,0,2 or 1/2,-3/4,1")
            ->required();
        st->add_option("--lo", *lo);
        st->add_option("--hi", *hi);
        st->callback([&ctx, coeffs, lo, hi] {
            ctx.manifest.command = "sturm";
            cmd_sturm(ctx, *coeffs, *lo, *hi);
        });
    }

    {
        auto* ds = app.add_subcommand("design", "place prescribed zeros");
        auto m = std::make_shared<int>(1);
        auto holo = std::make_shared<bool>(false);
        auto targets = std::make_shared<std::vector<std::string>>();
        auto out = std::make_shared<std::string>();
        ds->add_option("--m", *m)->required();
        ds->add_flag("--holomorphic", *holo);
        ds->add_option("--target", *targets, "f:<loc> or g:<loc>, repeatable")
            ->required();
        ds->add_option("--out", *out, "write the realized spec JSON here");
        ds->callback([&ctx, m, holo, targets, out] {
            ctx.manifest.command = "design";
            cmd_design(ctx, *m, *holo, *targets, *out);
        });
    }

    {
        auto* rz = app.add_subcommand("realize", "realize a configuration [[i,j]]");
        auto i = std::make_shared<int>(0);
        auto j = std::make_shared<int>(0);
        auto m = std::make_shared<int>(1);
        auto holo = std::make_shared<bool>(false);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto out = std::make_shared<std::string>();
        rz->add_option("--i", *i)->required();
        rz->add_option("--j", *j)->required();
        rz->add_option("--m", *m)->required();
        rz->add_flag("--holomorphic", *holo);
        rz->add_option("--seed", *seed, "jitter seed");
        rz->add_option("--out", *out, "write the spec JSON here");
        rz->callback([&ctx, i, j, m, holo, seed, out] {
            ctx.manifest.command = "realize";
            cmd_realize(ctx, *i, *j, *m, *holo, *seed, *out);
        });
    }

    {
        auto* vf = app.add_subcommand("verify", "certify the configuration of a spec");
        auto spec = std::make_shared<std::string>();
        vf->add_option("--spec", *spec)->required();
        vf->callback([&ctx, spec] {
            ctx.manifest.command = "verify";
            cmd_verify(ctx, *spec);
        });
    }

    // simulate is assembled inline: it needs most options
    {
        auto* sim = app.add_subcommand("simulate",
                                       "integrate the piecewise system and "
                                       "locate limit cycles");
        auto spec_path = std::make_shared<std::string>();
        auto eps = std::make_shared<double>(1e-3);
        auto nest = std::make_shared<std::string>("left");
        auto search = std::make_shared<std::string>("0.05:0.9");
        auto seeds = std::make_shared<int>(64);
        auto csv = std::make_shared<std::string>();
        auto traj = std::make_shared<std::string>();
        auto rk_tol = std::make_shared<double>(1e-10);
        sim->add_option("--spec", *spec_path)->required();
        sim->add_option("--epsilon", *eps);
        sim->add_option("--nest", *nest, "left | right | both");
        sim->add_option("--search", *search, "radius window lo:hi");
        sim->add_option("--seeds", *seeds);
        sim->add_option("--rk-tol", *rk_tol);
        sim->add_option("--csv", *csv, "cycle report CSV path (default stdout)");
        sim->add_option("--traj-csv", *traj,
                        "dump one return loop of the first cycle (t, Re z, Im z)");
        sim->callback([&ctx, spec_path, eps, nest, search, seeds, csv, traj, rk_tol] {
            ctx.manifest.command = "simulate";
            const PerturbationSpec spec = load_spec(*spec_path);
            ctx.manifest.input_digest = digest_file(*spec_path);

            double lo, hi;
            char colon;
            std::istringstream is(*search);
            if (!(is >> lo >> colon >> hi) || colon != ':')
                throw domain_error("--search must be lo:hi");

            std::vector<Nest> nests;
            if (*nest == "left") nests = {Nest::Left};
            else if (*nest == "right") nests = {Nest::Right};
            else if (*nest == "both") nests = {Nest::Left, Nest::Right};
            else throw domain_error("--nest must be left, right or both");

            json jnests = json::array();
            std::ostringstream body;
            body << "nest,section_point,radius_in_w,predicted_r0,deviation,stable\n";
            bool any_degenerate = false;
            std::vector<std::pair<Nest, CycleReport>> all;
            for (Nest nn : nests) {
                SimConfig cfg;
                cfg.epsilon = *eps;
                cfg.rk_tol = *rk_tol;
                cfg.nest = nn;
                const FindCyclesResult res = find_limit_cycles(spec, cfg, lo, hi, *seeds);
                any_degenerate = any_degenerate || res.degenerate_identity;
                json jc = json::array();
                for (const auto& c : res.cycles) {
                    all.push_back({nn, c});
                    body << (nn == Nest::Left ? "left" : "right") << ','
                         << fmt15(c.section_point) << ',' << fmt15(c.radius_in_w)
                         << ',' << fmt15(c.predicted_r0) << ',' << fmt15(c.deviation)
                         << ',' << (c.stable ? 1 : 0) << '\n';
                    jc.push_back({{"section_point", c.section_point},
                                  {"radius_in_w", c.radius_in_w},
                                  {"predicted_r0", c.predicted_r0},
                                  {"deviation", c.deviation},
                                  {"stable", c.stable},
                                  {"p_prime", c.p_prime}});
                }
                jnests.push_back({{"nest", nn == Nest::Left ? "left" : "right"},
                                  {"degenerate_identity", res.degenerate_identity},
                                  {"cycles", jc}});
            }
            if (ctx.json_mode)
                emit_json(ctx.manifest, {{"nests", jnests}});
            else
                write_artifact(*csv, ctx.manifest, body.str());
            if (!traj->empty()) {
                if (all.empty())
                    throw domain_error("no cycle found; nothing to dump");
                SimConfig cfg;
                cfg.epsilon = *eps;
                cfg.rk_tol = *rk_tol;
                cfg.nest = all.front().first;
                const Trajectory tr = integrate_piecewise(
                    spec, cfg, Complex{all.front().second.section_point, 0.0},
                    2 * std::numbers::pi * 1.05);
                std::ostringstream tb;
                tb << "t,re_z,im_z\n";
                for (std::size_t k = 0; k < tr.t.size(); ++k)
                    tb << fmt15(tr.t[k]) << ',' << fmt15(tr.z[k].real()) << ','
                       << fmt15(tr.z[k].imag()) << '\n';
                write_artifact(*traj, ctx.manifest, tb.str());
            }
            if (any_degenerate) ctx.exit_code = kExitCertification;
        });
    }

    {
        auto* audit = app.add_subcommand(
            "audit-remarks",
            "cross-check the published aggregate coefficient tables against "
            "the per-term integral sums");
        audit->callback([&ctx] {
            ctx.manifest.command = "audit-remarks";
            cmd_audit(ctx);
        });
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const quadrature_failure& e) {
        std::cerr << "quadrature failure: " << e.what() << '\n';
        return kExitCertification;
    } catch (const realize_failure& e) {
        std::cerr << "certification failure: " << e.what() << '\n';
        return kExitCertification;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    const auto t1 = std::chrono::steady_clock::now();
    ctx.manifest.wall_time_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    std::cerr << "manifest: " << ctx.manifest.to_json(true) << '\n';
    return ctx.exit_code;
}

}  // namespace pwhs::cli
