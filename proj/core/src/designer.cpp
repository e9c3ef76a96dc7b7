#include "pwhs/designer.hpp"

#include <Eigen/Dense>
#include <optional>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace pwhs {

namespace {

int free_parameter_count(int m, bool holomorphic) {
    if (holomorphic) {
        if (m == 3) return 4;  // a, b, c, kappa with alpha = 1
        throw domain_error("design supports holomorphic targets only for m = 3");
    }
    switch (m) {
        case 1: return 4;  // a, b, c, d with alpha = 1
        case 2: return 6;  // a, b, c, d, alpha, kappa with beta = 1
        case 3: return 8;  // all but gamma, which is pinned to 1
        default:
            throw domain_error("design supports m in {1,2,3}");
    }
}

void check_targets(const std::vector<ZeroTarget>& targets, int expected) {
    if (static_cast<int>(targets.size()) != expected)
        throw domain_error("expected " + std::to_string(expected) +
                           " targets, got " + std::to_string(targets.size()));
    for (const auto& t : targets)
        if (!(std::abs(t.location) > 0 && std::abs(t.location) < 1))
            throw domain_error("target locations must lie in (-1,1) minus 0");
    for (std::size_t i = 0; i < targets.size(); ++i)
        for (std::size_t j = i + 1; j < targets.size(); ++j)
            if (targets[i].which == targets[j].which &&
                targets[i].location == targets[j].location) {
                std::ostringstream os;
                os << "duplicate target (" << (targets[i].which == Which::M1 ? "f" : "g")
                   << " at " << targets[i].location << ") makes the system singular";
                throw degenerate_targets(os.str());
            }
}

// row of the design system and its right-hand side for one target
void design_row(int m, bool holomorphic, const ZeroTarget& t,
                Eigen::RowVectorXd& row, double& rhs) {
    const double r = t.location;
    const double at = std::atanh(r);
    const double r2 = r * r, r3 = r2 * r, r4 = r2 * r2;
    const bool on_f = t.which == Which::M1;
    if (holomorphic) {
        // unknowns (a, b, c, kappa), alpha = 1, on M1 / N1 directly
        if (on_f) {
            row << 1, r, r2, 0;
            rhs = -r * at;
        } else {
            row << r2, r, 1, -r;
            rhs = -r * at;
        }
        return;
    }
    const double w_alpha = (r2 - 1) * (r2 - 1) * at;
    const double w_beta = (r4 - 1) * at;
    const double w_gamma = r2 * at;
    if (m == 1) {
        // unknowns (a,b,c,d), alpha = 1
        if (on_f) {
            row << r, r2, r3, r4;
            rhs = -w_alpha;
        } else {
            row << r3, r2, r, 2 * r2 - r4;
            rhs = -w_alpha;
        }
    } else if (m == 2) {
        // unknowns (a,b,c,d,alpha,kappa), beta = 1
        if (on_f) {
            row << r, r2, r3, r4, w_alpha, 0;
            rhs = -w_beta;
        } else {
            row << r3, r2, r, 2 * r2 - r4, w_alpha, r4 - r2;
            rhs = +w_beta;
        }
    } else {
        // unknowns (a,b,c,d,alpha,beta,kappa,rho), gamma = 1
        if (on_f) {
            row << r, r2, r3, r4, w_alpha, w_beta, 0, 0;
            rhs = -w_gamma;
        } else {
            row << r3, r2, r, 2 * r2 - r4, w_alpha, -w_beta, r4 - r2, r2;
            rhs = -w_gamma;
        }
    }
}

}  // namespace

MelnikovParams design(const std::vector<ZeroTarget>& targets, int m,
                      bool holomorphic) {
    const int n = free_parameter_count(m, holomorphic);
    check_targets(targets, n);

    Eigen::MatrixXd A(n, n);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
        Eigen::RowVectorXd row(n);
        double rhs = 0;
        design_row(m, holomorphic, targets[i], row, rhs);
        A.row(i) = row;
        b(i) = rhs;
    }

    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smin = svd.singularValues()(n - 1);
    const double smax = svd.singularValues()(0);
    if (smin <= 0 || smax / smin > 1e12) {
        std::ostringstream os;
        os << "design system is singular or ill-conditioned (cond="
           << (smin > 0 ? smax / smin : std::numeric_limits<double>::infinity())
           << "); targets are too close to a degenerate set";
        throw degenerate_targets(os.str());
    }
    const Eigen::VectorXd x = svd.solve(b);
    const double resid = (A * x - b).lpNorm<Eigen::Infinity>();
    if (resid > 1e-10)
        throw degenerate_targets("design solve residual " + std::to_string(resid) +
                                 " exceeds 1e-10");

    MelnikovParams p;
    if (holomorphic) {
        p.a = x(0);
        p.b = x(1);
        p.c = x(2);
        p.gamma = 1.0;      // the r*atanh coefficient of both functions
        p.rho = -x(3);      // kappa enters the second nest as -rho
    } else if (m == 1) {
        p.a = x(0); p.b = x(1); p.c = x(2); p.d = x(3);
        p.alpha = 1.0;
    } else if (m == 2) {
        p.a = x(0); p.b = x(1); p.c = x(2); p.d = x(3);
        p.alpha = x(4);
        p.beta = 1.0;
        p.kappa = x(5);
    } else {
        p.a = x(0); p.b = x(1); p.c = x(2); p.d = x(3);
        p.alpha = x(4); p.beta = x(5);
        p.gamma = 1.0;
        p.kappa = x(6); p.rho = x(7);
    }
    return p;
}

std::pair<ZeroReport, ZeroReport> zero_reports(const MelnikovParams& params,
                                               int m, bool holomorphic) {
    if (holomorphic && m == 3) {
        HolomorphicParams h;
        h.a = params.a;
        h.b = params.b;
        h.c = params.c;
        h.alpha = params.gamma;
        h.kappa = -params.rho;
        return {isolate_zeros(span_from_holomorphic(h, Which::M1)),
                isolate_zeros(span_from_holomorphic(h, Which::N1))};
    }
    return {isolate_zeros(span_from_params(params, Which::M1)),
            isolate_zeros(span_from_params(params, Which::N1))};
}

Configuration verify_configuration(const MelnikovParams& params, int m,
                                   bool holomorphic) {
    const auto [rm, rn] = zero_reports(params, m, holomorphic);
    Configuration c;
    c.m1 = rm.count();
    c.n1 = rn.count();
    c.certified = rm.count_certified && rn.count_certified &&
                  rm.simple_count() == rm.count() && rn.simple_count() == rn.count();
    return c;
}

Configuration verify_configuration(const PerturbationSpec& spec) {
    return verify_configuration(melnikov_params(spec), spec.degree(),
                                spec.holomorphic());
}

PolynomialCaseResult polynomial_case_analysis(const MelnikovParams& p, int m) {
    if (p.alpha != 0 || p.beta != 0 || p.gamma != 0)
        throw domain_error("polynomial case requires alpha = beta = gamma = 0 exactly");
    static constexpr int kBounds[4] = {1, 4, 4, 5};
    if (m < 0 || m > 3) throw unsupported_degree(m);

    const RationalPolynomial M = RationalPolynomial::from_doubles(
        {p.a, p.b, p.c, p.d});
    const RationalPolynomial N = RationalPolynomial::from_doubles(
        {p.c, p.b + 2 * p.d - p.kappa + p.rho, p.a, -p.d + p.kappa});

    const Rational lo(1, 1000000000000LL), hi = 1 - Rational(1, 1000000000000LL);
    auto count01 = [&](const RationalPolynomial& q) {
        if (q.is_zero() || q.degree() == 0) return 0;
        try {
            return sturm_count(q, lo, hi);
        } catch (const endpoint_root&) {
            return sturm_count(q, lo + Rational(1, 1000000007),
                               hi - Rational(1, 1000000007));
        }
    };

    PolynomialCaseResult out;
    out.config.m1 = M.is_zero() ? 0 : count01(M);
    out.config.n1 = N.is_zero() ? 0 : count01(N);
    out.config.certified = true;  // exact arithmetic
    out.bound = kBounds[m];
    out.bound_ok = out.config.m1 + out.config.n1 <= out.bound;

    if (m == 3 && out.config.m1 == 3 && out.config.n1 >= 2 && !N.is_zero() &&
        N.degree() == 3) {
        const auto rs = real_roots(M, Rational(0), Rational(1));
        const auto ss_all = real_roots(N);
        std::vector<double> ss_in, ss_out;
        for (double s : ss_all)
            (s > 0 && s < 1 ? ss_in : ss_out).push_back(s);
        if (rs.size() == 3 && ss_in.size() >= 2) {
            const double sum_r = rs[0] + rs[1] + rs[2];
            const double prod_r = rs[0] * rs[1] * rs[2];
            const double s1 = ss_in[0], s2 = ss_in[1];
            out.third_root_formula =
                (s1 + s2) * sum_r / (prod_r * s1 * s2 - sum_r);
            if (!ss_out.empty()) out.third_root_direct = ss_out.front();
        }
    }
    return out;
}

// --- realize -----------------------------------------------------------------

namespace {

void check_table(int i, int j, int m, bool holomorphic) {
    auto fail = [&](const std::string& why) {
        std::ostringstream os;
        os << "configuration [[" << i << "," << j << "]] is outside the "
           << (holomorphic ? "holomorphic" : "complex") << " m=" << m
           << " realizability table: " << why
           << " (not supported, which is weaker than proven impossible)";
        throw not_supported(os.str());
    };
    if (i < 0 || j < 0) throw domain_error("counts must be nonnegative");
    if (holomorphic) {
        if (m == 0 && i + j > 1) fail("i+j must be <= 1 for m=0");
        else if ((m == 1 || m == 2) && i + j > 2) fail("i+j must be <= 2 for m<=2");
        else if (m == 3 && (i > 3 || j > 3)) fail("each nest is capped at 2m-3 = 3 cycles");
        else if (m == 3 && i + j > 4) fail("i+j must be <= 4 for m=3");
        else if (m > 3) fail("no construction is shipped beyond m=3 (per-nest bound 2m-3)");
        return;
    }
    if (m == 0) {
        if (i + j > 1) fail("i+j must be <= 1 for m=0");
        return;
    }
    if (m > 3) throw unsupported_degree(m);
    if (i > m + 3 || j > m + 3) fail("each nest is capped at m+3 cycles");
    if (i + j > 2 * m + 2) fail("i+j must be <= 2m+2");
}

PerturbationSpec realize_holomorphic_quadratic(int i, int j, int m) {
    // reciprocal-root structure: a root of M1 in (0,1) pairs with a root of
    // N1 at its reciprocal, so configurations are built directly
    MelnikovParams p;
    if (i == 1 && j == 1) {
        p.a = 1; p.b = -2.6; p.c = 1;       // roots r* and 1/r*
    } else if (i == 2 && j == 0) {
        p.a = 0.18; p.b = -0.9; p.c = 1;    // (r-0.3)(r-0.6)
    } else if (i == 1 && j == 0) {
        p.a = -0.1; p.b = -0.3; p.c = 1;    // (r-0.5)(r+0.2)
    } else {
        throw not_supported("unexpected holomorphic quadratic configuration");
    }
    return params_to_perturbation(p, m, true);
}

// The second-nest-only parameters (kappa for m>=2, rho for m=3) are reached
// only through g-rows, so a minimum number of targets must sit on g.
int min_g_rows(int m, bool holomorphic) {
    if (holomorphic) return m == 3 ? 1 : 0;
    if (m == 3) return 2;
    if (m == 2) return 1;
    return 0;
}

std::vector<ZeroTarget> canned_layout(int i, int j, int m, bool holomorphic,
                                      int pad_f) {
    const int total = free_parameter_count(m, holomorphic);
    std::vector<ZeroTarget> t;
    if (m == 1 && !holomorphic && i == 4 && j == 0) {
        for (int k = 1; k <= 4; ++k) t.push_back({k / 5.0, Which::M1});
        return t;
    }
    // the 0.6-offset keeps the two positive grids from coinciding when i = j
    for (int k = 0; k < i; ++k)
        t.push_back({0.15 + 0.7 * (k + 1) / (i + 1), Which::M1});
    for (int k = 0; k < j; ++k)
        t.push_back({0.15 + 0.7 * (k + 0.6) / (j + 1), Which::N1});
    // negative locations fill the remaining degrees of freedom without
    // contributing zeros in (0,1)
    const int pad = total - i - j;
    for (int k = 0; k < pad; ++k)
        t.push_back({-0.12 - 0.76 * (k + 1) / (pad + 1),
                     k < pad_f ? Which::M1 : Which::N1});
    return t;
}

// Shared solve with a conditioning guard.
Eigen::VectorXd solve_checked(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
    const int n = static_cast<int>(A.rows());
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smin = svd.singularValues()(n - 1);
    const double smax = svd.singularValues()(0);
    if (smin <= 0 || smax / smin > 1e12)
        throw degenerate_targets("f-side design system is ill-conditioned");
    const Eigen::VectorXd x = svd.solve(b);
    if ((A * x - b).lpNorm<Eigen::Infinity>() > 1e-10)
        throw degenerate_targets("f-side solve residual too large");
    return x;
}

// The first-nest function does not involve kappa or rho, so its parameters
// can be pinned from f-locations alone (top transcendental coefficient 1).
MelnikovParams design_f_side(const std::vector<double>& locs, int m, bool holo) {
    const int n = holo ? 3 : (m == 2 ? 5 : 6);
    if (static_cast<int>(locs.size()) != n)
        throw degenerate_targets("wrong f-side location count");
    Eigen::MatrixXd A(n, n);
    Eigen::VectorXd b(n);
    for (int idx = 0; idx < n; ++idx) {
        const double r = locs[idx];
        const double at = std::atanh(r);
        const double r2 = r * r, r4 = r2 * r2;
        if (holo) {
            A.row(idx) << 1, r, r2;
            b(idx) = -r * at;
        } else if (m == 2) {
            A.row(idx) << r, r2, r2 * r, r4, (r2 - 1) * (r2 - 1) * at;
            b(idx) = -(r4 - 1) * at;
        } else {
            A.row(idx) << r, r2, r2 * r, r4, (r2 - 1) * (r2 - 1) * at, (r4 - 1) * at;
            b(idx) = -r2 * at;
        }
    }
    const Eigen::VectorXd x = solve_checked(A, b);
    MelnikovParams p;
    if (holo) {
        p.a = x(0);
        p.b = x(1);
        p.c = x(2);
        p.gamma = 1;
    } else {
        p.a = x(0); p.b = x(1); p.c = x(2); p.d = x(3);
        p.alpha = x(4);
        if (m == 2) p.beta = 1;
        else { p.beta = x(5); p.gamma = 1; }
    }
    return p;
}

// Picks lambda so g0 + lambda * dir has exactly `want` well-separated sign
// changes on (0,1); the count only switches at levels of -g0/dir, so it is
// enough to test between consecutive critical values.
std::optional<double> scan_level_for_count(const std::function<double(double)>& g0,
                                           const std::function<double(double)>& dir,
                                           int want) {
    // uniform interior grid plus log-spaced tails: the functions can still
    // cross inside (0, 1e-3) and (1-1e-3, 1) where atanh runs away
    std::vector<double> ss;
    for (int k = 0; k < 120; ++k)
        ss.push_back(1e-9 * std::pow(1e6, k / 119.0));  // 1e-9 .. 1e-3
    for (int k = 1; k < 2800; ++k)
        ss.push_back(1e-3 + (1.0 - 2e-3) * k / 2800.0);
    for (int k = 119; k >= 0; --k)
        ss.push_back(1.0 - 1e-9 * std::pow(1e6, k / 119.0));  // up to 1-1e-9
    const int N = static_cast<int>(ss.size());
    std::vector<double> h(N);
    for (int k = 0; k < N; ++k) h[k] = -g0(ss[k]) / dir(ss[k]);
    std::vector<double> levels{h.front(), h.back()};
    for (int k = 1; k + 1 < N; ++k)
        if ((h[k] - h[k - 1]) * (h[k + 1] - h[k]) < 0) levels.push_back(h[k]);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    std::vector<double> candidates{levels.front() - 1.0, levels.back() + 1.0};
    for (std::size_t k = 0; k + 1 < levels.size(); ++k)
        candidates.push_back(0.5 * (levels[k] + levels[k + 1]));

    double best_margin = -1, best_lambda = 0;
    for (double lam : candidates) {
        int crossings = 0;
        double margin = std::numeric_limits<double>::infinity(), scale = 0;
        double last_cross = -1;
        bool separated = true;
        for (int k = 0; k < N; ++k) {
            const double g = g0(ss[k]) + lam * dir(ss[k]);
            scale = std::max(scale, std::abs(g));
            if (k > 0) {
                const double gp = g0(ss[k - 1]) + lam * dir(ss[k - 1]);
                if (gp * g < 0) {
                    if (last_cross > 0 && ss[k] - last_cross < 0.03) separated = false;
                    last_cross = ss[k];
                    ++crossings;
                } else if (std::abs(ss[k] - last_cross) > 0.02) {
                    margin = std::min(margin, std::abs(g));
                }
            }
        }
        if (crossings != want || !separated) continue;
        const double rel = margin / std::max(scale, 1e-300);
        if (rel > best_margin) {
            best_margin = rel;
            best_lambda = lam;
        }
    }
    // only candidates the certifier can comfortably separate from zero
    if (best_margin < 1e-3) return std::nullopt;
    return best_lambda;
}

// Split construction: pin the f side from its own targets, then steer the
// second nest through the parameters that only it sees.
std::optional<MelnikovParams> split_design(int i, int j, int m, bool holo,
                                           std::mt19937_64& rng, int variant) {
    const int fdof = holo ? 3 : (m == 2 ? 5 : 6);
    if (i > fdof) return std::nullopt;
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    // diverse draw styles: the boundary-sign parity the second nest needs
    // is only reachable from unusual zero placements for the extreme tables
    auto draw_loc = [&](int style) {
        const double u = uni(rng);
        switch (style % 4) {
            case 0: return 0.04 + 0.92 * u;
            case 1: return 0.04 + 0.92 * u * u;
            case 2: return 0.96 - 0.92 * u * u;
            default: return 0.5 + 0.45 * (u - 0.5);
        }
    };

    MelnikovParams p;
    bool have_f = false;
    for (int draw = 0; draw < 150 && !have_f; ++draw) {
        std::vector<double> locs;
        for (int k = 0; k < i; ++k) locs.push_back(draw_loc(variant + draw));
        std::sort(locs.begin(), locs.end());
        bool spaced = locs.empty() || locs.front() > 0.02;
        for (int k = 1; k < i; ++k)
            if (locs[k] - locs[k - 1] < 0.008) spaced = false;
        if (!spaced) continue;
        for (int k = i; k < fdof; ++k) locs.push_back(-0.06 - 0.89 * uni(rng));
        try {
            p = design_f_side(locs, m, holo);
        } catch (const degenerate_targets&) {
            continue;
        }
        // parity precheck: the second nest's boundary signs fix the parity
        // of its crossing count before kappa/rho are even chosen
        double slope0, end1;
        if (holo) {
            slope0 = p.c;
            end1 = 1.0;  // the r atanh term dominates with weight gamma = 1
        } else if (m == 2) {
            slope0 = p.c + p.alpha + 1.0;
            end1 = p.a + p.b + p.c + p.d;
        } else {
            slope0 = p.c + p.alpha + p.beta;
            end1 = 1.0;  // gamma = 1 drives g to +infinity at r -> 1
        }
        const bool even_wanted = j % 2 == 0;
        const bool even_possible = (slope0 > 0) == (end1 > 0);
        if (slope0 != 0 && end1 != 0 && even_wanted == even_possible) have_f = true;
    }
    if (!have_f) return std::nullopt;

    const auto g_of = [&](const MelnikovParams& q, double s) {
        return holo ? eval_melnikov(q, Which::N1, s)
                    : s * eval_melnikov(q, Which::N1, s);
    };
    if (holo) {
        // N1(s) = g0(s) - kappa s with kappa entering through rho = -kappa
        auto g0 = [&](double s) { return g_of(p, s); };
        auto dir = [](double s) { return -s; };
        const auto lam = scan_level_for_count(g0, dir, j);
        if (!lam) return std::nullopt;
        p.rho = -*lam;
        return p;
    }
    if (m == 2) {
        auto g0 = [&](double s) { return g_of(p, s); };
        auto dir = [](double s) { return s * s * (s * s - 1.0); };
        const auto lam = scan_level_for_count(g0, dir, j);
        if (!lam) return std::nullopt;
        p.kappa = *lam;
        return p;
    }
    // m == 3: two second-nest knobs
    if (j == 2) {
        const double t1 = std::clamp(0.3 + jit(rng) * 3, 0.1, 0.45);
        const double t2 = std::clamp(0.65 + jit(rng) * 3, 0.5, 0.9);
        Eigen::Matrix2d A;
        Eigen::Vector2d b;
        A << t1 * t1 * (t1 * t1 - 1), t1 * t1, t2 * t2 * (t2 * t2 - 1), t2 * t2;
        b << -g_of(p, t1), -g_of(p, t2);
        const Eigen::Vector2d x = A.fullPivLu().solve(b);
        p.kappa = x(0);
        p.rho = x(1);
        return p;
    }
    if (j == 1) {
        // place the zero through rho(kappa), then scan kappa
        const double t1 = std::clamp(0.5 + jit(rng) * 4, 0.15, 0.85);
        const double w1 = t1 * t1 * (t1 * t1 - 1);
        const double base = -g_of(p, t1) / (t1 * t1);
        auto g0 = [&, base](double s) {
            MelnikovParams q = p;
            q.rho = base;
            return g_of(q, s);
        };
        auto dir = [&, w1](double s) {
            return s * s * (s * s - 1.0) - (w1 / (t1 * t1)) * s * s;
        };
        const auto lam = scan_level_for_count(g0, dir, 1);
        if (!lam) return std::nullopt;
        p.kappa = *lam;
        p.rho = base - *lam * w1 / (t1 * t1);
        return p;
    }
    // j == 0: freeze rho at a variant value and scan kappa
    static constexpr double kRhoVariants[] = {0.0, 0.6, -0.6, 1.2, -1.2};
    MelnikovParams q = p;
    q.rho = kRhoVariants[variant % 5];
    auto g0 = [&](double s) { return g_of(q, s); };
    auto dir = [](double s) { return s * s * (s * s - 1.0); };
    const auto lam = scan_level_for_count(g0, dir, 0);
    if (!lam) return std::nullopt;
    q.kappa = *lam;
    return q;
}

PerturbationSpec lift_degree(const PerturbationSpec& low, int m) {
    PerturbationSpec out(m, low.holomorphic());
    for (int l = 0; l <= low.degree(); ++l)
        for (int k = 0; k <= l; ++k) {
            out.set_plus(k, l, low.plus(k, l));
            out.set_minus(k, l, low.minus(k, l));
        }
    return out;
}

// smallest degree whose realizable table already contains (i, j)
int liftable_from(int i, int j, int m, bool holomorphic) {
    for (int mp = holomorphic ? 1 : 0; mp < m; ++mp) {
        if (holomorphic) {
            if (i + j <= 2 && i <= 2 && j <= 2) return mp;
        } else {
            const int cap = mp == 0 ? 1 : 2 * mp + 2;
            if (i + j <= cap && i <= mp + 3 && j <= mp + 3) return mp;
        }
    }
    return -1;
}

}  // namespace

PerturbationSpec realize(int i, int j, int m, bool holomorphic,
                         std::uint64_t seed) {
    check_table(i, j, m, holomorphic);
    if (i == 0 && j == 0) return PerturbationSpec(m, holomorphic);
    if (i < j) return reflect(realize(j, i, m, holomorphic, seed));

    if (m == 0) {
        // single zero at (sqrt(17)-1)/4; the mirror root falls outside (0,1)
        MelnikovParams p;
        p.a = 1;
        p.b = -0.5;
        p.c = -1;
        return params_to_perturbation(p, 0, holomorphic);
    }
    if (holomorphic && m <= 2) return realize_holomorphic_quadratic(i, j, m);

    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL ^
                        (static_cast<std::uint64_t>(m * 64 + i * 8 + j) << 32));
    std::uniform_real_distribution<double> jitter(-0.05, 0.05);
    std::string last_reason = "no attempt";
    const int total = free_parameter_count(m, holomorphic);
    const int pad = total - i - j;
    // padding splits that leave enough rows on g for the kappa/rho columns
    std::vector<int> splits;
    for (int pf = pad; pf >= 0; --pf)
        if (j + (pad - pf) >= min_g_rows(m, holomorphic)) splits.push_back(pf);
    if (splits.empty()) splits.push_back(0);

    const bool split_ok =
        (holomorphic && m == 3 && j <= 1 && i <= 3) ||
        (!holomorphic && m == 2 && i <= 5) ||
        (!holomorphic && m == 3 && j <= 2 && i <= 6);

    auto try_params = [&](const MelnikovParams& p,
                          int attempt) -> std::optional<PerturbationSpec> {
        const PerturbationSpec spec = params_to_perturbation(p, m, holomorphic);
        const Configuration got = verify_configuration(spec);
        if (got.m1 == i && got.n1 == j && got.certified) return spec;
        std::ostringstream os;
        os << "attempt " << attempt << " produced [[" << got.m1 << "," << got.n1
           << "]] certified=" << got.certified;
        last_reason = os.str();
        return std::nullopt;
    };

    for (int attempt = 0; attempt < 20; ++attempt) {
        if (attempt == 8) {
            // embed a lower-degree construction: the extra coefficient rows
            // stay zero, which is still a valid degree-m system
            const int mp = liftable_from(i, j, m, holomorphic);
            if (mp >= 0) {
                try {
                    const PerturbationSpec low = realize(i, j, mp, holomorphic, seed);
                    const PerturbationSpec spec = lift_degree(low, m);
                    const Configuration got = verify_configuration(spec);
                    if (got.m1 == i && got.n1 == j && got.certified) return spec;
                } catch (const std::exception& e) {
                    last_reason = std::string("lift: ") + e.what();
                }
            }
        }
        if (attempt >= 9 && split_ok && (attempt % 2 == 1 || attempt >= 15)) {
            // pin the f side alone, then steer kappa/rho for the second nest
            const auto p = split_design(i, j, m, holomorphic, rng, attempt);
            if (p) {
                try {
                    if (auto spec = try_params(*p, attempt)) return *spec;
                } catch (const std::exception& e) {
                    last_reason = std::string("split: ") + e.what();
                }
            }
            continue;
        }
        std::vector<ZeroTarget> targets =
            canned_layout(i, j, m, holomorphic, splits[attempt % splits.size()]);
        const bool canonical =
            attempt == 0 && m == 1 && !holomorphic && i == 4 && j == 0;
        if (!canonical) {
            for (auto& t : targets) {
                const double lo = t.location > 0 ? 0.05 : -0.95;
                const double hi = t.location > 0 ? 0.95 : -0.05;
                t.location = std::clamp(t.location + jitter(rng), lo, hi);
            }
        }
        try {
            if (auto spec = try_params(design(targets, m, holomorphic), attempt))
                return *spec;
        } catch (const degenerate_targets& e) {
            last_reason = e.what();
        }
    }
    throw realize_failure("could not certify [[" + std::to_string(i) + "," +
                          std::to_string(j) + "]] after 20 jittered layouts; last: " +
                          last_reason);
}

}  // namespace pwhs
