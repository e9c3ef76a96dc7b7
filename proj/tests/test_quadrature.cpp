#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "pwhs/melnikov.hpp"
#include "pwhs/quadrature.hpp"

using namespace pwhs;

namespace {

constexpr double kPi = std::numbers::pi;

PerturbationSpec random_spec(int m, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PerturbationSpec s(m);
    for (int l = 0; l <= m; ++l)
        for (int k = 0; k <= l; ++k) {
            s.set_plus(k, l, {u(rng), u(rng)});
            s.set_minus(k, l, {u(rng), u(rng)});
        }
    return s;
}

}  // namespace

TEST_CASE("model map registry") {
    const auto& left = builtin_system("half-i-z2-minus-1-left");
    CHECK(left.phi(Complex{0, 0}) == Complex{1, 0});
    CHECK(left.phi_inverse(Complex{0, 0}) == Complex{-1, 0});
    CHECK(left.phi_prime(Complex{0, 0}) == Complex{2, 0});
    CHECK(std::abs(left.phi(Complex{0.3, 0}).imag()) == 0.0);
    const Complex w{0.2, 0.5};
    CHECK(std::abs(left.phi(left.phi_inverse(w)) - w) < 1e-14);
    CHECK_THROWS_AS(builtin_system("no-such-model"), domain_error);
}

TEST_CASE("register_system validates the triple") {
    LinearizedSystem broken;
    broken.name = "broken";
    broken.phi = [](Complex z) { return z; };
    broken.phi_prime = [](Complex) { return Complex{1, 0}; };
    broken.phi_inverse = [](Complex w) { return w + Complex{0.01, 0}; };
    CHECK_THROWS_AS(register_system(broken), domain_error);

    LinearizedSystem shifted;  // a valid custom triple
    shifted.name = "iz-scaled";
    shifted.phi = [](Complex z) { return 2.0 * z; };
    shifted.phi_prime = [](Complex) { return Complex{2, 0}; };
    shifted.phi_inverse = [](Complex w) { return 0.5 * w; };
    shifted.rotation = Rotation::PlusI;
    CHECK_NOTHROW(register_system(shifted));
    CHECK_NOTHROW(builtin_system("iz-scaled"));
}

TEST_CASE("zero perturbation integrates to zero") {
    const auto& left = builtin_system("half-i-z2-minus-1-left");
    for (double r : {0.1, 0.5, 0.9}) {
        const auto q = melnikov_quadrature(left, PerturbationSpec(2), r);
        CHECK(q.m1_plus == 0.0);
        CHECK(q.m1_minus == 0.0);
        CHECK(q.m1 == 0.0);
    }
}

TEST_CASE("constant perturbation matches the closed form 1-r^2") {
    const auto& left = builtin_system("half-i-z2-minus-1-left");
    PerturbationSpec s(0);
    s.set_plus(0, 0, {0, 1});
    const auto q = melnikov_quadrature(left, s, 0.5);
    CHECK(q.m1 == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("closed forms agree with quadrature on random specs") {
    std::mt19937 rng(57);
    const auto& left = builtin_system("half-i-z2-minus-1-left");
    for (int m = 0; m <= 3; ++m) {
        const PerturbationSpec s = random_spec(m, rng);
        const MelnikovParams p = melnikov_params(s);
        for (double r : {0.1, 0.35, 0.6, 0.85}) {
            const auto q = melnikov_quadrature(left, s, r);
            CHECK(q.m1 == doctest::Approx(eval_M1(p, r)).epsilon(1e-11).scale(1.0));
        }
    }
}

TEST_CASE("right nest equals the left nest of the reflected spec") {
    std::mt19937 rng(61);
    const auto& left = builtin_system("half-i-z2-minus-1-left");
    const auto& right = builtin_system("half-i-z2-minus-1-right");
    for (int m = 0; m <= 3; ++m) {
        const PerturbationSpec s = random_spec(m, rng);
        const PerturbationSpec rs = reflect(s);
        for (double r : {0.15, 0.5, 0.8}) {
            const double n1 = melnikov_quadrature(right, s, r).m1;
            const double m1r = melnikov_quadrature(left, rs, r).m1;
            CHECK(n1 == doctest::Approx(m1r).epsilon(1e-10).scale(1.0));
        }
    }
}

TEST_CASE("smooth perturbation on the rotation model") {
    // plus == minus collapses the two half-circle integrals into one full
    // period; for R(z,zbar) = z that full-period value is 2 pi r, and the
    // purely rotational R(z,zbar) = i z averages to zero
    const auto& iz = builtin_system("iz");
    SUBCASE("R = z gives 2 pi r") {
        PerturbationSpec s(1);
        s.set_plus(0, 1, {1, 0});
        s.set_minus(0, 1, {1, 0});
        for (double r : {0.2, 0.5, 0.8}) {
            const auto q = melnikov_quadrature(iz, s, r);
            CHECK(q.m1 == doctest::Approx(2 * kPi * r).epsilon(1e-12));
            // equality with the single full-period integral
            const auto full = integrate_gk15(
                [&](double th) {
                    const Complex w = std::polar(r, th);
                    return (std::conj(eval_perturbation(s, true, w)) *
                            Complex{0, 1} * std::polar(1.0, th)).imag();
                },
                -kPi, kPi, 1e-12, 1e-12, 100);
            CHECK(q.m1 == doctest::Approx(full.value).epsilon(1e-12));
        }
    }
    SUBCASE("R = i z averages to zero") {
        PerturbationSpec s(1);
        s.set_plus(0, 1, {0, -1});   // conj(a) = i
        s.set_minus(0, 1, {0, -1});
        for (double r : {0.3, 0.7})
            CHECK(melnikov_quadrature(iz, s, r).m1 ==
                  doctest::Approx(0.0).epsilon(1e-13));
    }
}

TEST_CASE("domain guards") {
    const auto& left = builtin_system("half-i-z2-minus-1-left");
    CHECK_THROWS_AS(melnikov_quadrature(left, PerturbationSpec(1), 1.5), domain_error);
    CHECK_THROWS_AS(melnikov_quadrature(left, PerturbationSpec(1), 1.0 - 1e-9),
                    domain_error);  // inside the pole guard band
    QuadratureConfig tight;
    tight.max_subdivisions = 1;
    tight.abs_tol = 1e-15;
    tight.rel_tol = 1e-15;
    std::mt19937 rng(5);
    const PerturbationSpec s = random_spec(3, rng);
    CHECK_THROWS_AS(melnikov_quadrature(left, s, 0.97, tight), quadrature_failure);
}

TEST_CASE("composite Simpson converges at fourth order") {
    const auto f = [](double x) { return std::sin(3 * x) * std::exp(x / 2); };
    const double exact =
        integrate_gk15(f, 0.0, 2.0, 1e-14, 1e-14, 500).value;
    const double e1 = std::abs(composite_simpson(f, 0.0, 2.0, 4) - exact);
    const double e2 = std::abs(composite_simpson(f, 0.0, 2.0, 8) - exact);
    const double e3 = std::abs(composite_simpson(f, 0.0, 2.0, 16) - exact);
    CHECK(e1 / e2 > 10);
    CHECK(e1 / e2 < 22);
    CHECK(e2 / e3 > 10);
    CHECK(e2 / e3 < 22);
}

TEST_CASE("Simpson rule is available for the averaged integrals") {
    std::mt19937 rng(91);
    const PerturbationSpec s = random_spec(2, rng);
    const MelnikovParams p = melnikov_params(s);
    QuadratureConfig cfg;
    cfg.rule = QuadratureConfig::Rule::CompositeSimpson;
    cfg.max_subdivisions = 256;
    const auto& left = builtin_system("half-i-z2-minus-1-left");
    const auto q = melnikov_quadrature(left, s, 0.4, cfg);
    CHECK(q.m1 == doctest::Approx(eval_M1(p, 0.4)).epsilon(1e-9));
}
