#include <cmath>
#include <random>

#include "doctest.h"
#include "pwhs/rootkit.hpp"

using namespace pwhs;

TEST_CASE("isolating the degree-0 single zero") {
    MelnikovParams p;
    p.a = 1;
    p.b = -0.5;
    p.c = -1;
    const ZeroReport rep = isolate_zeros(span_from_params(p, Which::M1));
    REQUIRE(rep.count() == 1);
    CHECK(rep.zeros[0].location ==
          doctest::Approx(0.78077640640441514).epsilon(1e-11));
    CHECK(rep.zeros[0].simple);
    CHECK(rep.count_certified);
    CHECK(rep.ceiling == 1);
}

TEST_CASE("isolating a plain linear function") {
    SpanFunction f;
    f.basis = SpanFunction::Basis::G;
    f.m = 3;
    f.coefficients = {-0.5, 1.0, 0.0, 0.0};  // r - 1/2
    f.zero_ceiling = 3;
    const ZeroReport rep = isolate_zeros(f);
    REQUIRE(rep.count() == 1);
    CHECK(rep.zeros[0].location == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rep.zeros[0].simple);
    CHECK(rep.count_certified);
}

TEST_CASE("the four-zero design is isolated and certified at the ceiling") {
    // frozen solve of the degree-1 design with zeros at j/5 and unit
    // transcendental coefficient
    MelnikovParams p;
    p.a = -0.96764486944055164;
    p.b = -0.32656827865551241;
    p.c = 2.7448741292644006;
    p.d = -1.3785061350165792;
    p.alpha = 1.0;
    const ZeroReport rep = isolate_zeros(span_from_params(p, Which::M1));
    REQUIRE(rep.count() == 4);
    for (int j = 0; j < 4; ++j) {
        CHECK(rep.zeros[j].location ==
              doctest::Approx((j + 1) / 5.0).epsilon(1e-8));
        CHECK(rep.zeros[j].simple);
    }
    CHECK(rep.count_certified);
    CHECK(rep.ceiling == 4);

    // the second nest stays positive: certified empty report
    const ZeroReport repN = isolate_zeros(span_from_params(p, Which::N1));
    CHECK(repN.count() == 0);
    CHECK(repN.count_certified);
}

TEST_CASE("identically zero span has no isolated zeros") {
    const ZeroReport rep = isolate_zeros(span_from_params(MelnikovParams{}, Which::M1));
    CHECK(rep.count() == 0);
    CHECK(rep.count_certified);
}

TEST_CASE("non-simple zeros are flagged, not miscounted") {
    // (r - 1/2)^2 as a polynomial span: no sign change, exact path flags it
    SpanFunction f;
    f.basis = SpanFunction::Basis::G;
    f.m = 3;
    f.coefficients = {0.25, -1.0, 1.0, 0.0};
    f.zero_ceiling = 3;
    const ZeroReport rep = isolate_zeros(f);
    REQUIRE(rep.count() == 1);
    CHECK(rep.zeros[0].location == doctest::Approx(0.5).epsilon(1e-9));
    CHECK_FALSE(rep.zeros[0].simple);
}

TEST_CASE("rolle bound and sign certification") {
    const auto A = RationalPolynomial::from_doubles(
        {0, -0.96764486944055164, -0.32656827865551241, 2.7448741292644006,
         -1.3785061350165792});
    const auto B = RationalPolynomial::from_doubles({1, 0, -2, 0, 1});  // (r^2-1)^2
    const Rational lo(1, 1000000000), hi = 1 - Rational(1, 1000000000);
    CHECK(rolle_zero_bound(A, B, lo, hi) == 4);
    // the mirrored combination is positive on (0,1)
    const auto Ag = RationalPolynomial::from_doubles(
        {0, 2.7448741292644006, -0.32656827865551241 + 2 * -1.3785061350165792,
         -0.96764486944055164, 1.3785061350165792});
    const auto sign = certify_sign(Ag, B, lo, hi);
    REQUIRE(sign.has_value());
    CHECK(*sign == 1);
}

TEST_CASE("random parameter draws never exceed the family ceiling") {
    std::mt19937 rng(83);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int m = 0; m <= 3; ++m) {
        for (int trial = 0; trial < 50; ++trial) {
            MelnikovParams p;
            p.a = u(rng);
            p.b = u(rng);
            p.c = m == 0 ? -p.a : u(rng);
            if (m >= 1) {
                p.d = u(rng);
                p.alpha = u(rng);
            }
            if (m >= 2) {
                p.beta = u(rng);
                p.kappa = u(rng);
            }
            if (m >= 3) {
                p.gamma = u(rng);
                p.rho = u(rng);
            }
            const ZeroReport rep = isolate_zeros(span_from_params(p, Which::M1));
            CHECK(rep.count() <= (m == 0 ? 1 : m + 3));
        }
    }
}

TEST_CASE("Wronskian values") {
    SUBCASE("closed forms at r = 1/2") {
        const auto w = wronskians(WronskianBasis::F, 0.5);
        CHECK(w[0] == doctest::Approx(0.5));
        CHECK(w[1] == doctest::Approx(0.25));
        CHECK(w[2] == doctest::Approx(0.25));   // 2 r^3
        CHECK(w[3] == doctest::Approx(0.75));   // 12 r^4
    }
    SUBCASE("all seven stay positive across the grid") {
        for (int i = 1; i <= 999; ++i) {
            const auto w = wronskians(WronskianBasis::F, i / 1000.0);
            for (double v : w) CHECK(v > 0);
        }
    }
    SUBCASE("numeric determinants confirm the closed forms") {
        for (double r : {0.3, 0.45, 0.7, 0.85}) {
            const auto wc = wronskians(WronskianBasis::F, r);
            const auto wn = wronskians_numeric(WronskianBasis::F, r);
            for (int k = 0; k < 7; ++k)
                CHECK(wn[k] == doctest::Approx(wc[k]).epsilon(1e-6));
        }
    }
    SUBCASE("derivative identity for the fifth Wronskian") {
        for (int i = 1; i <= 99; ++i) {
            const double r = i / 100.0;
            const double lhs = wronskian4_derivative(r) * std::pow(1 - r * r, 3);
            CHECK(lhs == doctest::Approx(768 * std::pow(r, 4)).epsilon(1e-8));
        }
    }
    SUBCASE("monomial-segment Wronskians are factorial products") {
        const auto w = wronskians(WronskianBasis::G, 0.37, 4);
        CHECK(w[0] == doctest::Approx(1));
        CHECK(w[1] == doctest::Approx(1));
        CHECK(w[2] == doctest::Approx(2));
        CHECK(w[3] == doctest::Approx(12));
        CHECK(w[4] == doctest::Approx(288));
    }
    SUBCASE("final G Wronskian keeps one sign and scales as predicted") {
        for (int m : {3, 4, 5}) {
            double xi_prev = 0;
            for (double r : {0.2, 0.5, 0.8}) {
                const auto w = wronskians(WronskianBasis::G, r, m);
                const double xi = (m % 2 == 0 ? 1 : -1) * w.back() *
                                  std::pow(r * r - 1, m) / r;
                CHECK(xi > 0);
                if (xi_prev != 0)
                    CHECK(xi == doctest::Approx(xi_prev).epsilon(1e-5));
                xi_prev = xi;
            }
        }
    }
}

TEST_CASE("parametric root regions") {
    SUBCASE("the two-zeros-fixed cubic family keeps one root per region") {
        const Rational r1(1, 6), r2(1, 4), r3(1, 3);
        const Rational e1 = r1 + r2 + r3;
        const Rational e2 = r1 * r2 + r1 * r3 + r2 * r3;
        const Rational p3 = r1 * r2 * r3;
        ParametricFamily fam;
        fam.coeffs = {
            RationalPolynomial({-e1}),
            RationalPolynomial({e2 + 2, Rational(-1)}),
            RationalPolynomial({-p3}),
            RationalPolynomial({Rational(-1), Rational(1)}),
        };
        const auto regions = parametric_root_regions(
            fam, 1.0, std::numeric_limits<double>::infinity(), Rational(0),
            Rational(1));
        REQUIRE(regions.size() == 3);
        const double R = to_double(e2 + 2);
        CHECK(regions[0].kappa_hi > 1.0);
        CHECK(regions[0].kappa_hi < R);
        CHECK(regions[1].kappa_hi > R);
        CHECK(std::isinf(regions[2].kappa_hi));
        for (const auto& reg : regions) {
            CHECK(reg.count == 1);
            CHECK(reg.certified);
        }
    }
    SUBCASE("parameter-free family degenerates to one plain count") {
        ParametricFamily fam;
        fam.coeffs = {RationalPolynomial({Rational(1, 8)}),
                      RationalPolynomial({Rational(-3, 4)}),
                      RationalPolynomial({Rational(1)})};  // (r-1/4)(r-1/2)
        const auto regions = parametric_root_regions(fam, -5.0, 5.0, Rational(0),
                                                     Rational(1));
        REQUIRE(regions.size() == 1);
        CHECK(regions[0].count == 2);
        CHECK(regions[0].certified);
    }
    SUBCASE("identically degenerate families are refused") {
        ParametricFamily fam;  // (r - k)^2 has discriminant 0 for every k
        fam.coeffs = {RationalPolynomial({Rational(0), Rational(0), Rational(1)}),
                      RationalPolynomial({Rational(0), Rational(-2)}),
                      RationalPolynomial({Rational(1)})};
        CHECK_THROWS_AS(
            parametric_root_regions(fam, -1.0, 1.0, Rational(0), Rational(1)),
            degenerate_family);
    }
}
