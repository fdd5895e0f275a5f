#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ampcap/bounds.hpp"
#include "ampcap/errors.hpp"
#include "ampcap/specfun.hpp"

using namespace ampcap;
using namespace ampcap::bounds;

namespace {
constexpr double kE = std::numbers::e;
constexpr double kPi = std::numbers::pi;
}  // namespace

TEST_CASE("scalar support-size bounds, pinned") {
    // independently evaluated decimal expansions of the exact expressions
    CHECK(scalar_upper_bound(1.0) ==
          doctest::Approx(66.984613957959707).epsilon(1e-12));
    CHECK(scalar_upper_bound(2.0) ==
          doctest::Approx(204.66233971111076).epsilon(1e-12));
    CHECK(scalar_upper_bound(3.5) ==
          doctest::Approx(558.76716864208301).epsilon(1e-12));
    CHECK_THROWS_AS(scalar_upper_bound(0.99), std::domain_error);

    CHECK(scalar_lower_bound(1e-9) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(scalar_lower_bound(1.0) ==
          doctest::Approx(1.1109452399183664).epsilon(1e-12));
    CHECK(scalar_lower_bound(10.0) ==
          doctest::Approx(4.9416528216506331).epsilon(1e-12));

    // monotone increasing upper bound (positive coefficients)
    double prev = 0.0;
    for (double A = 1.0; A <= 10.0; A += 0.5) {
        const double b = scalar_upper_bound(A);
        CHECK(b > prev);
        CHECK(scalar_lower_bound(A) <= b);
        prev = b;
    }
}

TEST_CASE("kappa1 interval and point") {
    const Interval iv = kappa1_interval(1.0);
    CHECK(iv.lo == doctest::Approx(0.17109914015610827).epsilon(1e-12));
    CHECK(iv.hi == doctest::Approx(0.21780616705907454).epsilon(1e-12));

    // zero-amplitude limit pins kappa_1 at e^{-h(Z)}
    const double point = kappa1_point(1e-9, 0.0);
    CHECK(point == doctest::Approx(1.0 / std::sqrt(2.0 * kPi * kE))
                       .epsilon(1e-12));

    // a capacity estimate above the ceiling is flagged
    CHECK_THROWS_AS(kappa1_point(1.0, 0.9), theory_violation_error);
}

TEST_CASE("scalar zero radius") {
    CHECK(scalar_zero_radius(1.0, 0.1) ==
          doctest::Approx(2.6635182955347218).epsilon(1e-12));
    CHECK(scalar_zero_radius(2.0, 1.0 / std::sqrt(2.0 * kPi)) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(scalar_zero_radius(1.0, 0.9), std::domain_error);
    CHECK_THROWS_AS(scalar_zero_radius(1.0, 0.0), std::domain_error);

    // with any capacity-consistent kappa_1 the radius stays below 2A + 1
    for (double A = 1.0; A <= 8.0; A += 0.5) {
        const double kappa = kappa1_interval(A).lo;
        CHECK(scalar_zero_radius(A, kappa) <= scalar_zero_radius_loose(A));
    }
}

TEST_CASE("oscillation bound: pinned value and a second evaluation path") {
    CHECK(tijdeman_osc_bound(1.0, 3.0, std::sqrt(kE)) ==
          doctest::Approx(65.984613957959707).epsilon(1e-12));
    // adding the crossing-count offset of 1 reproduces the quadratic bound
    CHECK(1.0 + tijdeman_osc_bound(1.0, 3.0, std::sqrt(kE)) ==
          doctest::Approx(scalar_upper_bound(1.0)).epsilon(1e-12));

    // independent route: the log-ratio of the disc maxima with B = (A+R)s + A
    for (auto [A, R] : {std::pair{2.0, 5.0}, std::pair{1.0, 3.0},
                        std::pair{3.0, 7.0}}) {
        const double s = std::sqrt(kE);
        const double B = (A + R) * s + A;
        const double log_hi = std::log(A + B) + 0.5 * B * B;
        const double log_lo = std::log(A) - 2.0 * A * A;
        const double via_maxima = (log_hi - log_lo) / std::log(s);
        CHECK(tijdeman_osc_bound(A, R, s) ==
              doctest::Approx(via_maxima).epsilon(1e-11));
    }
}

TEST_CASE("oscillation bound minimization dominates the fixed choice") {
    for (double A : {1.0, 2.0, 4.0, 8.0}) {
        for (double R : {2.0 * A + 1.0, 3.0 * A}) {
            const TijdemanBound tb = tijdeman_osc_bound_min(A, R);
            CHECK(tb.value <=
                  tijdeman_osc_bound(A, R, std::sqrt(kE)) + 1e-9);
            CHECK(tb.s > 1.0);
            // the reported s actually achieves the reported value
            CHECK(tijdeman_osc_bound(A, R, tb.s) ==
                  doctest::Approx(tb.value).epsilon(1e-12));
        }
    }
}

TEST_CASE("quadratic bound dominates 1 + exact oscillation bound at s=sqrt(e)") {
    for (double A = 1.0; A <= 12.0; A += 0.25) {
        const double exact =
            1.0 + tijdeman_osc_bound(A, 2.0 * A + 1.0, std::sqrt(kE));
        CHECK(scalar_upper_bound(A) >= exact - 1e-9);
    }
}

TEST_CASE("vector bounds, pinned") {
    CHECK(vector_upper_bound(2, 1.0) ==
          doctest::Approx(76.834555321398344).epsilon(1e-12));
    const double an2 = 4.0 + 4.0 * kE + std::sqrt(8.0 * kE + 4.0);
    CHECK(an2 == doctest::Approx(19.947204040460677).epsilon(1e-12));
    const double v31 = vector_upper_bound(3, 1.0);
    CHECK(v31 == doctest::Approx(107.65507930365291).epsilon(1e-12));
    CHECK(std::isfinite(v31));
    CHECK_THROWS_AS(vector_upper_bound(1, 1.0), std::domain_error);

    CHECK(vector_zero_radius(2, 1.0, specfun::gamma_n(2)) ==
          doctest::Approx(4.0).epsilon(1e-12));
    // n = 2, zero-capacity limit kappa_2 = e^{-nu_2}
    const double b = vector_zero_radius(2, 1.0, std::exp(-specfun::nu_n(2)));
    const double want = std::pow(1.0 + std::sqrt(1.0 + 2.0), 2.0);
    CHECK(b == doctest::Approx(want).epsilon(1e-12));
    CHECK_THROWS_AS(vector_zero_radius(2, 1.0, 1.0 + 1e-6), std::domain_error);
}

TEST_CASE("power-constrained bounds, pinned") {
    CHECK(lambda_bound(2.0, 1.0) ==
          doctest::Approx(0.34657359027997264).epsilon(1e-12));
    CHECK(lambda_bound(1.0, 2.0) == 0.0);
    CHECK(lambda_bound(2.0, 1e-6) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(lambda_bound(2.0, 1.0) < 0.5);

    CHECK(power_amplitude(2.0, 1.0) ==
          doctest::Approx(6.5177827065418589).epsilon(1e-12));
    CHECK(power_amplitude(1.0, 2.0) == 1.0);

    // inactive power constraint reduces every constant to the scalar ones
    CHECK(power_upper_bound(1.0, 2.0) ==
          doctest::Approx(scalar_upper_bound(1.0)).epsilon(1e-12));
    CHECK(power_upper_bound(2.0, 1.0) ==
          doctest::Approx(2815.7309392698050).epsilon(1e-11));

    CHECK(power_lower_bound(3.0, 1.0) ==
          doctest::Approx(1.3048363798928316).epsilon(1e-12));
    CHECK(power_lower_bound(1.0, 0.1) ==
          doctest::Approx(1.0345336136777688).epsilon(1e-12));
}

TEST_CASE("reduction consistency over a parameter grid") {
    for (double A = 1.0; A <= 6.0; A += 0.5) {
        const double P_inactive = A * A * 1.5;
        CHECK(std::fabs(power_upper_bound(A, P_inactive) -
                        scalar_upper_bound(A)) < 1e-9);
        CHECK(std::fabs(power_lower_bound(A, A * A / 3.0 + 0.1) -
                        scalar_lower_bound(A)) < 1e-12);
    }
}

TEST_CASE("power zero radius") {
    // lambda = 0 reduces to the scalar radius
    for (double kappa : {0.05, 0.2, 0.39}) {
        CHECK(power_zero_radius(2.0, 8.0, 0.0, kappa) ==
              doctest::Approx(scalar_zero_radius(2.0, kappa)).epsilon(1e-12));
    }
    const double A = 2.0, P = 1.0;
    const double lam = lambda_bound(A, P);
    const double kappa_floor =
        std::exp(lam * (P + 1.0)) / std::sqrt(2.0 * kPi * kE * (1.0 + P));
    const double radius = power_zero_radius(A, P, lam, kappa_floor);
    CHECK(radius < power_zero_radius_loose(A, P));
    CHECK(power_zero_radius_loose(A, P) ==
          doctest::Approx(14.035565413083718).epsilon(1e-12));
    CHECK(power_zero_radius_loose(3.0, 9.5) ==
          doctest::Approx(7.0).epsilon(1e-12));
    CHECK_THROWS_AS(power_zero_radius(2.0, 1.0, 0.5, 0.1), std::domain_error);
}

TEST_CASE("bound reports carry the full constant map") {
    const auto scalar = make_bound_report(ChannelConfig{1, 1.5, std::nullopt});
    CHECK(scalar.constants.count("a2") == 1);
    CHECK(scalar.constants.count("a1") == 1);
    CHECK(scalar.constants.count("a0") == 1);
    CHECK(scalar.constants.count("kappa") == 1);
    CHECK(scalar.constants.count("B") == 1);
    CHECK(scalar.constants.count("s_star") == 1);
    CHECK(scalar.lower >= 1.0);
    CHECK(scalar.lower <= scalar.upper);
    CHECK(scalar.zero_radius >= scalar.config.amplitude);

    const auto vec = make_bound_report(ChannelConfig{3, 2.0, std::nullopt});
    for (const char* key : {"an2", "an1", "an0", "nun", "gamman"})
        CHECK(vec.constants.count(key) == 1);
    CHECK(vec.lower >= 1.0);
    CHECK(vec.zero_radius >= vec.config.amplitude);

    const auto pow = make_bound_report(ChannelConfig{1, 2.0, 1.0});
    for (const char* key : {"aP2", "aP1", "aP0", "lambdaP", "AP"})
        CHECK(pow.constants.count(key) == 1);
}
