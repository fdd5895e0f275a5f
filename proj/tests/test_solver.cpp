#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ampcap/bounds.hpp"
#include "ampcap/channel.hpp"
#include "ampcap/solver.hpp"
#include "ampcap/zeros.hpp"

using namespace ampcap;
using namespace ampcap::solver;

namespace {

DiscreteInput equiprobable(std::initializer_list<double> pts) {
    std::vector<double> p(pts);
    return DiscreteInput(p, std::vector<double>(p.size(), 1.0 / p.size()));
}

}  // namespace

TEST_CASE("verify_kkt certifies the binary optimum at A=1 and rejects it at A=3") {
    const ChannelConfig at1{1, 1.0, std::nullopt};
    const DiscreteInput binary1 = equiprobable({-1.0, 1.0});
    const double c1 = mutual_information(binary1);
    const KktResiduals good = verify_kkt(binary1, at1, c1, 0.0, 1e-3);
    CHECK(good.equality <= 1e-6);
    CHECK(good.inequality <= 1e-6);

    const ChannelConfig at3{1, 3.0, std::nullopt};
    const DiscreteInput binary3 = equiprobable({-3.0, 3.0});
    const double c3 = mutual_information(binary3);
    const KktResiduals bad = verify_kkt(binary3, at3, c3, 0.0, 1e-3);
    CHECK(bad.inequality > 1e-3);  // strictly suboptimal beyond ~1.665
}

TEST_CASE("verify_kkt: point mass at zero against zero capacity") {
    const ChannelConfig config{1, 1.0, std::nullopt};
    const KktResiduals res =
        verify_kkt(DiscreteInput::point_mass(0.0), config, 0.0, 0.0, 1e-3);
    CHECK(res.equality <= 1e-8);
    CHECK(res.inequality > 0.0);  // i(x) > 0 away from the origin
}

TEST_CASE("solve_scalar: binary regime") {
    for (double A : {0.1, 1.0}) {
        const SolveResult res = solve_scalar(A);
        const auto& input = res.scalar_input();
        REQUIRE(res.support_size == 2);
        CHECK(std::fabs(input.points()[0] + A) < 1e-4);
        CHECK(std::fabs(input.points()[1] - A) < 1e-4);
        CHECK(std::fabs(input.probs()[0] - 0.5) < 1e-6);
        CHECK(res.kkt_equality_residual <= 1e-6);
        CHECK(res.kkt_inequality_residual <= 1e-6);
        CHECK(res.capacity ==
              doctest::Approx(mutual_information(input)).epsilon(1e-8));
    }
}

TEST_CASE("solve_scalar: ternary regime and capacity bracketing") {
    const SolveResult res = solve_scalar(2.0);
    const auto& input = res.scalar_input();
    REQUIRE(res.support_size == 3);
    CHECK(std::fabs(input.points()[0] + 2.0) < 1e-3);
    CHECK(std::fabs(input.points()[1]) < 1e-3);
    CHECK(std::fabs(input.points()[2] - 2.0) < 1e-3);
    CHECK(res.kkt_equality_residual <= 1e-6);
    CHECK(res.kkt_inequality_residual <= 1e-6);

    const double lo =
        0.5 * std::log1p(2.0 * 4.0 / (std::numbers::pi * std::numbers::e));
    const double hi = 0.5 * std::log1p(4.0);
    CHECK(res.capacity >= lo - 1e-8);
    CHECK(res.capacity <= hi + 1e-8);

    // kappa_1 from the solved capacity lands inside its interval
    CHECK_NOTHROW(bounds::kappa1_point(2.0, res.capacity));
}

TEST_CASE("solve_scalar: support bounds and the factor-of-two sandwich") {
    const SolveResult res = solve_scalar(1.0);
    CHECK(res.support_size <= bounds::scalar_upper_bound(1.0));
    CHECK(res.support_size >=
          std::ceil(bounds::scalar_lower_bound(1.0) - 1e-12));
    const double kappa = std::exp(-res.capacity - gaussian_entropy());
    const auto sandwich =
        zeros::sandwich_check(res.scalar_input(), kappa, 3.0);
    CHECK(sandwich.lower_ok);
    CHECK(sandwich.upper_ok);
}

TEST_CASE("solve_scalar: capacity is nondecreasing in A") {
    double prev = -1.0;
    for (double A : {0.5, 1.0, 2.0, 4.0}) {
        const double c = solve_scalar(A).capacity;
        CHECK(c >= prev - 1e-9);
        prev = c;
    }
}

TEST_CASE("solve_scalar_power: inactive constraint returns the plain optimum") {
    const SolveResult plain = solve_scalar(1.0);
    const SolveResult power = solve_scalar_power(1.0, 2.0);
    CHECK(power.lambda == 0.0);
    REQUIRE(power.support_size == plain.support_size);
    for (int i = 0; i < plain.support_size; ++i) {
        CHECK(std::fabs(power.scalar_input().points()[i] -
                        plain.scalar_input().points()[i]) < 1e-6);
        CHECK(std::fabs(power.scalar_input().probs()[i] -
                        plain.scalar_input().probs()[i]) < 1e-6);
    }
}

TEST_CASE("solve_scalar_power: active constraint pins the moment") {
    const SolveResult res = solve_scalar_power(2.0, 1.0);
    const double moment = res.scalar_input().second_moment();
    CHECK(std::fabs(moment - 1.0) < 1e-5);
    CHECK(res.lambda > 0.0);
    CHECK(res.lambda <= bounds::lambda_bound(2.0, 1.0) + 1e-12);
    CHECK(std::fabs(res.lambda * (1.0 - moment)) <= 1e-6);
    CHECK(res.kkt_equality_residual <= 1e-6);
    CHECK(res.kkt_inequality_residual <= 1e-6);
    CHECK(res.support_size <= bounds::power_upper_bound(2.0, 1.0));
}

TEST_CASE("solve_vector: single shell at small amplitude") {
    const SolveResult res = solve_vector(2, 0.5, SolveOptions{1e-5});
    REQUIRE(res.support_size == 1);
    CHECK(res.shell_input().radii()[0] == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(res.kkt_equality_residual <= 1e-5);
    CHECK(res.kkt_inequality_residual <= 1e-5);
    CHECK(res.capacity <= std::log1p(0.25) + 1e-9);  // (n/2) log(1 + A^2)
    CHECK(res.support_size <= bounds::vector_upper_bound(2, 1.0));
}

TEST_CASE("solve_vector: escalation finds a second shell") {
    const SolveResult res = solve_vector(2, 3.0, SolveOptions{1e-5});
    CHECK(res.support_size >= 2);
    CHECK(res.kkt_equality_residual <= 1e-5);
    CHECK(res.kkt_inequality_residual <= 1e-5);
    CHECK(res.capacity <= std::log1p(9.0) + 1e-9);
}
