#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "ampcap/bounds.hpp"
#include "ampcap/channel.hpp"
#include "ampcap/errors.hpp"
#include "ampcap/zeros.hpp"

using namespace ampcap;
using namespace ampcap::zeros;

namespace {

DiscreteInput equiprobable(std::initializer_list<double> pts) {
    std::vector<double> p(pts);
    return DiscreteInput(p, std::vector<double>(p.size(), 1.0 / p.size()));
}

// brute-force fine-grid crossing count, the oracle for the scanning code
int fine_grid_count(const std::function<double(double)>& f, double lo,
                    double hi, double step) {
    int count = 0;
    double last = f(lo);
    for (double x = lo + step; x <= hi; x += step) {
        const double v = f(x);
        if (last != 0.0 && v != 0.0 && (last < 0.0) != (v < 0.0)) ++count;
        if (v != 0.0) last = v;
    }
    return count;
}

}  // namespace

TEST_CASE("count_sign_changes basics") {
    const auto line = [](double y) { return y; };
    const ZeroCount zc = count_sign_changes(line, -1.0, 1.0, 0.01);
    CHECK(zc.count == 1);
    REQUIRE(zc.zeros.size() == 1);
    CHECK(std::fabs(zc.zeros[0]) < 1e-9);
    CHECK(zc.certified);

    // maximum of the standard normal pdf is ~0.399 < 0.5: no crossing
    const auto under = [](double y) {
        return std::exp(-0.5 * y * y) / std::sqrt(2.0 * std::numbers::pi) - 0.5;
    };
    CHECK(count_sign_changes(under, -5.0, 5.0, 0.01).count == 0);

    // tangential zero is not a sign change
    const auto tangent = [](double y) { return y * y; };
    CHECK(count_sign_changes(tangent, -1.0, 1.0, 0.01).count == 0);

    CHECK_THROWS_AS(count_sign_changes([](double) { return 0.0 / 0.0; }, 0.0,
                                       1.0, 0.1),
                    numerical_error);
}

TEST_CASE("count_sign_changes: shifted output density against a fine grid") {
    const DiscreteInput input = equiprobable({-2.0, 2.0});
    const auto f = [&](double y) { return output_pdf(input, y) - 0.1; };
    const ZeroCount zc = count_sign_changes(f, -5.0, 5.0, 0.01);
    CHECK(zc.count == 4);
    CHECK(zc.count == fine_grid_count(f, -5.0, 5.0, 1e-5));
}

TEST_CASE("count_sign_changes: crowded pair triggers refinement") {
    const auto close_pair = [](double y) { return y * (y - 0.003); };
    const ZeroCount zc = count_sign_changes(close_pair, -1.0, 1.0, 0.01);
    CHECK(zc.count == 2);
    CHECK(zc.grid_step < 0.01);  // refined pass engaged
    CHECK(zc.certified);         // 0.003 > 4 * (0.01 / 16)
}

TEST_CASE("certified counts survive grid halving") {
    const DiscreteInput input = equiprobable({-2.0, -0.3, 1.1, 2.0});
    std::vector<double> levels{0.05, 0.1, 0.15};
    for (double level : levels) {
        const auto f = [&](double y) { return output_pdf(input, y) - level; };
        const ZeroCount zc = count_sign_changes(f, -6.0, 6.0, 0.012);
        if (!zc.certified) continue;
        const ZeroCount half = count_sign_changes(f, -6.0, 6.0, 0.006);
        CHECK(zc.count == half.count);
    }
}

TEST_CASE("count_extreme_points: mixture modality") {
    // the symmetric two-Gaussian mixture turns bimodal once the separation
    // parameter passes 1; the second derivative at 0 is the witness
    const auto second_deriv_at_zero = [](const DiscreteInput& input) {
        const double h = 1e-4;
        return (output_pdf_deriv(input, h) - output_pdf_deriv(input, -h)) /
               (2.0 * h);
    };
    const DiscreteInput narrow = equiprobable({-0.5, 0.5});
    CHECK(second_deriv_at_zero(narrow) < 0.0);
    CHECK(count_extreme_points(narrow).count == 1);

    const DiscreteInput wide = equiprobable({-2.0, 2.0});
    CHECK(second_deriv_at_zero(wide) > 0.0);
    CHECK(count_extreme_points(wide).count == 3);

    CHECK(count_extreme_points(DiscreteInput::point_mass(0.0)).count == 1);

    // an explicit interval overrides the default [-(2A+1), 2A+1]
    const ZeroCount right_lobe =
        count_extreme_points(wide, std::pair{0.5, 5.0});
    CHECK(right_lobe.count == 1);
}

TEST_CASE("extreme points never exceed the oscillation bound") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ud(0.05, 1.0);
    for (int trial = 0; trial < 8; ++trial) {
        const double A = 1.0 + trial;
        std::vector<double> pts;
        std::vector<double> pr;
        const int k = 2 + trial % 4;
        for (int i = 0; i < k; ++i) {
            pts.push_back(-A + 2.0 * A * i / (k - 1.0));
            pr.push_back(ud(rng));
        }
        double s = 0.0;
        for (double p : pr) s += p;
        for (double& p : pr) p /= s;
        const DiscreteInput input(pts, pr);
        const double bound =
            1.0 + bounds::tijdeman_osc_bound_min(A, 2.0 * A + 1.0).value;
        CHECK(count_extreme_points(input).count <= bound);
    }
}

TEST_CASE("zeros of f_Y - kappa stay inside the confinement radius") {
    const DiscreteInput input = equiprobable({-2.0, -1.0, 1.0, 2.0});
    for (double kappa : {0.02, 0.08, 0.2}) {
        const double B = bounds::scalar_zero_radius(2.0, kappa);
        const auto f = [&](double y) { return output_pdf(input, y) - kappa; };
        const ZeroCount wide = count_sign_changes(f, -25.0, 25.0, 0.01);
        const ZeroCount tight = count_sign_changes(f, -B, B, 0.01);
        CHECK(wide.count == tight.count);
        for (double z : wide.zeros) CHECK(std::fabs(z) <= B);
    }
}

TEST_CASE("worst_case_zero_search") {
    const WorstCaseResult r1 = worst_case_zero_search(1.0, 4, 60, 3);
    CHECK(r1.max_count >= 1);

    // determinism under a fixed seed
    const WorstCaseResult r2 = worst_case_zero_search(1.0, 4, 60, 3);
    CHECK(r1.max_count == r2.max_count);
    CHECK(r1.witness.points() == r2.witness.points());
    CHECK(r1.witness.probs() == r2.witness.probs());

    const WorstCaseResult r5 = worst_case_zero_search(5.0, 8, 150, 3);
    const double bound =
        1.0 + bounds::tijdeman_osc_bound_min(5.0, 11.0).value;
    CHECK(r5.max_count <= bound);
    CHECK(r5.max_count >= 3);  // two separated bumps already give 3
}

TEST_CASE("mixture_zero_oracle: single-bump cases") {
    // c above the bump peak: no real zeros; below: exactly two
    const double peak = 1.0;  // weight of the positive component
    CHECK(mixture_zero_oracle(std::array{peak, -1.5}, std::array{0.0, 0.3},
                              std::array{1.0, 2.0}) == 0);
    CHECK(mixture_zero_oracle(std::array{peak, -0.2}, std::array{0.0, 0.3},
                              std::array{1.0, 2.0}) == 2);
}

TEST_CASE("mixture_zero_oracle: random instance matches a fine scan") {
    std::mt19937_64 rng(97);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    std::vector<double> w{-0.25}, m{0.0}, v{1.0};
    for (int i = 0; i < 3; ++i) {
        w.push_back(0.2 + 0.8 * ud(rng));
        m.push_back(0.5 + 3.0 * ud(rng));
        v.push_back(0.45 + 0.1 * i);
    }
    const auto h = [&](double y) {
        double s = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i)
            s += w[i] * std::exp(-0.5 * (y - m[i]) * (y - m[i]) / v[i]);
        return s;
    };
    const int got = mixture_zero_oracle(w, m, v);
    CHECK(got <= 6);
    CHECK(got == fine_grid_count(h, -30.0, 30.0, 1e-4));
}

TEST_CASE("mixture_zero_oracle input validation") {
    CHECK_THROWS_AS(mixture_zero_oracle(std::array{1.0, 1.0},
                                        std::array{0.0, 1.0},
                                        std::array{1.0, 2.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(mixture_zero_oracle(std::array{1.0, -1.0},
                                        std::array{0.0, 1.0},
                                        std::array{1.0, 1.0}),
                    std::invalid_argument);
}

TEST_CASE("mixture_zero_oracle: proof-structure instances stay under 2k") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    for (int k = 1; k <= 6; ++k) {
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> w{-(0.01 + 0.3 * ud(rng))}, m{0.0}, v{1.0};
            for (int i = 0; i < k; ++i) {
                const double u = 0.2 + 3.8 * ud(rng);
                const double eps = 0.01 + 0.5 * (i + ud(rng)) / k;
                w.push_back((0.1 + 0.9 * ud(rng)) *
                            std::exp(-0.5 * (1.0 + eps) * u * u / (2.0 + eps)));
                m.push_back((1.0 + eps) * u / (2.0 + eps));
                v.push_back(1.0 / (2.0 + eps));
            }
            CHECK(mixture_zero_oracle(w, m, v) <= 2 * k);
        }
    }
}

TEST_CASE("sandwich_check: point mass at half peak height") {
    const DiscreteInput delta = DiscreteInput::point_mass(0.0);
    const double kappa = 0.5 * output_pdf(delta, 0.0);
    const SandwichResult res = sandwich_check(delta, kappa, 3.0);
    CHECK(res.zero_count == 2);
    CHECK(res.lower_ok);
    CHECK(res.upper_ok);
}
