#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ampcap/channel.hpp"

namespace ampcap::zeros {

// Result of a sign-change scan.  `certified` is true when every pair of
// adjacent zeros is separated by more than 4 grid steps, so halving the step
// provably cannot reveal or merge crossings between them.
struct ZeroCount {
    int count = 0;
    std::vector<double> zeros;  // refined locations, ascending
    double lo = 0.0;
    double hi = 0.0;
    double grid_step = 0.0;  // finest step used anywhere in the scan
    bool certified = false;
};

// Scans f on a uniform grid over [lo, hi], brackets every sign change and
// refines it by bisection to width 1e-12.  Tangential (non-crossing) zeros
// are not counted; that matches sign-change semantics.  When two crossings
// land within 4 steps of each other the neighbourhood is rescanned once at
// step/16; if they still crowd, the count is returned uncertified.
// Throws numerical_error on a non-finite function value (the offending
// abscissa is reported).
ZeroCount count_sign_changes(const std::function<double(double)>& f, double lo,
                             double hi, double step);

// Zeros of f'_Y, i.e. extreme points of the output density.  The default
// interval is [-(2A+1), 2A+1] with A = max |x_i|; the default step is
// min(0.01, gap/20) with gap the smallest distance between mass points.
ZeroCount count_extreme_points(
    const DiscreteInput& input,
    std::optional<std::pair<double, double>> interval = std::nullopt);

struct WorstCaseResult {
    int max_count = 0;
    DiscreteInput witness;
    bool certified = false;  // certification of the best count's scan
    std::uint64_t seed = 0;
    int budget = 0;
};

// Randomized search for the input maximizing count_extreme_points: equispaced
// grids of up to k_max points with random probabilities, random jittered
// supports, then local hill climbing around the best candidates.  `budget`
// caps the number of count evaluations.  Deterministic for a fixed seed.
WorstCaseResult worst_case_zero_search(double A, int k_max, int budget,
                                       std::uint64_t seed = 0);

// Counts the real zeros of sum_i w_i exp(-(y - m_i)^2 / (2 v_i)) where
// exactly one weight is negative and the variances v_i are pairwise distinct.
// Such a combination of k+1 Gaussians has at most 2k zeros; exceeding that is
// a theory_violation_error (it indicates a numerical bug, never a property of
// the input).
int mixture_zero_oracle(std::span<const double> weights,
                        std::span<const double> means,
                        std::span<const double> variances);

struct SandwichResult {
    int zero_count = 0;  // N = zeros of f_Y - kappa on [-radius, radius]
    bool lower_ok = false;  // N/2 <= |supp|
    bool upper_ok = false;  // |supp| <= N
};

// The factor-of-two sandwich: for a capacity-achieving input with threshold
// kappa_1 = e^{-C - h(Z)}, half the zero count lower-bounds and the full
// count upper-bounds the support size.
SandwichResult sandwich_check(const DiscreteInput& input, double kappa,
                              double radius);

}  // namespace ampcap::zeros
