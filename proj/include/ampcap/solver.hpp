#pragma once

#include <cstdint>
#include <variant>

#include "ampcap/channel.hpp"

namespace ampcap::solver {

struct SolveOptions {
    double tol = 1e-6;          // KKT residual target (both residuals)
    std::uint64_t seed = 0;     // drives the multi-start jitter
    int starts = 8;             // multi-start count per support size
    int max_iterations = 2000;  // projected-gradient iterations per start
};

struct KktResiduals {
    double equality = 0.0;    // max |i(x_j) - C - penalty(x_j)| over support
    double inequality = 0.0;  // max positive excess over the verification grid
    double inequality_argmax = 0.0;  // where the worst excess sits
};

struct SolveResult {
    std::variant<DiscreteInput, ShellInput> input{
        DiscreteInput::point_mass(0.0)};
    double capacity = 0.0;  // nats
    double kkt_equality_residual = 0.0;
    double kkt_inequality_residual = 0.0;
    double lambda = 0.0;  // power multiplier, 0 when the constraint is absent
    long iterations = 0;  // projected-gradient iterations, all starts summed
    int support_size = 0;
    double tol = 0.0;
    std::uint64_t seed = 0;

    const DiscreteInput& scalar_input() const {
        return std::get<DiscreteInput>(input);
    }
    const ShellInput& shell_input() const { return std::get<ShellInput>(input); }
};

// Capacity-achieving distribution of the amplitude-constrained scalar
// channel, by support escalation: the smallest symmetric support size whose
// optimized input passes the equality/inequality optimality conditions at
// `tol` wins.  Escalating past the proven support bound raises
// theory_violation_error; optimizer stagnation raises convergence_error.
SolveResult solve_scalar(double A, const SolveOptions& opts = {});

// Adds the average-power constraint E[X^2] <= P: if the unconstrained
// optimum already satisfies it the multiplier is 0, otherwise an outer
// bisection on lambda drives the second moment to P.
SolveResult solve_scalar_power(double A, double P,
                               const SolveOptions& opts = {});

// Shell distribution of the amplitude-constrained vector channel, n >= 2.
SolveResult solve_vector(int n, double A, const SolveOptions& opts = {});

// Residuals of an arbitrary witness against a capacity estimate.  The
// penalty is lambda (x^2 - P) when config carries a power constraint and the
// radial offset nu_n for shell inputs.  grid_step controls the inequality
// verification grid on [-A, A] (or [0, A]); detected near-violations are
// re-examined on a locally refined grid.
KktResiduals verify_kkt(const DiscreteInput& input, const ChannelConfig& config,
                        double capacity, double lambda, double grid_step,
                        double quad_tol = 1e-9);
KktResiduals verify_kkt(const ShellInput& input, const ChannelConfig& config,
                        double capacity, double grid_step,
                        double quad_tol = 1e-9);

}  // namespace ampcap::solver
