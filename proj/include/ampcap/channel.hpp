#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace ampcap {

// Differential entropy of the standard Gaussian noise, (1/2) log(2 pi e).
inline double gaussian_entropy() {
    return 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e);
}

// Problem instance: dimension n, amplitude A, optional average power P.
// The power constraint exists only for the scalar problem.
struct ChannelConfig {
    int n = 1;
    double amplitude = 1.0;
    std::optional<double> power;

    void validate() const;  // throws std::invalid_argument
};

// Discrete scalar input: strictly ascending mass locations with strictly
// positive probabilities summing to 1 (validated to 1e-12, then renormalized
// exactly).  Symmetry is a property, not a constraint: loaders enforce it at
// the boundary, the zero-search deliberately explores asymmetric inputs.
class DiscreteInput {
public:
    DiscreteInput(std::vector<double> points, std::vector<double> probs);

    static DiscreteInput point_mass(double x);

    // Builds the symmetric input with total pair mass `mass[i]` shared
    // equally between +half_points[i] and -half_points[i]; a zero location
    // keeps its full mass.  half_points must be ascending and >= 0.
    static DiscreteInput symmetric(std::span<const double> half_points,
                                   std::span<const double> mass);

    const std::vector<double>& points() const { return points_; }
    const std::vector<double>& probs() const { return probs_; }
    std::size_t size() const { return points_.size(); }

    double amplitude() const;      // max |x_i|
    double min_gap() const;        // smallest location gap, +inf for k = 1
    double second_moment() const;  // E[X^2]
    bool is_symmetric(double tol = 1e-9) const;

private:
    std::vector<double> points_;
    std::vector<double> probs_;
};

// Radial input for the vector channel: ascending shell radii in [0, inf)
// with positive probabilities summing to 1.
class ShellInput {
public:
    ShellInput(std::vector<double> radii, std::vector<double> probs);

    const std::vector<double>& radii() const { return radii_; }
    const std::vector<double>& probs() const { return probs_; }
    std::size_t size() const { return radii_.size(); }

    double amplitude() const { return radii_.back(); }
    double min_gap() const;

private:
    std::vector<double> radii_;
    std::vector<double> probs_;
};

// Parameters of the tilted output density e^{lambda y^2} f_Y(y) - kappa used
// by the power-constrained analysis.  lambda must stay below 1/2 or the tilt
// outruns the Gaussian tail.
struct TiltedParams {
    double lambda = 0.0;
    double kappa = 0.0;

    void validate() const;
};

// --- scalar channel -------------------------------------------------------

// Output density f_Y(y) = E[phi(y - X)] and its log / derivative.
double output_pdf(const DiscreteInput& input, double y);
double log_output_pdf(const DiscreteInput& input, double y);
double output_pdf_deriv(const DiscreteInput& input, double y);

// Marginal information density i(x; P) = Int phi(y-x) log(1/f_Y(y)) dy - h(Z),
// in nats, by adaptive quadrature.
double marginal_info_density(const DiscreteInput& input, double x,
                             double quad_tol = 1e-10);

// d/dx of the above, holding the input fixed.
double marginal_info_density_deriv(const DiscreteInput& input, double x,
                                   double quad_tol = 1e-10);

// I(X;Y) = sum_i p_i i(x_i; P).
double mutual_information(const DiscreteInput& input, double quad_tol = 1e-10);

// e^{lambda y^2} f_Y(y) - kappa.
double tilted_output(const DiscreteInput& input, const TiltedParams& params,
                     double y);

// --- vector channel (n >= 2) ----------------------------------------------

// Radial output density g_n(x) = E[2 f_{chi2_n}(x | R)] / x^{n/2-1}, x > 0.
double shell_output_pdf(int n, const ShellInput& input, double x);
double log_shell_output_pdf(int n, const ShellInput& input, double x);
double shell_output_pdf_deriv(int n, const ShellInput& input, double x);

// Radial information density i_n(r) = Int f_{chi2_n}(x|r) log(1/g_n(x)) dx.
double shell_info_density(int n, const ShellInput& input, double r,
                          double quad_tol = 1e-10);
double shell_info_density_deriv(int n, const ShellInput& input, double r,
                                double quad_tol = 1e-10);

// I(X;Y) = E[i_n(R)] - nu_n for a radially uniform input with radial law P_R.
double shell_mutual_information(int n, const ShellInput& input,
                                double quad_tol = 1e-10);

}  // namespace ampcap
