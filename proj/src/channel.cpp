#include "ampcap/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ampcap/quadrature.hpp"
#include "ampcap/specfun.hpp"

namespace ampcap {
namespace {

constexpr double kProbSumTol = 1e-12;

// Gaussian weight beyond 12 sigma is ~2e-32; against the at-most-quadratic
// growth of -log f_Y the truncated tail is below 1e-28.
constexpr double kGaussTail = 12.0;

double log_sum_exp(const std::vector<double>& terms) {
    double m = -std::numeric_limits<double>::infinity();
    for (double t : terms) m = std::max(m, t);
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double t : terms) s += std::exp(t - m);
    return m + std::log(s);
}

void validate_weights(const std::vector<double>& probs, const char* what) {
    if (probs.empty())
        throw std::invalid_argument(std::string(what) + ": empty support");
    double sum = 0.0;
    for (double p : probs) {
        if (!(p > 0.0))
            throw std::invalid_argument(std::string(what) +
                                        ": probabilities must be positive");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > kProbSumTol)
        throw std::invalid_argument(std::string(what) +
                                    ": probabilities sum to " +
                                    std::to_string(sum) + ", not 1");
}

// The deviation tolerated above is formatting noise; renormalizing makes the
// stored weights an exact density for the quadratures downstream.

void normalize(std::vector<double>& probs) {
    double sum = 0.0;
    for (double p : probs) sum += p;
    for (double& p : probs) p /= sum;
}

double require_positive_x(double x, const char* what) {
    if (!(x > 0.0))
        throw std::domain_error(std::string(what) + ": requires x > 0");
    return x;
}

}  // namespace

void ChannelConfig::validate() const {
    if (n < 1) throw std::invalid_argument("ChannelConfig: n must be >= 1");
    if (!(amplitude > 0.0))
        throw std::invalid_argument("ChannelConfig: amplitude must be > 0");
    if (power) {
        if (!(*power > 0.0))
            throw std::invalid_argument("ChannelConfig: power must be > 0");
        if (n != 1)
            throw std::invalid_argument(
                "ChannelConfig: the power constraint is scalar-only (n = 1)");
    }
}

DiscreteInput::DiscreteInput(std::vector<double> points,
                             std::vector<double> probs)
    : points_(std::move(points)), probs_(std::move(probs)) {
    if (points_.size() != probs_.size())
        throw std::invalid_argument("DiscreteInput: size mismatch");
    validate_weights(probs_, "DiscreteInput");
    for (std::size_t i = 0; i + 1 < points_.size(); ++i)
        if (!(points_[i] < points_[i + 1]))
            throw std::invalid_argument(
                "DiscreteInput: points must be strictly ascending");
    for (double x : points_)
        if (!std::isfinite(x))
            throw std::invalid_argument("DiscreteInput: non-finite point");
    normalize(probs_);
}

DiscreteInput DiscreteInput::point_mass(double x) {
    return DiscreteInput({x}, {1.0});
}

DiscreteInput DiscreteInput::symmetric(std::span<const double> half_points,
                                       std::span<const double> mass) {
    if (half_points.size() != mass.size() || half_points.empty())
        throw std::invalid_argument("DiscreteInput::symmetric: size mismatch");
    std::vector<double> pts, pr;
    // negative mirror, descending half reversed
    for (std::size_t i = half_points.size(); i-- > 0;) {
        if (half_points[i] > 0.0) {
            pts.push_back(-half_points[i]);
            pr.push_back(0.5 * mass[i]);
        }
    }
    for (std::size_t i = 0; i < half_points.size(); ++i) {
        if (half_points[i] == 0.0) {
            pts.push_back(0.0);
            pr.push_back(mass[i]);
        } else {
            pts.push_back(half_points[i]);
            pr.push_back(0.5 * mass[i]);
        }
    }
    return DiscreteInput(std::move(pts), std::move(pr));
}

double DiscreteInput::amplitude() const {
    return std::max(std::fabs(points_.front()), std::fabs(points_.back()));
}

double DiscreteInput::min_gap() const {
    if (points_.size() < 2) return std::numeric_limits<double>::infinity();
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < points_.size(); ++i)
        gap = std::min(gap, points_[i + 1] - points_[i]);
    return gap;
}

double DiscreteInput::second_moment() const {
    double m = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i)
        m += probs_[i] * points_[i] * points_[i];
    return m;
}

bool DiscreteInput::is_symmetric(double tol) const {
    const std::size_t k = points_.size();
    const double scale = std::max(1.0, amplitude());
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = k - 1 - i;
        if (std::fabs(points_[i] + points_[j]) > tol * scale) return false;
        if (std::fabs(probs_[i] - probs_[j]) > tol) return false;
    }
    return true;
}

ShellInput::ShellInput(std::vector<double> radii, std::vector<double> probs)
    : radii_(std::move(radii)), probs_(std::move(probs)) {
    if (radii_.size() != probs_.size())
        throw std::invalid_argument("ShellInput: size mismatch");
    validate_weights(probs_, "ShellInput");
    if (!(radii_.front() >= 0.0))
        throw std::invalid_argument("ShellInput: radii must be >= 0");
    for (std::size_t i = 0; i + 1 < radii_.size(); ++i)
        if (!(radii_[i] < radii_[i + 1]))
            throw std::invalid_argument(
                "ShellInput: radii must be strictly ascending");
    normalize(probs_);
}

double ShellInput::min_gap() const {
    if (radii_.size() < 2) return std::numeric_limits<double>::infinity();
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < radii_.size(); ++i)
        gap = std::min(gap, radii_[i + 1] - radii_[i]);
    return gap;
}

void TiltedParams::validate() const {
    if (!(lambda >= 0.0 && lambda < 0.5))
        throw std::invalid_argument("TiltedParams: lambda must be in [0, 1/2)");
    if (!(kappa > 0.0))
        throw std::invalid_argument("TiltedParams: kappa must be > 0");
}

// --- scalar channel -------------------------------------------------------

double log_output_pdf(const DiscreteInput& input, double y) {
    const auto& xs = input.points();
    const auto& ps = input.probs();
    std::vector<double> terms(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double d = y - xs[i];
        terms[i] = std::log(ps[i]) - 0.5 * d * d;
    }
    return log_sum_exp(terms) - 0.5 * std::log(2.0 * std::numbers::pi);
}

double output_pdf(const DiscreteInput& input, double y) {
    return std::exp(log_output_pdf(input, y));
}

double output_pdf_deriv(const DiscreteInput& input, double y) {
    const auto& xs = input.points();
    const auto& ps = input.probs();
    double s = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double d = y - xs[i];
        s += ps[i] * (xs[i] - y) * std::exp(-0.5 * d * d);
    }
    return s / std::sqrt(2.0 * std::numbers::pi);
}

double marginal_info_density(const DiscreteInput& input, double x,
                             double quad_tol) {
    const double c = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    const auto f = [&](double t) {
        return -c * std::exp(-0.5 * t * t) * log_output_pdf(input, x + t);
    };
    return integrate(f, -kGaussTail, kGaussTail, quad_tol) - gaussian_entropy();
}

double marginal_info_density_deriv(const DiscreteInput& input, double x,
                                   double quad_tol) {
    const double c = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    const auto f = [&](double t) {
        return -c * t * std::exp(-0.5 * t * t) * log_output_pdf(input, x + t);
    };
    return integrate(f, -kGaussTail, kGaussTail, quad_tol);
}

double mutual_information(const DiscreteInput& input, double quad_tol) {
    const auto& xs = input.points();
    const auto& ps = input.probs();
    double info = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        info += ps[i] * marginal_info_density(input, xs[i], quad_tol);
    if (info < 0.0 && info > -16.0 * quad_tol) info = 0.0;  // quadrature noise
    return info;
}

double tilted_output(const DiscreteInput& input, const TiltedParams& params,
                     double y) {
    params.validate();
    return std::exp(params.lambda * y * y + log_output_pdf(input, y)) -
           params.kappa;
}

// --- vector channel -------------------------------------------------------

namespace {

void require_vector_dim(int n, const char* what) {
    if (n < 2)
        throw std::domain_error(std::string(what) +
                                ": shell operations require n >= 2 "
                                "(the scalar path handles n = 1)");
}

// log of one mixture component of g_n:  2 f_{chi2_n}(x | r) / x^{n/2-1}
//   = exp(-(x + r^2)/2) * I_nu(r sqrt(x)) / (r sqrt(x))^nu,   nu = n/2 - 1.
double log_g_component(double nu, double r, double x) {
    return -0.5 * (x + r * r) +
           specfun::log_bessel_i_over_pow(nu, r * std::sqrt(x));
}

}  // namespace

double log_shell_output_pdf(int n, const ShellInput& input, double x) {
    require_vector_dim(n, "shell_output_pdf");
    require_positive_x(x, "shell_output_pdf");
    const double nu = 0.5 * n - 1.0;
    const auto& rs = input.radii();
    const auto& ws = input.probs();
    std::vector<double> terms(rs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
        terms[i] = std::log(ws[i]) + log_g_component(nu, rs[i], x);
    return log_sum_exp(terms);
}

double shell_output_pdf(int n, const ShellInput& input, double x) {
    return std::exp(log_shell_output_pdf(n, input, x));
}

double shell_output_pdf_deriv(int n, const ShellInput& input, double x) {
    require_vector_dim(n, "shell_output_pdf_deriv");
    require_positive_x(x, "shell_output_pdf_deriv");
    const double nu = 0.5 * n - 1.0;
    const auto& rs = input.radii();
    const auto& ws = input.probs();
    const double sx = std::sqrt(x);
    double s = 0.0;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const double r = rs[i];
        const double z = r * sx;
        const double e_nu = std::exp(specfun::log_bessel_i_over_pow(nu, z));
        const double e_nu1 =
            std::exp(specfun::log_bessel_i_over_pow(nu + 1.0, z));
        s += ws[i] * std::exp(-0.5 * (x + r * r)) * (r * r * e_nu1 - e_nu);
    }
    return 0.5 * s;
}

// Radial integrals are computed in the t = sqrt(x) variable: the substitution
// turns the x^{n/2-1} endpoint factor into the analytic t^{n-1}, so the
// adaptive panels converge spectrally for odd n too.
double shell_info_density(int n, const ShellInput& input, double r,
                          double quad_tol) {
    require_vector_dim(n, "shell_info_density");
    if (!(r >= 0.0))
        throw std::domain_error("shell_info_density: requires r >= 0");
    const auto f = [&](double t) {
        if (t <= 0.0) return 0.0;
        const double x = t * t;
        return -2.0 * t * specfun::noncentral_chi2_pdf(n, r, x) *
               log_shell_output_pdf(n, input, x);
    };
    const double t_hi = std::max(r, input.amplitude()) + kGaussTail;
    return integrate(f, 0.0, t_hi, quad_tol, 8);
}

double shell_info_density_deriv(int n, const ShellInput& input, double r,
                                double quad_tol) {
    require_vector_dim(n, "shell_info_density_deriv");
    if (!(r >= 0.0))
        throw std::domain_error("shell_info_density_deriv: requires r >= 0");
    if (r == 0.0) return 0.0;  // radial derivative vanishes at the origin
    const double nu = 0.5 * n - 1.0;
    const auto df_dr = [&](double x) {
        // d/dr of f_{chi2_n}(x|r) = r/2 x^nu e^{-(x+r^2)/2}
        //                           (x E_{nu+1}(r sqrt x) - E_nu(r sqrt x))
        const double z = r * std::sqrt(x);
        const double e_nu = std::exp(specfun::log_bessel_i_over_pow(nu, z));
        const double e_nu1 =
            std::exp(specfun::log_bessel_i_over_pow(nu + 1.0, z));
        return 0.5 * r * std::pow(x, nu) * std::exp(-0.5 * (x + r * r)) *
               (x * e_nu1 - e_nu);
    };
    const auto f = [&](double t) {
        if (t <= 0.0) return 0.0;
        const double x = t * t;
        return -2.0 * t * df_dr(x) * log_shell_output_pdf(n, input, x);
    };
    const double t_hi = std::max(r, input.amplitude()) + kGaussTail;
    return integrate(f, 0.0, t_hi, quad_tol, 8);
}

double shell_mutual_information(int n, const ShellInput& input,
                                double quad_tol) {
    require_vector_dim(n, "shell_mutual_information");
    const auto& rs = input.radii();
    const auto& ws = input.probs();
    double mean_info = 0.0;
    for (std::size_t i = 0; i < rs.size(); ++i)
        mean_info += ws[i] * shell_info_density(n, input, rs[i], quad_tol);
    double info = mean_info - specfun::nu_n(n);
    if (info < 0.0 && info > -16.0 * quad_tol) info = 0.0;
    return info;
}

}  // namespace ampcap
