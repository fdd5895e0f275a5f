#include "ampcap/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ampcap/errors.hpp"
#include "ampcap/specfun.hpp"

namespace ampcap::bounds {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

double sqrt_e() { return std::sqrt(kE); }

void require_amplitude_ge_1(double A, const char* what) {
    if (!(A >= 1.0))
        throw std::domain_error(std::string(what) +
                                ": requires A >= 1 (small amplitudes are the "
                                "known binary regime)");
}

void require_positive(double v, const char* what, const char* name) {
    if (!(v > 0.0))
        throw std::domain_error(std::string(what) + ": requires " + name +
                                " > 0");
}

}  // namespace

double scalar_upper_bound(double A) {
    require_amplitude_ge_1(A, "scalar_upper_bound");
    const double a2 = 9.0 * kE + 6.0 * sqrt_e() + 5.0;
    const double a1 = 6.0 * kE + 2.0 * sqrt_e();
    const double a0 = kE + 2.0 * std::log(4.0 * sqrt_e() + 2.0) + 1.0;
    return a2 * A * A + a1 * A + a0;
}

double scalar_lower_bound(double A) {
    require_positive(A, "scalar_lower_bound", "A");
    return std::sqrt(1.0 + 2.0 * A * A / (kPi * kE));
}

Interval kappa1_interval(double A) {
    require_positive(A, "kappa1_interval", "A");
    const double lo = 1.0 / std::sqrt(2.0 * kPi * kE * (1.0 + A * A));
    const double hi = 1.0 / std::sqrt(2.0 * kPi * kE + 4.0 * A * A);
    return {lo, hi};
}

double kappa1_point(double A, double capacity) {
    require_positive(A, "kappa1_point", "A");
    if (!(capacity >= 0.0))
        throw std::domain_error("kappa1_point: requires capacity >= 0");
    const double point = std::exp(-capacity - gaussian_entropy());
    const Interval iv = kappa1_interval(A);
    const double slack = 1e-9 * iv.hi;
    if (point < iv.lo - slack || point > iv.hi + slack)
        throw theory_violation_error(
            "kappa1_point: e^{-C-h(Z)} = " + std::to_string(point) +
            " falls outside [" + std::to_string(iv.lo) + ", " +
            std::to_string(iv.hi) +
            "]; the capacity estimate is inconsistent with A = " +
            std::to_string(A));
    return point;
}

double scalar_zero_radius(double A, double kappa) {
    require_positive(A, "scalar_zero_radius", "A");
    const double kappa_max = 1.0 / std::sqrt(2.0 * kPi);
    if (!(kappa > 0.0 && kappa <= kappa_max * (1.0 + 1e-12)))
        throw std::domain_error(
            "scalar_zero_radius: requires kappa in (0, 1/sqrt(2 pi)]");
    const double arg = std::log(1.0 / (2.0 * kPi * kappa * kappa));
    return A + std::sqrt(std::max(arg, 0.0));
}

double scalar_zero_radius_loose(double A) {
    require_positive(A, "scalar_zero_radius_loose", "A");
    return 2.0 * A + 1.0;
}

double tijdeman_osc_bound(double A, double R, double s) {
    require_positive(A, "tijdeman_osc_bound", "A");
    if (!(R > A))
        throw std::domain_error("tijdeman_osc_bound: requires R > A");
    if (!(s > 1.0))
        throw std::domain_error("tijdeman_osc_bound: requires s > 1");
    const double u = (A + R) * s;
    const double num = 0.5 * (u + A) * (u + A) + 2.0 * A * A +
                       std::log(2.0 + u / A);
    return num / std::log(s);
}

TijdemanBound tijdeman_osc_bound_min(double A, double R) {
    // Unimodality in log s is an empirical observation, not a proven fact, so
    // golden-section is backed by a coarse global sample.
    const auto value_at = [&](double t) {
        return tijdeman_osc_bound(A, R, std::exp(t));
    };
    double t_lo = 0.05, t_hi = 5.0;
    double best_t = t_lo;
    double best_v = value_at(t_lo);
    for (int i = 1; i < 64; ++i) {
        const double t = t_lo + (t_hi - t_lo) * i / 63.0;
        const double v = value_at(t);
        if (v < best_v) {
            best_v = v;
            best_t = t;
        }
    }
    constexpr double kGolden = 0.38196601125010515;  // 2 - golden ratio
    double a = t_lo, b = t_hi;
    double c = a + kGolden * (b - a);
    double d = b - kGolden * (b - a);
    double fc = value_at(c), fd = value_at(d);
    while (b - a > 1e-8) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = a + kGolden * (b - a);
            fc = value_at(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = b - kGolden * (b - a);
            fd = value_at(d);
        }
    }
    const double t_gold = 0.5 * (a + b);
    const double v_gold = value_at(t_gold);
    if (v_gold < best_v) {
        best_v = v_gold;
        best_t = t_gold;
    }
    return {best_v, std::exp(best_t)};
}

double vector_upper_bound(int n, double A) {
    if (n < 2)
        throw std::domain_error(
            "vector_upper_bound: requires n >= 2 (n = 1 is the scalar bound)");
    require_positive(A, "vector_upper_bound", "A");
    using specfun::log_gamma;
    const double c = 3.0 + 4.0 * kE + std::sqrt(2.0 * kE + 1.0);
    const double an2 = 4.0 + 4.0 * kE + std::sqrt(8.0 * kE + 4.0);
    const double an1 = c * n + std::sqrt(32.0 / (n - 1.0));
    const double log_gamma_ratio =
        0.5 * std::log(kPi) + log_gamma(0.5 * n) - log_gamma(0.5 * (n - 1.0));
    const double an0 =
        2.0 + log_gamma_ratio + c * (0.5 * n + log_gamma_ratio);
    return an2 * A * A + an1 * A + an0;
}

double vector_zero_radius(int n, double A, double kappa_n) {
    if (n < 2) throw std::domain_error("vector_zero_radius: requires n >= 2");
    require_positive(A, "vector_zero_radius", "A");
    if (!(kappa_n > 0.0 && kappa_n <= 1.0))
        throw std::domain_error(
            "vector_zero_radius: requires kappa_n in (0, 1]");
    const double gn = specfun::gamma_n(n);
    const double ratio = gn / kappa_n;
    if (ratio < 1.0 - 1e-12)
        throw theory_violation_error(
            "vector_zero_radius: gamma_n / kappa_n = " + std::to_string(ratio) +
            " < 1; kappa_n is inconsistent with dimension n = " +
            std::to_string(n));
    const double root =
        A + std::sqrt(A * A + 2.0 * std::log(std::max(ratio, 1.0)));
    return root * root;
}

double lambda_bound(double A, double P) {
    require_positive(A, "lambda_bound", "A");
    require_positive(P, "lambda_bound", "P");
    if (P >= A * A) return 0.0;
    return 0.5 * std::log1p(P) / P;
}

double power_amplitude(double A, double P) {
    require_positive(A, "power_amplitude", "A");
    require_positive(P, "power_amplitude", "P");
    if (P >= A * A) return A;
    return A * P / (P - std::log1p(P));
}

double power_upper_bound(double A, double P) {
    require_amplitude_ge_1(A, "power_upper_bound");
    require_positive(P, "power_upper_bound", "P");
    const double lam = lambda_bound(A, P);
    const double AP = power_amplitude(A, P);
    const double w = 1.0 + 2.0 * lam;
    const double aP2 =
        w * (9.0 * kE + 6.0 * sqrt_e() + 1.0) + 2.0 * (2.0 - lam) * (1.0 - 2.0 * lam);
    const double aP1 = w * (6.0 * kE + 2.0 * sqrt_e());
    const double aP0 =
        w * kE + 2.0 * std::log((2.0 + 4.0 * sqrt_e() * w) / (1.0 - 2.0 * lam)) +
        1.0;
    return aP2 * AP * AP + aP1 * AP + aP0;
}

double power_lower_bound(double A, double P) {
    require_positive(A, "power_lower_bound", "A");
    require_positive(P, "power_lower_bound", "P");
    const double m = std::min(A * A, 3.0 * P);
    return std::sqrt(1.0 + 2.0 * m / (kPi * kE));
}

double power_zero_radius(double A, double P, double lambda, double kappa) {
    require_positive(A, "power_zero_radius", "A");
    require_positive(P, "power_zero_radius", "P");
    if (!(lambda >= 0.0 && lambda < 0.5))
        throw std::domain_error(
            "power_zero_radius: requires lambda in [0, 1/2)");
    const double kappa_max = 1.0 / std::sqrt(2.0 * kPi);
    if (!(kappa > 0.0 && kappa <= kappa_max * (1.0 + 1e-12)))
        throw std::domain_error(
            "power_zero_radius: requires kappa in (0, 1/sqrt(2 pi)]");
    const double q = 1.0 - 2.0 * lambda;
    const double log_term = std::log(1.0 / (2.0 * kPi * kappa * kappa));
    const double arg = log_term / q + 2.0 * lambda * A * A / (q * q);
    return A / q + std::sqrt(std::max(arg, 0.0));
}

double power_zero_radius_loose(double A, double P) {
    return 2.0 * power_amplitude(A, P) + 1.0;
}

namespace {

void fill_scalar_constants(std::map<std::string, double>& c) {
    c["a2"] = 9.0 * kE + 6.0 * sqrt_e() + 5.0;
    c["a1"] = 6.0 * kE + 2.0 * sqrt_e();
    c["a0"] = kE + 2.0 * std::log(4.0 * sqrt_e() + 2.0) + 1.0;
}

BoundReport scalar_report(const ChannelConfig& config) {
    const double A = config.amplitude;
    BoundReport rep;
    rep.config = config;
    rep.lower = scalar_lower_bound(A);
    rep.upper = scalar_upper_bound(A);
    // Capacity-free worst case: the smallest admissible kappa_1 maximizes the
    // zero radius.
    rep.kappa = kappa1_interval(A).lo;
    rep.zero_radius = scalar_zero_radius(A, rep.kappa);
    const TijdemanBound tb =
        tijdeman_osc_bound_min(A, scalar_zero_radius_loose(A));
    rep.s_star = tb.s;
    fill_scalar_constants(rep.constants);
    rep.constants["kappa"] = rep.kappa;
    rep.constants["B"] = rep.zero_radius;
    rep.constants["s_star"] = rep.s_star;
    return rep;
}

BoundReport vector_report(const ChannelConfig& config) {
    const int n = config.n;
    const double A = config.amplitude;
    BoundReport rep;
    rep.config = config;
    rep.lower = 1.0;  // at least one shell carries mass
    rep.upper = vector_upper_bound(n, A);
    // Worst case over admissible capacities: C_n <= (n/2) log(1+A^2).
    const double cap_ceiling = 0.5 * n * std::log1p(A * A);
    rep.kappa = std::exp(-cap_ceiling - specfun::nu_n(n));
    rep.zero_radius = vector_zero_radius(n, A, rep.kappa);
    const double c = 3.0 + 4.0 * kE + std::sqrt(2.0 * kE + 1.0);
    const double log_gamma_ratio = 0.5 * std::log(kPi) +
                                   specfun::log_gamma(0.5 * n) -
                                   specfun::log_gamma(0.5 * (n - 1.0));
    rep.constants["an2"] = 4.0 + 4.0 * kE + std::sqrt(8.0 * kE + 4.0);
    rep.constants["an1"] = c * n + std::sqrt(32.0 / (n - 1.0));
    rep.constants["an0"] =
        2.0 + log_gamma_ratio + c * (0.5 * n + log_gamma_ratio);
    rep.constants["nun"] = specfun::nu_n(n);
    rep.constants["gamman"] = specfun::gamma_n(n);
    rep.constants["kappa"] = rep.kappa;
    rep.constants["B"] = rep.zero_radius;
    rep.s_star = std::numbers::e;  // the fixed choice made in the vector proof
    rep.constants["s_star"] = rep.s_star;
    return rep;
}

BoundReport power_report(const ChannelConfig& config) {
    const double A = config.amplitude;
    const double P = *config.power;
    BoundReport rep;
    rep.config = config;
    rep.lower = power_lower_bound(A, P);
    rep.upper = power_upper_bound(A, P);
    const double lam = lambda_bound(A, P);
    const double AP = power_amplitude(A, P);
    // Capacity-free worst case: kappa >= e^{lambda (P+1)} / sqrt(2 pi e (1+P))
    // when the constraint is active, else the scalar kappa_1 floor.
    if (P < A * A) {
        rep.kappa = std::exp(lam * (P + 1.0)) /
                    std::sqrt(2.0 * kPi * kE * (1.0 + P));
    } else {
        rep.kappa = kappa1_interval(A).lo;
    }
    rep.zero_radius = power_zero_radius(A, P, lam, rep.kappa);
    const double w = 1.0 + 2.0 * lam;
    rep.constants["aP2"] = w * (9.0 * kE + 6.0 * sqrt_e() + 1.0) +
                           2.0 * (2.0 - lam) * (1.0 - 2.0 * lam);
    rep.constants["aP1"] = w * (6.0 * kE + 2.0 * sqrt_e());
    rep.constants["aP0"] =
        w * kE + 2.0 * std::log((2.0 + 4.0 * sqrt_e() * w) / (1.0 - 2.0 * lam)) +
        1.0;
    rep.constants["lambdaP"] = lam;
    rep.constants["AP"] = AP;
    fill_scalar_constants(rep.constants);  // the P >= A^2 reduction targets
    rep.constants["kappa"] = rep.kappa;
    rep.constants["B"] = rep.zero_radius;
    const TijdemanBound tb =
        tijdeman_osc_bound_min(AP, power_zero_radius_loose(A, P));
    rep.s_star = tb.s;
    rep.constants["s_star"] = rep.s_star;
    return rep;
}

}  // namespace

BoundReport make_bound_report(const ChannelConfig& config) {
    config.validate();
    if (config.power) return power_report(config);
    if (config.n >= 2) return vector_report(config);
    return scalar_report(config);
}

}  // namespace ampcap::bounds
