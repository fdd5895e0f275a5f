#pragma once

#include <map>
#include <string>

#include "ampcap/channel.hpp"

namespace ampcap::bounds {

struct Interval {
    double lo;
    double hi;
};

struct TijdemanBound {
    double value;
    double s;  // the parameter achieving `value`
};

// --- Theorem-style support-size bounds (scalar) ----------------------------

// a2 A^2 + a1 A + a0 with a2 = 9e + 6 sqrt(e) + 5, a1 = 6e + 2 sqrt(e),
// a0 = e + 2 log(4 sqrt(e) + 2) + 1.  Requires A >= 1.
double scalar_upper_bound(double A);

// sqrt(1 + 2 A^2 / (pi e)).
double scalar_lower_bound(double A);

// The interval [ (2 pi e (1+A^2))^{-1/2}, (2 pi e + 4 A^2)^{-1/2} ] that must
// contain kappa_1 = e^{-C(A) - h(Z)}.
Interval kappa1_interval(double A);

// kappa_1 for a given capacity estimate; throws theory_violation_error when
// the point falls outside kappa1_interval(A) (i.e. the estimate is bad).
double kappa1_point(double A, double capacity);

// Radius confining all zeros of f_Y - kappa:  A + sqrt(log(1/(2 pi kappa^2))),
// for kappa in (0, 1/sqrt(2 pi)].
double scalar_zero_radius(double A, double kappa);

// The capacity-free loosening 2A + 1 (valid for A >= 1 with the
// capacity-induced kappa_1).
double scalar_zero_radius_loose(double A);

// --- oscillation bound ------------------------------------------------------

// Bound on the number of extreme points of f_Y on [-R, R] at a fixed
// parameter s > 1:
//   ( ((A+R)s + A)^2 / 2 + 2 A^2 + log(2 + (A+R)s/A) ) / log s.
double tijdeman_osc_bound(double A, double R, double s);

// Same bound minimized over s > 1 (golden-section on log s in [0.05, 5],
// cross-checked against a coarse global sample).
TijdemanBound tijdeman_osc_bound_min(double A, double R);

// --- vector channel ---------------------------------------------------------

// an2 A^2 + an1 A + an0 per the vector support-size theorem; requires n >= 2.
double vector_upper_bound(int n, double A);

// Squared-radius bound (A + sqrt(A^2 + 2 log(gamma_n / kappa_n)))^2 confining
// all zeros of g_n - kappa_n; requires gamma_n / kappa_n >= 1.
double vector_zero_radius(int n, double A, double kappa_n);

// --- power-constrained scalar channel ---------------------------------------

// log(1+P)/(2P) when P < A^2, else 0; always < 1/2.
double lambda_bound(double A, double P);

// A_P = A P / (P - log(1+P) 1{P < A^2}).
double power_amplitude(double A, double P);

// aP2 A_P^2 + aP1 A_P + aP0 with the lambda_P-dependent coefficients;
// reduces exactly to scalar_upper_bound(A) when P >= A^2.  Requires A >= 1.
double power_upper_bound(double A, double P);

// sqrt(1 + 2 min(A^2, 3P) / (pi e)).
double power_lower_bound(double A, double P);

// Radius confining the zeros of e^{lambda y^2} f_Y - kappa:
//   A/(1-2 lambda) + sqrt( log(1/(2 pi kappa^2))/(1-2 lambda)
//                          + 2 lambda A^2/(1-2 lambda)^2 ).
double power_zero_radius(double A, double P, double lambda, double kappa);

// The loosening 2 A_P + 1.
double power_zero_radius_loose(double A, double P);

// --- report ------------------------------------------------------------------

// Every evaluated constant for one problem instance, keyed by its ascii name
// ("a2", "an1", "lambdaP", ...).  `kappa` is the worst-case (capacity-free)
// threshold used for `zero_radius`.
struct BoundReport {
    ChannelConfig config;
    double lower = 0.0;
    double upper = 0.0;
    double kappa = 0.0;
    double zero_radius = 0.0;
    double s_star = 0.0;
    std::map<std::string, double> constants;
};

BoundReport make_bound_report(const ChannelConfig& config);

}  // namespace ampcap::bounds
