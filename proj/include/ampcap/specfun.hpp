#pragma once

#include <cmath>

namespace ampcap::specfun {

// A nonnegative function value carried as value * exp(log_scale), so callers
// can defer exponentiation across many orders of magnitude.
struct KernelEval {
    double value;      // finite and >= 0
    double log_scale;  // additive log factor

    double reconstruct() const { return value * std::exp(log_scale); }
};

// log Gamma(x) for x > 0.
double log_gamma(double x);

// Exponentially scaled modified Bessel function of the first kind,
// e^{-x} I_nu(x), for order nu >= 0 and x >= 0.
double bessel_i_scaled(double order, double x);

// I_nu(x) as a scaled pair {e^{-x} I_nu(x), x}.
KernelEval bessel_i(double order, double x);

// log(I_nu(z) / z^nu).  Finite down to z = 0 where it equals
// -nu log 2 - log Gamma(nu+1); accepts any order > -1.  This is the natural
// building block for the noncentral chi-squared kernels: the removable
// z^nu singularity never materializes.
double log_bessel_i_over_pow(double order, double z);

// Noncentral chi-squared density with n degrees of freedom and noncentrality
// r^2, evaluated at x > 0.  The r -> 0 limit is exact (leading series term).
double noncentral_chi2_pdf(int n, double r, double x);
double noncentral_chi2_logpdf(int n, double r, double x);

// n/2 + log(2^{n/2-1} Gamma(n/2)): the offset between the radial information
// density of a shell input and its mutual information.  n >= 1.
double nu_n(int n);

// sqrt(pi) / (2^{n/2-1} Gamma((n-1)/2)): prefactor of the radial density
// envelope used by the vector zero-location bound.  n >= 2.
double gamma_n(int n);

}  // namespace ampcap::specfun
