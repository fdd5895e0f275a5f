#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "ampcap/errors.hpp"

namespace ampcap {

struct QuadResult {
    double value;
    double error;  // accumulated estimate, conservative
};

namespace detail {

// 20-point Gauss-Legendre rule on [-1,1]; nodes are symmetric so only the
// positive half is stored.
inline constexpr int kGl20Half = 10;
inline constexpr double kGl20Node[kGl20Half] = {
    7.65265211334973383e-02, 2.27785851141645096e-01, 3.73706088715419549e-01,
    5.10867001950827126e-01, 6.36053680726515025e-01, 7.46331906460150796e-01,
    8.39116971822218782e-01, 9.12234428251325835e-01, 9.63971927277913809e-01,
    9.93128599185094885e-01};
inline constexpr double kGl20Weight[kGl20Half] = {
    1.52753387130725782e-01, 1.49172986472603658e-01, 1.42096109318381875e-01,
    1.31688638449176526e-01, 1.18194531961518245e-01, 1.01930119817240261e-01,
    8.32767415767046715e-02, 6.26720483341094425e-02, 4.06014298003862170e-02,
    1.76140071391532732e-02};

template <typename F>
double gl20(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < kGl20Half; ++i) {
        const double dx = half * kGl20Node[i];
        sum += kGl20Weight[i] * (f(mid - dx) + f(mid + dx));
    }
    return sum * half;
}

template <typename F>
void adapt_panel(F& f, double a, double b, double whole, double tol, int depth,
                 QuadResult& acc) {
    const double mid = 0.5 * (a + b);
    const double left = gl20(f, a, mid);
    const double right = gl20(f, mid, b);
    const double split = left + right;
    const double err = std::fabs(split - whole);
    if (err <= tol || depth <= 0) {
        acc.value += split;
        acc.error += err;
        if (depth <= 0 && err > tol) {
            throw numerical_error(
                "adaptive quadrature failed to converge on [" +
                    std::to_string(a) + ", " + std::to_string(b) + "]",
                err);
        }
        return;
    }
    adapt_panel(f, a, mid, left, 0.5 * tol, depth - 1, acc);
    adapt_panel(f, mid, b, right, 0.5 * tol, depth - 1, acc);
}

}  // namespace detail

// Adaptive Gauss-Legendre panels.  A panel is accepted once splitting it
// moves the estimate by less than its share of the tolerance; the integrand
// must be finite on (a, b).  Throws numerical_error (with the achieved
// tolerance attached) if the recursion depth limit is hit first.
template <typename F>
QuadResult integrate_adaptive(F&& f, double a, double b, double abs_tol,
                              int initial_panels = 4, int max_depth = 44) {
    QuadResult acc{0.0, 0.0};
    if (!(a < b)) return acc;
    const double panel_tol = abs_tol / initial_panels;
    const double width = (b - a) / initial_panels;
    for (int p = 0; p < initial_panels; ++p) {
        const double lo = a + p * width;
        const double hi = (p + 1 == initial_panels) ? b : lo + width;
        detail::adapt_panel(f, lo, hi, detail::gl20(f, lo, hi), panel_tol,
                            max_depth, acc);
    }
    return acc;
}

template <typename F>
double integrate(F&& f, double a, double b, double abs_tol,
                 int initial_panels = 4) {
    return integrate_adaptive(std::forward<F>(f), a, b, abs_tol, initial_panels)
        .value;
}

}  // namespace ampcap
