#pragma once

#include <stdexcept>
#include <string>

namespace ampcap {

// Quadrature or root refinement failed to reach the requested tolerance.
class numerical_error : public std::runtime_error {
public:
    numerical_error(const std::string& what, double achieved_tolerance)
        : std::runtime_error(what), achieved_tolerance_(achieved_tolerance) {}

    double achieved_tolerance() const noexcept { return achieved_tolerance_; }

private:
    double achieved_tolerance_;
};

// A proven bound or identity failed numerically.  This always indicates a bug
// (or a bad capacity estimate fed in from outside), never bad user input.
class theory_violation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An optimizer, escalation loop or bisection terminated without meeting its
// stopping rule.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ampcap
