#ifndef ROBINLAYER_ORACLES_HPP
#define ROBINLAYER_ORACLES_HPP

#include <cstddef>
#include <utility>

namespace robinlayer::oracles {

/// Radial shooting for the Robin disk: -f'' - f'/r + (m^2/r^2) f = E f on
/// (0, R), regular at 0, with f'(R) = alpha f(R).
struct ShootingProblem {
    double R = 1.0;
    double alpha = 1.0;
    int m = 0;
    std::pair<double, double> bracket{0.0, 0.0};  // (0,0) = default bracket
    std::size_t steps = 16384;
    bool taylor_stepper = false;  // independent integrator for cross-checks
};

double disk_shooting(const ShootingProblem& problem);

/// |a - b| <= tol, with a one-line report to stderr on failure.
bool cross_validate(double value_a, double value_b, double tol);

}  // namespace robinlayer::oracles

#endif
