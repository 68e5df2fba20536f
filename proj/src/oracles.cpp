#include "robinlayer/oracles.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace robinlayer::oracles {

namespace {

struct State {
    double f, fp;
};

// f'' = -f'/r + (m^2/r^2 - E) f
double rhs_fpp(double r, double f, double fp, double m2, double E) {
    return -fp / r + (m2 / (r * r) - E) * f;
}

// Robin mismatch f'(R) - alpha f(R) after integrating from the regular
// series start f ~ r^m (1 + a2 r^2), a2 = -E / (4(m+1)).
double shoot(const ShootingProblem& pb, double E) {
    const double m2 = double(pb.m) * double(pb.m);
    const double r0 = 1e-6;
    const double a2 = -E / (4.0 * (double(pb.m) + 1.0));

    State y;
    if (pb.m == 0) {
        y.f = 1.0 + a2 * r0 * r0;
        y.fp = 2.0 * a2 * r0;
    } else {
        y.f = std::pow(r0, pb.m) * (1.0 + a2 * r0 * r0);
        y.fp = double(pb.m) * std::pow(r0, pb.m - 1) +
               (double(pb.m) + 2.0) * a2 * std::pow(r0, pb.m + 1);
    }

    const double h = (pb.R - r0) / double(pb.steps);
    double r = r0;
    for (std::size_t i = 0; i < pb.steps; ++i) {
        if (pb.taylor_stepper) {
            // order-4 Taylor step from recursive differentiation of the ODE
            const double c = m2 / (r * r) - E;
            const double cp = -2.0 * m2 / (r * r * r);
            const double cpp = 6.0 * m2 / (r * r * r * r);
            const double f2 = -y.fp / r + c * y.f;
            const double f3 = -f2 / r + y.fp / (r * r) + c * y.fp + cp * y.f;
            const double f4 = -f3 / r + 2.0 * f2 / (r * r) -
                              2.0 * y.fp / (r * r * r) + c * f2 +
                              2.0 * cp * y.fp + cpp * y.f;
            y.f += h * y.fp + h * h / 2.0 * f2 + h * h * h / 6.0 * f3 +
                   h * h * h * h / 24.0 * f4;
            y.fp += h * f2 + h * h / 2.0 * f3 + h * h * h / 6.0 * f4;
        } else {
            // classical RK4
            auto deriv = [&](double rr, const State& s) {
                return State{s.fp, rhs_fpp(rr, s.f, s.fp, m2, E)};
            };
            const State k1 = deriv(r, y);
            const State k2 = deriv(r + 0.5 * h,
                                   {y.f + 0.5 * h * k1.f, y.fp + 0.5 * h * k1.fp});
            const State k3 = deriv(r + 0.5 * h,
                                   {y.f + 0.5 * h * k2.f, y.fp + 0.5 * h * k2.fp});
            const State k4 = deriv(r + h, {y.f + h * k3.f, y.fp + h * k3.fp});
            y.f += h / 6.0 * (k1.f + 2.0 * k2.f + 2.0 * k3.f + k4.f);
            y.fp += h / 6.0 * (k1.fp + 2.0 * k2.fp + 2.0 * k3.fp + k4.fp);
        }
        r += h;
        // rescale against exponential growth; positive factor keeps the sign
        const double mag = std::max(std::fabs(y.f), std::fabs(y.fp));
        if (mag > 1e100) {
            y.f /= mag;
            y.fp /= mag;
        }
    }
    return y.fp - pb.alpha * y.f;
}

}  // namespace

double disk_shooting(const ShootingProblem& problem) {
    if (!(problem.R > 0.0) || !(problem.alpha > 0.0) || problem.m < 0)
        throw std::invalid_argument("disk_shooting: bad problem data");
    double lo = problem.bracket.first, hi = problem.bracket.second;
    if (lo == 0.0 && hi == 0.0) {
        const double a = problem.alpha;
        lo = -(a * a + 2.0 * a / problem.R + 10.0);
        hi = -1e-12;
    }
    double flo = shoot(problem, lo);
    double fhi = shoot(problem, hi);
    if (flo * fhi > 0.0)
        throw std::runtime_error(
            "disk_shooting: no sign change in the energy bracket, adjust it");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = shoot(problem, mid);
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
        if (hi - lo <= 1e-11 * std::max(1.0, std::fabs(lo))) break;
    }
    return 0.5 * (lo + hi);
}

bool cross_validate(double value_a, double value_b, double tol) {
    const bool ok = std::fabs(value_a - value_b) <= tol;
    if (!ok)
        std::cerr << "cross_validate: |" << value_a << " - " << value_b
                  << "| > " << tol << "\n";
    return ok;
}

}  // namespace robinlayer::oracles
