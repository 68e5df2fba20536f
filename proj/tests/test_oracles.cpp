#include <doctest.h>

#include <cmath>

#include "robinlayer/oracles.hpp"

using namespace robinlayer::oracles;

TEST_CASE("small alpha: ground level approaches 0 like -alpha 2/R") {
    // For alpha -> 0+ the disk ground state tends to the Neumann constant,
    // E ~ -2 alpha / R by first-order perturbation of the form.
    ShootingProblem pb;
    pb.R = 1.0;
    pb.alpha = 1e-3;
    const double E = disk_shooting(pb);
    CHECK(E < 0.0);
    CHECK(E == doctest::Approx(-2.0 * pb.alpha).epsilon(0.01));
}

TEST_CASE("RK4 and Taylor steppers agree") {
    for (double alpha : {2.0, 10.0, 25.0}) {
        ShootingProblem a;
        a.alpha = alpha;
        ShootingProblem b = a;
        b.taylor_stepper = true;
        const double Ea = disk_shooting(a);
        const double Eb = disk_shooting(b);
        CHECK(cross_validate(Ea, Eb, 1e-9 * std::abs(Ea)));
    }
}

TEST_CASE("step halving leaves the root unchanged") {
    ShootingProblem coarse;
    coarse.alpha = 15.0;
    ShootingProblem fine = coarse;
    fine.steps = 2 * coarse.steps;
    CHECK(std::abs(disk_shooting(coarse) - disk_shooting(fine)) < 1e-9 * 225.0);
}

TEST_CASE("angular modes are ordered") {
    double prev = -1e300;
    for (int m = 0; m <= 3; ++m) {
        ShootingProblem pb;
        pb.alpha = 12.0;
        pb.m = m;
        const double E = disk_shooting(pb);
        CHECK(E > prev);
        prev = E;
    }
}

TEST_CASE("large alpha: E + alpha^2 + alpha kappa stays bounded") {
    // E = -alpha^2 - alpha/R + O(1) for the disk (kappa = 1/R)
    for (double alpha : {20.0, 40.0}) {
        ShootingProblem pb;
        pb.R = 1.0;
        pb.alpha = alpha;
        const double E = disk_shooting(pb);
        CHECK(std::abs(E + alpha * alpha + alpha) < 2.0);
    }
}
