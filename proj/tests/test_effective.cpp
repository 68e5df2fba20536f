#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "robinlayer/effective.hpp"
#include "robinlayer/geometry.hpp"

using namespace robinlayer::effective;
using namespace robinlayer::geometry;

namespace {
constexpr double kPi = 3.14159265358979323846;

ArcCurve unit_circle(std::size_t n) {
    CurveSpec spec;
    spec.kind = CurveSpec::Kind::circle;
    spec.R = 1.0;
    return build_arc_curve(spec, n);
}
}  // namespace

TEST_CASE("circle spectrum m^2 - alpha with multiplicities 1,2,2") {
    const double alpha = 30.0;
    auto op = assemble_effective(unit_circle(1024), alpha, 1024);
    auto res = effective_eigs(op, 5);
    REQUIRE(res.eigenvalues.size() == 5);
    // m = 0, +-1, +-2
    CHECK(res.eigenvalues[0] == doctest::Approx(-alpha).epsilon(1e-8));
    CHECK(res.eigenvalues[1] == doctest::Approx(1.0 - alpha).epsilon(1e-4));
    CHECK(res.eigenvalues[2] == doctest::Approx(1.0 - alpha).epsilon(1e-4));
    CHECK(res.eigenvalues[3] == doctest::Approx(4.0 - alpha).epsilon(1e-3));
    CHECK(res.eigenvalues[4] == doctest::Approx(4.0 - alpha).epsilon(1e-3));
    // exact degeneracy of the FD operator, not just of the limit
    CHECK(std::abs(res.eigenvalues[1] - res.eigenvalues[2]) < 1e-6);
}

TEST_CASE("alpha = 0: periodic Laplacian has a kernel") {
    auto op = assemble_effective(unit_circle(256), 0.0, 256);
    auto res = effective_eigs(op, 2);
    CHECK(std::abs(res.eigenvalues[0]) < 1e-9);
    CHECK(res.eigenvalues[1] > 0.5);
}

TEST_CASE("harmonic levels") {
    auto one = harmonic_levels({2.0}, 3);
    CHECK(one.levels[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(one.levels[1] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(one.levels[2] == doctest::Approx(5.0).epsilon(1e-14));

    auto two = harmonic_levels({2.0, 8.0}, 4);  // sqrt(1) + sqrt(4) scales
    CHECK(two.levels[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(two.levels[1] == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(two.levels[2] == doctest::Approx(7.0).epsilon(1e-14));
    CHECK(two.levels[3] == doctest::Approx(7.0).epsilon(1e-14));

    auto sym = harmonic_levels({2.0, 2.0}, 3);  // two equal wells
    CHECK(sym.levels[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(sym.levels[1] == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(sym.levels[2] == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("quartic oscillator ground level") {
    DegenerateWellSpec spec;  // p = 2, C = 1: -u'' + s^4 u
    auto levels = degenerate_well_levels(spec, 2);
    CHECK(levels[0] > 1.059);   // known value 1.060362...
    CHECK(levels[0] < 1.061);
    CHECK(levels[1] > levels[0]);
}

TEST_CASE("degenerate well scaling e_j(C) = C^{1/(p+1)} e_j(1)") {
    for (int p : {2, 3}) {
        DegenerateWellSpec unit;
        unit.p = p;
        DegenerateWellSpec scaled;
        scaled.p = p;
        scaled.Cp = 5.0;
        auto a = degenerate_well_levels(unit, 3);
        auto b = degenerate_well_levels(scaled, 3);
        const double factor = std::pow(5.0, 1.0 / double(p + 1));
        // FD error does not rescale exactly with C, hence the looser epsilon
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(b[j] == doctest::Approx(factor * a[j]).epsilon(1e-4));
    }
}

TEST_CASE("free cell bands: no gaps, edges at theta in {0, pi}") {
    auto cell = make_free_cell(2.0 * kPi, 256);
    auto bs = bloch_bands(cell, 0.0, 256, 17, 3);
    REQUIRE(bs.theta_grid.size() == 17);
    CHECK(bs.theta_grid.front() == 0.0);
    CHECK(bs.theta_grid.back() == doctest::Approx(2.0 * kPi));
    // eps_1(theta) = (theta/(2 pi))^2 on the first band, discretization aside
    const double mid = bs.bands[0][8];  // theta = pi
    CHECK(mid == doctest::Approx(0.25).epsilon(1e-3));
    CHECK(detect_gaps(bs).empty());  // free operator: absolutely continuous
}

TEST_CASE("cosine cell opens a gap at large alpha") {
    auto cell = make_cosine_cell(2.0 * kPi, 384);
    auto bs = bloch_bands(cell, 200.0, 384, 21, 3);
    auto gaps = detect_gaps(bs);
    CHECK(!gaps.empty());
    for (auto [lo, hi] : gaps) CHECK(hi > lo);
}

TEST_CASE("band symmetry eps_j(theta) = eps_j(2 pi - theta)") {
    auto cell = make_cosine_cell(2.0 * kPi, 256);
    auto bs = bloch_bands(cell, 50.0, 256, 17, 2);
    const std::size_t T = bs.theta_grid.size();
    for (std::size_t j = 0; j < bs.bands.size(); ++j)
        for (std::size_t i = 0; i < T; ++i)
            CHECK(bs.bands[j][i] ==
                  doctest::Approx(bs.bands[j][T - 1 - i]).epsilon(1e-9));
}

TEST_CASE("band edges occur at theta in {0, pi}") {
    auto cell = make_cosine_cell(2.0 * kPi, 256);
    auto bs = bloch_bands(cell, 100.0, 256, 33, 2);
    for (const auto& band : bs.bands) {
        double lo = band[0], hi = band[0];
        for (double v : band) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const double at0 = band[0];
        const double atpi = band[(bs.theta_grid.size() - 1) / 2];
        const double tol = 1e-9 * std::max(1.0, std::abs(hi));
        CHECK(std::min(at0, atpi) < lo + tol);
        CHECK(std::max(at0, atpi) > hi - tol);
    }
}

TEST_CASE("validation") {
    auto cell = make_free_cell(1.0, 64);
    CHECK_THROWS_AS(bloch_bands(cell, 1.0, 64, 16, 2), std::invalid_argument);
    CHECK_THROWS_AS(bloch_bands(cell, 1.0, 64, 18, 2), std::invalid_argument);
    DegenerateWellSpec tiny;
    tiny.halfwidth = 0.1;
    CHECK_THROWS(degenerate_well_levels(tiny, 2));
}
