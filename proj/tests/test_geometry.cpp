#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "robinlayer/geometry.hpp"

using namespace robinlayer::geometry;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("circle: length, curvature and turning number") {
    CurveSpec spec;
    spec.kind = CurveSpec::Kind::circle;
    spec.R = 2.5;
    auto curve = build_arc_curve(spec, 256);
    CHECK(curve.length == doctest::Approx(2.0 * kPi * 2.5).epsilon(1e-10));
    for (double k : curve.kappa) CHECK(k == doctest::Approx(1.0 / 2.5).epsilon(1e-12));
    CHECK(curve.total_turning() == doctest::Approx(2.0 * kPi).epsilon(1e-10));
}

TEST_CASE("ellipse: curvature maximum a/b^2 at the long-axis vertex") {
    CurveSpec spec;
    spec.kind = CurveSpec::Kind::ellipse;
    spec.a = 2.0;
    spec.b = 1.0;
    auto curve = build_arc_curve(spec, 1024);
    auto peak = curvature_peak(curve);
    CHECK(peak.kappa_max == doctest::Approx(2.0).epsilon(1e-5));
    CHECK_FALSE(peak.flat);
    CHECK(peak.maxima_count == 2);  // both vertices of the long axis
    CHECK(peak.kappa_pp < 0.0);
    CHECK(curve.total_turning() == doctest::Approx(2.0 * kPi).epsilon(1e-8));
}

TEST_CASE("refinement converges at second order") {
    CurveSpec spec;
    spec.kind = CurveSpec::Kind::ellipse;
    spec.a = 2.0;
    spec.b = 1.0;
    // observable: kappa at the fixed arc length s = L/8 (the perimeter
    // itself super-converges under the periodic trapezoid rule and cannot
    // see the order); reference is a very fine grid
    auto fine = build_arc_curve(spec, 8192);
    const double ref = fine.kappa[8192 / 8];
    const double e1 = std::abs(build_arc_curve(spec, 128).kappa[128 / 8] - ref);
    const double e2 = std::abs(build_arc_curve(spec, 256).kappa[256 / 8] - ref);
    const double ratio = e1 / e2;
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("perturbed circle curvature against a fine-grid evaluation") {
    CurveSpec spec;
    spec.kind = CurveSpec::Kind::perturbed_circle;
    spec.R = 1.0;
    spec.eps = 0.08;
    spec.mode = 3;
    auto coarse = build_arc_curve(spec, 256);
    auto fine = build_arc_curve(spec, 4096);
    auto pc = curvature_peak(coarse);
    auto pf = curvature_peak(fine);
    CHECK(std::abs(pc.kappa_max - pf.kappa_max) < 0.01 * pf.kappa_max);
    CHECK(pc.maxima_count == 3);
}

TEST_CASE("flat_well: curvature has a degenerate maximum and full turning") {
    CurveSpec spec;
    spec.kind = CurveSpec::Kind::flat_well;
    spec.p = 2;
    spec.Cp = 1.0;
    auto curve = build_arc_curve(spec, 1024);
    CHECK(curve.total_turning() == doctest::Approx(2.0 * kPi).epsilon(1e-6));
    auto peak = curvature_peak(curve);
    // quadratic term vanishes at a 2p-degenerate maximum
    CHECK(std::abs(peak.kappa_pp) < 1e-3);
}

TEST_CASE("stadium: piecewise curvature, exact length") {
    CurveSpec spec;
    spec.kind = CurveSpec::Kind::stadium;
    spec.R = 1.0;
    spec.ell = 2.0;
    auto curve = build_arc_curve(spec, 512);
    CHECK_FALSE(curve.c2_smooth);
    CHECK(curve.length == doctest::Approx(2.0 * kPi + 4.0).epsilon(1e-12));
    auto peak = curvature_peak(curve);
    CHECK(peak.kappa_max == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(peak.flat);
    CHECK(peak.kappa_pp == 0.0);
}

TEST_CASE("min_layer_width") {
    CurveSpec spec;
    spec.kind = CurveSpec::Kind::circle;
    spec.R = 1.0;
    CHECK(min_layer_width(build_arc_curve(spec, 128)) ==
          doctest::Approx(0.5).epsilon(1e-10));
    spec.R = 2.0;
    CHECK(min_layer_width(build_arc_curve(spec, 128)) ==
          doctest::Approx(1.0).epsilon(1e-10));
    // flat strip: kappa = 0, no width restriction
    CHECK(min_layer_width(make_flat_strip(2.0 * kPi, 128)) == kInfiniteWidth);
}

TEST_CASE("sampled curves: resampling and self-intersection rejection") {
    CurveSpec spec;
    spec.kind = CurveSpec::Kind::sampled;
    for (int i = 0; i < 200; ++i) {
        const double t = 2.0 * kPi * double(i) / 200.0;
        spec.points.push_back({std::cos(t), std::sin(t)});
    }
    auto curve = build_arc_curve(spec, 256);
    CHECK(curve.length == doctest::Approx(2.0 * kPi).epsilon(1e-3));
    auto peak = curvature_peak(curve);
    CHECK(peak.kappa_max == doctest::Approx(1.0).epsilon(0.01));

    CurveSpec bad;
    bad.kind = CurveSpec::Kind::sampled;
    // figure-eight: crosses itself at the origin
    for (int i = 0; i < 200; ++i) {
        const double t = 2.0 * kPi * double(i) / 200.0;
        bad.points.push_back({std::sin(2.0 * t), std::sin(t)});
    }
    CHECK_THROWS_AS(build_arc_curve(bad, 256), std::invalid_argument);
}

TEST_CASE("cell helpers") {
    auto cell = make_cosine_cell(2.0 * kPi, 128);
    CHECK(cell.period == doctest::Approx(2.0 * kPi));
    REQUIRE(cell.kappa.size() == 128);
    CHECK(cell.kappa[0] == doctest::Approx(2.0).epsilon(1e-12));
    auto flat = make_free_cell(1.0, 64);
    for (double k : flat.kappa) CHECK(k == 0.0);
    auto c = make_constant_cell(1.0, 0.7, 64);
    for (double k : c.kappa) CHECK(k == doctest::Approx(0.7));
}

TEST_CASE("spec validation") {
    CurveSpec spec;
    spec.kind = CurveSpec::Kind::ellipse;
    spec.a = 1.0;
    spec.b = 2.0;  // requires a >= b
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    CHECK_THROWS_AS(build_arc_curve(CurveSpec{}, 8), std::invalid_argument);  // n < 32
}
