#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "robinlayer/geometry.hpp"
#include "robinlayer/layer.hpp"
#include "robinlayer/model1d.hpp"
#include "robinlayer/oracles.hpp"

using namespace robinlayer;
using namespace robinlayer::layer;

namespace {
constexpr double kPi = 3.14159265358979323846;

geometry::ArcCurve circle(double R, std::size_t n) {
    geometry::CurveSpec spec;
    spec.kind = geometry::CurveSpec::Kind::circle;
    spec.R = R;
    return geometry::build_arc_curve(spec, n);
}
}  // namespace

TEST_CASE("flat strip reduces to the 1D models") {
    const double alpha = 4.0;
    LayerConfig cfg;
    cfg.curve = geometry::make_flat_strip(2.0 * kPi, 64);
    cfg.alpha = alpha;
    cfg.delta = 2.0 * std::log(alpha) / alpha;
    cfg.n_s = 64;
    cfg.n_t = 256;

    auto d2d = layer_eigs(assemble_layer(cfg, EndCondition::Dirichlet), 2);
    auto n2d = layer_eigs(assemble_layer(cfg, EndCondition::Neumann), 2);
    auto d1d = model1d::solve_dirichlet_model(alpha, cfg.delta);
    auto n1d = model1d::solve_robin_model(alpha, cfg.delta, 0.0);

    const double tol = 1e-4 * alpha * alpha;
    CHECK(std::abs(d2d.eigenvalues[0] - d1d.E) < tol);
    CHECK(std::abs(n2d.eigenvalues[0] - n1d.E) < tol);

    // next level adds one transverse s mode: the discrete symbol of -d^2/ds^2
    const double hs = cfg.curve.length / double(cfg.n_s);
    const double smode = 2.0 * (1.0 - std::cos(2.0 * kPi / double(cfg.n_s))) /
                         (hs * hs);
    CHECK(std::abs((d2d.eigenvalues[1] - d2d.eigenvalues[0]) - smode) < tol);
}

TEST_CASE("alpha = 0 with Neumann end has the constant kernel") {
    LayerConfig cfg;
    cfg.curve = circle(1.0, 48);
    cfg.alpha = 0.0;
    cfg.delta = 0.25;
    cfg.n_s = 48;
    cfg.n_t = 24;
    auto res = layer_eigs(assemble_layer(cfg, EndCondition::Neumann), 2);
    CHECK(std::abs(res.eigenvalues[0]) < 1e-8);
    CHECK(res.eigenvalues[1] > 1e-3);
}

TEST_CASE("sandwich property on the circle") {
    LayerConfig cfg;
    cfg.curve = circle(1.0, 96);
    cfg.alpha = 8.0;
    cfg.n_s = 96;
    cfg.n_t = 96;
    cfg.delta = default_delta(cfg.curve, cfg.alpha);
    auto br = bracket_eigenvalues(cfg, 3);
    REQUIRE(br.lower.size() == br.upper.size());
    for (std::size_t j = 0; j < br.lower.size(); ++j)
        CHECK(br.lower[j] <= br.upper[j] + 1e-9 * cfg.alpha * cfg.alpha);
}

TEST_CASE("circle bracket contains the shooting oracle value") {
    const double alpha = 10.0;
    LayerConfig cfg;
    cfg.curve = circle(1.0, 160);
    cfg.alpha = alpha;
    cfg.delta = default_delta(cfg.curve, alpha);
    cfg.n_s = 160;
    cfg.n_t = 160;
    auto br = bracket_eigenvalues(cfg, 1);
    REQUIRE(!br.lower.empty());

    oracles::ShootingProblem pb;
    pb.R = 1.0;
    pb.alpha = alpha;
    pb.m = 0;
    const double exact = oracles::disk_shooting(pb);
    const double slack = 0.05;  // discretization allowance
    CHECK(exact > br.lower[0] - slack);
    CHECK(exact < br.upper[0] + slack);
    // halfwidth within the certification budget; the width is dominated by
    // the curvature-coefficient spread ~ 2 log(alpha) between the two sides
    CHECK(0.5 * (br.upper[0] - br.lower[0]) < 0.05 * alpha * alpha);
}

TEST_CASE("energy form is 2nd-order consistent on a smooth test function") {
    // u(s, t) = cos(2 pi s / L) (delta - t)^2 on a circle layer; compare
    // u^T A u against the continuum quadratic form at two resolutions.
    const double R = 1.0, delta = 0.25, alpha = 1.0;
    const double L = 2.0 * kPi * R;

    // exact form via separable s integrals and fine Simpson in t
    auto t_int = [&](auto f) {
        const std::size_t n = 4000;
        const double h = delta / double(n);
        double sum = f(0.0) + f(delta);
        for (std::size_t i = 1; i < n; ++i)
            sum += (i % 2 ? 4.0 : 2.0) * f(double(i) * h);
        return sum * h / 3.0;
    };
    const double kap = 1.0 / R;
    const double exact =
        std::pow(2.0 * kPi / L, 2) * (L / 2.0) *
            t_int([&](double t) { return std::pow(delta - t, 4) / (1.0 - kap * t); }) +
        (L / 2.0) * 4.0 *
            t_int([&](double t) { return (delta - t) * (delta - t) * (1.0 - kap * t); }) -
        alpha * (L / 2.0) * std::pow(delta, 4);

    auto form_value = [&](std::size_t n_s, std::size_t n_t) {
        LayerConfig cfg;
        cfg.curve = circle(R, n_s);
        cfg.alpha = alpha;
        cfg.delta = delta;
        cfg.n_s = n_s;
        cfg.n_t = n_t;
        auto op = assemble_layer(cfg, EndCondition::Neumann);
        std::vector<double> u(op.stiffness.dim());
        for (std::size_t i = 0; i < n_s; ++i)
            for (std::size_t j = 0; j <= n_t; ++j) {
                const double s = double(i) * L / double(n_s);
                const double t = double(j) * delta / double(n_t);
                u[op.index(i, j)] = std::cos(2.0 * kPi * s / L) *
                                    (delta - t) * (delta - t);
            }
        auto Au = op.stiffness.apply(u);
        double q = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) q += u[i] * Au[i];
        return q;
    };

    const double e1 = std::abs(form_value(64, 32) - exact);
    const double e2 = std::abs(form_value(128, 64) - exact);
    CHECK(e1 / e2 > 3.0);
    CHECK(e1 / e2 < 5.5);
}

TEST_CASE("bracket halfwidth shrinks along the delta schedule") {
    auto rel_halfwidth = [&](double alpha) {
        LayerConfig cfg;
        cfg.curve = circle(1.0, 128);
        cfg.alpha = alpha;
        cfg.delta = default_delta(cfg.curve, alpha);
        cfg.n_s = 128;
        cfg.n_t = std::size_t(40.0 * alpha * std::log(alpha) / 10.0) + 64;
        auto br = bracket_eigenvalues(cfg, 1);
        REQUIRE(!br.lower.empty());
        return 0.5 * (br.upper[0] - br.lower[0]) / (alpha * alpha);
    };
    const double r6 = rel_halfwidth(6.0);
    const double r10 = rel_halfwidth(10.0);
    CHECK(r10 < 0.6 * r6);
}

TEST_CASE("validation: delta must not reach the cut locus") {
    LayerConfig cfg;
    cfg.curve = circle(1.0, 64);
    cfg.alpha = 5.0;
    cfg.delta = 0.7;  // min width for R = 1 is 0.5
    cfg.n_s = 64;
    cfg.n_t = 32;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
