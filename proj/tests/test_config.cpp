#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "robinlayer/config.hpp"

using namespace robinlayer::config;

TEST_CASE("flat TOML parsing") {
    auto t = parse_toml(
        "# comment\n"
        "kind = \"ellipse\"  # trailing\n"
        "a = 2.0\n"
        "b = 1\n"
        "closed = true\n"
        "alphas = [10.0, 20.0, 40.0]\n"
        "\n");
    CHECK(get_string(t, "kind", "") == "ellipse");
    CHECK(get_number(t, "a", 0.0) == 2.0);
    CHECK(get_number(t, "b", 0.0) == 1.0);
    CHECK(get_bool(t, "closed", false));
    auto arr = get_array(t, "alphas");
    REQUIRE(arr.size() == 3);
    CHECK(arr[2] == 40.0);
    CHECK(get_number(t, "missing", -7.0) == -7.0);
    CHECK(!has(t, "missing"));
}

TEST_CASE("sections and malformed lines are rejected") {
    CHECK_THROWS_AS(parse_toml("[curve]\nR = 1.0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_toml("novalue\n"), std::invalid_argument);
}

TEST_CASE("curve spec from table") {
    auto t = parse_toml("kind = \"perturbed_circle\"\nR = 1.5\neps = 0.05\nmode = 4\n");
    auto spec = curve_spec_from_table(t);
    CHECK(spec.kind == robinlayer::geometry::CurveSpec::Kind::perturbed_circle);
    CHECK(spec.R == 1.5);
    CHECK(spec.eps == 0.05);
    CHECK(spec.mode == 4);

    CHECK_THROWS_AS(curve_spec_from_table(parse_toml("kind = \"torus\"\n")),
                    std::invalid_argument);
}

TEST_CASE("xy csv round trip") {
    const char* path = "test_config_points.csv";
    {
        std::ofstream f(path);
        f << "x,y\n0.0,0.0\n1.0,0.5\n2.0,-0.25\n";
    }
    auto pts = read_xy_csv(path);
    REQUIRE(pts.size() == 3);
    CHECK(pts[1][0] == 1.0);
    CHECK(pts[2][1] == -0.25);
    std::remove(path);

    CHECK_THROWS(read_xy_csv("does_not_exist.csv"));
}
