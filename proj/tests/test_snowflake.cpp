#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fdrum/errors.hpp"
#include "fdrum/snowflake.hpp"

using namespace fdrum;
using snowflake::Spec;

namespace {

bool near(const Vec2& p, double x, double y, double tol = 1e-12) {
    return std::abs(p.x - x) <= tol && std::abs(p.y - y) <= tol;
}

}  // namespace

TEST_SUITE("snowflake") {

TEST_CASE("classic generator maps chain across the unit segment") {
    const auto f = snowflake::ifs_branches(Spec::classic(0));
    REQUIRE(f.size() == 4);
    CHECK(near(f[0]({0, 0}), 0.0, 0.0));
    CHECK(near(f[0]({1, 0}), 1.0 / 3.0, 0.0));
    CHECK(near(f[3]({0, 0}), 2.0 / 3.0, 0.0));
    CHECK(near(f[3]({1, 0}), 1.0, 0.0));
    // bump apex on the +y side
    CHECK(near(f[1]({1, 0}), 0.5, std::sqrt(3.0) / 6.0));
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        const Vec2 tail = f[i]({1, 0});
        const Vec2 head = f[i + 1]({0, 0});
        CHECK(near(tail, head.x, head.y));
    }
}

TEST_CASE("quadratic generator chains with ratios a, b") {
    const auto f = snowflake::ifs_branches(Spec::quadratic(0.2, 0));
    REQUIRE(f.size() == 5);
    CHECK(near(f[0]({1, 0}), 0.4, 0.0));
    CHECK(near(f[1]({1, 0}), 0.4, 0.2));
    CHECK(near(f[2]({1, 0}), 0.6, 0.2));
    CHECK(near(f[3]({1, 0}), 0.6, 0.0));
    CHECK(near(f[4]({0, 0}), 0.6, 0.0));
    CHECK(near(f[4]({1, 0}), 1.0, 0.0));
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        const Vec2 tail = f[i]({1, 0});
        const Vec2 head = f[i + 1]({0, 0});
        CHECK(near(tail, head.x, head.y));
    }
}

TEST_CASE("edge counts follow the substitution") {
    for (int m = 0; m <= 4; ++m) {
        CHECK(snowflake::snowflake_polygon(Spec::classic(m)).edge_count() ==
              std::size_t(3) << (2 * m));  // 3 * 4^m
    }
    std::size_t quad = 4;
    for (int m = 0; m <= 3; ++m, quad *= 5) {
        CHECK(snowflake::snowflake_polygon(Spec::quadratic(0.2, m)).edge_count() ==
              quad);  // 4 * 5^m
    }
}

TEST_CASE("polygon is a simple counterclockwise loop") {
    const auto poly = snowflake::snowflake_polygon(Spec::classic(3));
    CHECK(poly.area() > 0.0);
    const Vec2 first = poly.vertices.front();
    const Vec2 last = poly.vertices.back();
    CHECK(!(first.x == last.x && first.y == last.y));
    for (std::size_t i = 0; i + 1 < poly.vertices.size(); ++i) {
        const Vec2 d = poly.vertices[i + 1] - poly.vertices[i];
        CHECK(d.norm() > 0.0);
    }
}

TEST_CASE("shoelace area equals the level formula") {
    for (int m = 0; m <= 4; ++m) {
        const Spec spec = Spec::classic(m);
        const double shoelace = snowflake::snowflake_polygon(spec).area();
        CHECK(shoelace == doctest::Approx(snowflake::area_at_level(spec, m))
                              .epsilon(1e-12));
    }
    for (int m = 0; m <= 3; ++m) {
        const Spec spec = Spec::quadratic(0.2, m);
        const double shoelace = snowflake::snowflake_polygon(spec).area();
        CHECK(shoelace == doctest::Approx(snowflake::area_at_level(spec, m))
                              .epsilon(1e-12));
    }
}

TEST_CASE("area closed forms") {
    const double s3 = std::sqrt(3.0);
    CHECK(snowflake::area_at_level(Spec::classic(0), 0) ==
          doctest::Approx(s3 / 4.0).epsilon(1e-15));
    CHECK(snowflake::area_at_level(Spec::classic(1), 1) ==
          doctest::Approx(s3 / 3.0).epsilon(1e-15));
    CHECK(snowflake::area_limit(Spec::classic(0)) ==
          doctest::Approx(2.0 * s3 / 5.0).epsilon(1e-15));

    // unit-square based family: (2a+b)^2 + 4 b^2 / (1 - 2a^2 - 3b^2)
    CHECK(snowflake::area_at_level(Spec::quadratic(0.2, 1), 1) ==
          doctest::Approx(1.16).epsilon(1e-15));
    CHECK(snowflake::area_limit(Spec::quadratic(0.2, 0)) ==
          doctest::Approx(9.0 / 7.0).epsilon(1e-14));
    CHECK(snowflake::area_limit(Spec::quadratic(0.1, 0)) ==
          doctest::Approx(1.0707964601769913).epsilon(1e-14));
    const double lattice_b = 3.0 - 2.0 * std::numbers::sqrt2;
    CHECK(snowflake::area_limit(Spec::quadratic(lattice_b, 0)) ==
          doctest::Approx((1.0 + std::numbers::sqrt2) / 2.0).epsilon(1e-13));
}

TEST_CASE("areas increase towards the limit") {
    const Spec spec = Spec::classic(0);
    double prev = snowflake::area_at_level(spec, 0);
    for (int m = 1; m <= 8; ++m) {
        const double a = snowflake::area_at_level(spec, m);
        CHECK(a > prev);
        prev = a;
    }
    CHECK(snowflake::area_limit(spec) - prev > 0.0);
    CHECK(snowflake::area_limit(spec) - prev < 1e-3);
}

TEST_CASE("boundary dimension closed forms") {
    CHECK(snowflake::boxdim_closed_form(Spec::classic(0)) ==
          doctest::Approx(std::log(4.0) / std::log(3.0)).epsilon(1e-12));

    // d solves 2 a^d + 3 b^d = 1
    for (double b : {0.1, 0.2, 3.0 - 2.0 * std::numbers::sqrt2}) {
        const Spec spec = Spec::quadratic(b, 0);
        const double d = snowflake::boxdim_closed_form(spec);
        CHECK(2.0 * std::pow(spec.a, d) + 3.0 * std::pow(spec.b, d) ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK(snowflake::boxdim_closed_form(Spec::quadratic(0.1, 0)) ==
          doctest::Approx(1.15965).epsilon(1e-4));
    CHECK(snowflake::boxdim_closed_form(Spec::quadratic(0.2, 0)) ==
          doctest::Approx(1.2811).epsilon(1e-4));
    // a = sqrt(2) - 1, b = a^2 puts the maps on a lattice and the equation
    // collapses to 3 x^2 + 2 x = 1 with x = a^d, so d = log 3 / log(1 + sqrt 2).
    const double lattice_b = 3.0 - 2.0 * std::numbers::sqrt2;
    CHECK(snowflake::boxdim_closed_form(Spec::quadratic(lattice_b, 0)) ==
          doctest::Approx(std::log(3.0) / std::log(1.0 + std::numbers::sqrt2))
              .epsilon(1e-10));
}

TEST_CASE("invalid specs are rejected") {
    CHECK_THROWS_AS((void)snowflake::snowflake_polygon(Spec::classic(-1)),
                    ConfigError);
    CHECK_THROWS_AS((void)snowflake::snowflake_polygon(Spec::classic(9)),
                    ConfigError);
    CHECK_THROWS_AS((void)snowflake::ifs_branches(Spec::quadratic(0.0, 1)),
                    ConfigError);
    CHECK_THROWS_AS((void)snowflake::ifs_branches(Spec::quadratic(1.0, 1)),
                    ConfigError);
    Spec bad = Spec::quadratic(0.2, 1);
    bad.a = 0.5;  // breaks 2a + b = 1
    CHECK_THROWS_AS((void)snowflake::ifs_branches(bad), ConfigError);
    CHECK_THROWS_AS((void)snowflake::area_at_level(Spec::classic(2), -1),
                    ConfigError);
}

TEST_CASE("construction is deterministic") {
    const auto p = snowflake::snowflake_polygon(Spec::quadratic(0.2, 3));
    const auto q = snowflake::snowflake_polygon(Spec::quadratic(0.2, 3));
    REQUIRE(p.vertices.size() == q.vertices.size());
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        CHECK(p.vertices[i].x == q.vertices[i].x);
        CHECK(p.vertices[i].y == q.vertices[i].y);
    }
}

}  // TEST_SUITE
