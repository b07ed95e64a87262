#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fdrum/errors.hpp"
#include "fdrum/julia.hpp"

using namespace fdrum;
using julia::Complex;
using julia::JuliaSpec;
using julia::RasterGrid;

namespace {

JuliaSpec spec_for(Complex c, double resolution, int max_iter) {
    JuliaSpec s;
    s.c = c;
    s.resolution = resolution;
    s.max_iter = max_iter;
    return s;
}

}  // namespace

TEST_SUITE("julia") {

TEST_CASE("escape count is the first orbit index outside the radius") {
    // orbit of 0 under z^2 + 1: 0, 1, 2, 5, ...; the fourth element is 5 > 2
    auto n = julia::escape_iterations({0, 0}, {1, 0}, 10, 2.0);
    REQUIRE(n.has_value());
    CHECK(*n == 4);

    CHECK(!julia::escape_iterations({0, 0}, {2, 0}, 2, 2.0).has_value());
    auto m = julia::escape_iterations({0, 0}, {2, 0}, 3, 2.0);
    REQUIRE(m.has_value());
    CHECK(*m == 3);

    // the critical orbit of the period-two center never leaves the disk
    CHECK(!julia::escape_iterations({0, 0}, {-1, 0}, 1000, 2.0).has_value());

    // a start point already outside counts as the first element
    auto k = julia::escape_iterations({3, 0}, {0, 0}, 5, 2.0);
    REQUIRE(k.has_value());
    CHECK(*k == 1);
}

TEST_CASE("filled set of c = 0 has area near pi") {
    const auto grid = julia::rasterize_filled(spec_for({0, 0}, 256, 60));
    CHECK(julia::pixel_area(grid) ==
          doctest::Approx(std::numbers::pi).epsilon(0.006));
}

TEST_CASE("real parameters give mirror symmetric rasters") {
    const auto grid = julia::rasterize_filled(spec_for({0.2, 0}, 64, 50));
    for (int j = 0; j < grid.height; ++j)
        for (int i = 0; i < grid.width; ++i)
            CHECK(grid.filled(i, j) == grid.filled(i, grid.height - 1 - j));
}

TEST_CASE("every filled set is centrally symmetric") {
    const auto grid = julia::rasterize_filled(spec_for({0.3, 0.4}, 64, 50));
    for (int j = 0; j < grid.height; ++j)
        for (int i = 0; i < grid.width; ++i)
            CHECK(grid.filled(i, j) ==
                  grid.filled(grid.width - 1 - i, grid.height - 1 - j));
}

TEST_CASE("raising the iteration cap only removes pixels") {
    const auto coarse = julia::rasterize_filled(spec_for({-1, 0}, 64, 40));
    const auto fine = julia::rasterize_filled(spec_for({-1, 0}, 64, 100));
    REQUIRE(coarse.size() == fine.size());
    for (std::size_t p = 0; p < coarse.bits.size(); ++p)
        if (fine.bits[p]) CHECK(coarse.bits[p]);
    CHECK(fine.filled_count() <= coarse.filled_count());
}

TEST_CASE("crop keeps every filled pixel inside a one pixel margin") {
    const auto grid = julia::rasterize_filled(spec_for({0, 0}, 64, 50));
    const auto tight = julia::crop_to_filled(grid, 1);
    CHECK(tight.filled_count() == grid.filled_count());
    CHECK(tight.width <= grid.width);
    for (int i = 0; i < tight.width; ++i) {
        CHECK(!tight.filled(i, 0));
        CHECK(!tight.filled(i, tight.height - 1));
    }
    for (int j = 0; j < tight.height; ++j) {
        CHECK(!tight.filled(0, j));
        CHECK(!tight.filled(tight.width - 1, j));
    }
    // pixel centers must be preserved, not resampled
    CHECK(tight.pixel_size == grid.pixel_size);

    RasterGrid empty;
    empty.width = 4;
    empty.height = 4;
    empty.pixel_size = 1.0;
    empty.bits.assign(16, 0);
    CHECK_THROWS_AS((void)julia::crop_to_filled(empty, 1), ConfigError);
}

TEST_CASE("boundary cells touch the complement") {
    const auto grid = julia::rasterize_filled(spec_for({0, 0}, 128, 60));
    const auto ring = julia::boundary_cells(grid);
    std::int64_t count = 0;
    for (int j = 0; j < ring.height; ++j) {
        for (int i = 0; i < ring.width; ++i) {
            if (!ring.filled(i, j)) continue;
            ++count;
            CHECK(grid.filled(i, j));
            bool exposed = false;
            for (auto [di, dj] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
                const int ni = i + di, nj = j + dj;
                if (ni < 0 || nj < 0 || ni >= grid.width || nj >= grid.height ||
                    !grid.filled(ni, nj))
                    exposed = true;
            }
            CHECK(exposed);
        }
    }
    // a circle of radius 1 at 128 px per unit crosses about 2 pi 128 cells
    CHECK(count > 600);
    CHECK(count < 1000);
}

TEST_CASE("component labels partition the filled pixels by size") {
    const auto grid =
        julia::rasterize_filled(spec_for(julia::kBasilica, 256, 170));
    const auto comps = julia::interior_components(grid);
    REQUIRE(comps.count() >= 5);
    std::int64_t labeled = 0;
    for (std::size_t p = 0; p < grid.bits.size(); ++p) {
        CHECK((comps.labels[p] != 0) == (grid.bits[p] != 0));
        if (comps.labels[p] != 0) ++labeled;
    }
    CHECK(labeled == grid.filled_count());
    std::int64_t sum = 0;
    for (int id = 1; id <= comps.count(); ++id) {
        if (id > 1) CHECK(comps.pixel_counts[id - 1] <= comps.pixel_counts[id - 2]);
        sum += comps.pixel_counts[id - 1];
    }
    CHECK(sum == grid.filled_count());
    // the two ears of the period-two filled set mirror each other exactly
    CHECK(comps.pixel_counts[1] == comps.pixel_counts[2]);
    CHECK(comps.pixel_counts[3] == comps.pixel_counts[4]);
}

TEST_CASE("component subgrids carry exactly one component") {
    RasterGrid grid;
    grid.width = 9;
    grid.height = 5;
    grid.pixel_size = 1.0;
    grid.bits.assign(45, 0);
    auto set = [&](int i, int j) { grid.bits[std::size_t(j) * 9 + i] = 1; };
    for (int j = 1; j <= 3; ++j)
        for (int i = 1; i <= 3; ++i) set(i, j);  // 3x3 blob
    set(7, 2);
    set(7, 3);  // 1x2 blob
    const auto comps = julia::interior_components(grid);
    REQUIRE(comps.count() == 2);
    CHECK(comps.pixel_counts[0] == 9);
    CHECK(comps.pixel_counts[1] == 2);

    const auto big = julia::component_grid(grid, comps, 1, 1);
    CHECK(big.filled_count() == 9);
    CHECK(big.width == 5);
    CHECK(big.height == 5);
    const auto small = julia::component_grid(grid, comps, 2, 1);
    CHECK(small.filled_count() == 2);
    CHECK_THROWS_AS((void)julia::component_grid(grid, comps, 0, 1), ConfigError);
    CHECK_THROWS_AS((void)julia::component_grid(grid, comps, 3, 1), ConfigError);
}

TEST_CASE("well known parameters sit inside the Mandelbrot set") {
    CHECK(julia::mandelbrot_member({0, 0}, 200));
    CHECK(julia::mandelbrot_member(julia::kBasilica, 200));
    CHECK(julia::mandelbrot_member(julia::kRabbit, 200));
    CHECK(!julia::mandelbrot_member({0.26, 0}, 200));
    CHECK(!julia::mandelbrot_member({-2.1, 0}, 200));
    CHECK(!julia::mandelbrot_member({1, 0}, 200));
}

TEST_CASE("bad raster parameters are rejected") {
    CHECK_THROWS_AS((void)julia::rasterize_filled(spec_for({0, 0}, 64, 0)),
                    ConfigError);
    CHECK_THROWS_AS((void)julia::rasterize_filled(spec_for({0, 0}, -1, 50)),
                    ConfigError);
    JuliaSpec narrow = spec_for({0, 0}, 64, 50);
    narrow.escape_radius = 1.0;  // must dominate the filled set
    CHECK_THROWS_AS((void)julia::rasterize_filled(narrow), ConfigError);
    JuliaSpec inverted = spec_for({0, 0}, 64, 50);
    inverted.bbox = {{1.0, 1.0}, {-1.0, -1.0}};
    CHECK_THROWS_AS((void)julia::rasterize_filled(inverted), ConfigError);
    CHECK_THROWS_AS((void)julia::rasterize_filled(spec_for({0, 0}, 1e5, 50)),
                    BudgetError);
}

}  // TEST_SUITE
