#include <cmath>
#include <set>

#include "doctest.h"
#include "fdrum/errors.hpp"
#include "fdrum/julia.hpp"
#include "fdrum/mesh.hpp"
#include "fdrum/snowflake.hpp"

using namespace fdrum;
using mesh::TriMesh;

namespace {

julia::RasterGrid disk_grid(double resolution, int max_iter) {
    julia::JuliaSpec spec;
    spec.c = {0, 0};
    spec.resolution = resolution;
    spec.max_iter = max_iter;
    return julia::crop_to_filled(julia::rasterize_filled(spec), 1);
}

std::size_t edge_count(const TriMesh& m) {
    std::set<std::pair<std::int32_t, std::int32_t>> edges;
    for (const auto& t : m.triangles)
        for (int e = 0; e < 3; ++e) {
            auto a = t[e], b = t[(e + 1) % 3];
            edges.insert({std::min(a, b), std::max(a, b)});
        }
    return edges.size();
}

}  // namespace

TEST_SUITE("mesh") {

TEST_CASE("classic snowflake meshes onto the exact triangular lattice") {
    const auto spec = snowflake::Spec::classic(2);
    const auto m = mesh::mesh_snowflake(spec, 0);
    const auto stats = mesh::analyze(m);
    CHECK(stats.components == 1);
    CHECK(stats.holes == 0);
    CHECK(stats.v - stats.e + stats.t == 1);
    CHECK(stats.boundary_edges == 3 * 16);  // one lattice edge per polygon edge
    CHECK(m.area() ==
          doctest::Approx(snowflake::area_at_level(spec, 2)).epsilon(1e-13));
    // every triangle is equilateral with side 3^-2
    for (std::size_t t = 0; t < m.triangle_count(); ++t) {
        const auto& tri = m.triangles[t];
        for (int e = 0; e < 3; ++e) {
            const Vec2 d = m.vertices[tri[(e + 1) % 3]] - m.vertices[tri[e]];
            CHECK(d.norm() == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("quadratic snowflake mesh reproduces the exact area") {
    const auto spec = snowflake::Spec::quadratic(0.2, 2);
    const auto m = mesh::mesh_snowflake(spec, 0);
    const auto stats = mesh::analyze(m);
    CHECK(stats.components == 1);
    CHECK(stats.holes == 0);
    CHECK(m.area() ==
          doctest::Approx(snowflake::area_at_level(spec, 2)).epsilon(1e-12));
}

TEST_CASE("raster meshes split every filled pixel into two triangles") {
    const auto grid = disk_grid(24, 40);
    const auto m = mesh::mesh_from_raster(grid);
    CHECK(m.triangle_count() == 2 * std::size_t(grid.filled_count()));
    CHECK(m.area() == doctest::Approx(julia::pixel_area(grid)).epsilon(1e-13));
    const auto stats = mesh::analyze(m);
    CHECK(stats.components == 1);
    CHECK(stats.holes == 0);
    for (std::size_t t = 0; t < m.triangle_count(); ++t)
        CHECK(m.triangle_area(t) ==
              doctest::Approx(0.5 * grid.pixel_size * grid.pixel_size)
                  .epsilon(1e-12));
}

TEST_CASE("midpoint refinement quarters triangles and preserves area") {
    const auto m = mesh::mesh_from_raster(disk_grid(16, 40));
    const std::size_t e = edge_count(m);
    const auto r = mesh::refine(m);
    CHECK(r.vertex_count() == m.vertex_count() + e);
    CHECK(r.triangle_count() == 4 * m.triangle_count());
    CHECK(r.area() == doctest::Approx(m.area()).epsilon(1e-13));
    const auto before = mesh::analyze(m);
    const auto after = mesh::analyze(r);
    CHECK(after.components == before.components);
    CHECK(after.holes == before.holes);
    CHECK(after.boundary_edges == 2 * before.boundary_edges);
}

TEST_CASE("finalize rejects broken meshes") {
    TriMesh cw;
    cw.vertices = {{0, 0}, {1, 0}, {0, 1}};
    cw.triangles = {{0, 2, 1}};
    CHECK_THROWS_AS(mesh::finalize(cw), ConfigError);

    TriMesh degenerate;
    degenerate.vertices = {{0, 0}, {1, 0}, {2, 0}};
    degenerate.triangles = {{0, 1, 2}};
    CHECK_THROWS_AS(mesh::finalize(degenerate), ConfigError);

    TriMesh fan;  // three positively oriented triangles share the edge 0-1
    fan.vertices = {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0.5, 2}};
    fan.triangles = {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}};
    CHECK_THROWS_AS(mesh::finalize(fan), ConfigError);

    TriMesh empty;  // nothing to validate, nothing to flag
    CHECK_NOTHROW(mesh::finalize(empty));
    CHECK(empty.on_boundary.empty());
}

TEST_CASE("budgets cap the construction") {
    CHECK_THROWS_AS((void)mesh::mesh_snowflake(snowflake::Spec::classic(4), 0,
                                               100),
                    BudgetError);
    const auto grid = disk_grid(24, 40);
    CHECK_THROWS_AS((void)mesh::mesh_from_raster(grid, 10), BudgetError);
    const auto m = mesh::mesh_from_raster(grid);
    CHECK_THROWS_AS((void)mesh::refine(m, 10), BudgetError);
    CHECK_THROWS_AS((void)mesh::mesh_snowflake(snowflake::Spec::classic(2), -1),
                    ConfigError);
}

TEST_CASE("meshing an empty raster fails cleanly") {
    julia::RasterGrid empty;
    empty.width = 4;
    empty.height = 4;
    empty.pixel_size = 0.5;
    empty.bits.assign(16, 0);
    CHECK_THROWS_AS((void)mesh::mesh_from_raster(empty), ConfigError);
}

TEST_CASE("mesh construction is deterministic") {
    const auto a = mesh::mesh_snowflake(snowflake::Spec::classic(3), 1);
    const auto b = mesh::mesh_snowflake(snowflake::Spec::classic(3), 1);
    REQUIRE(a.vertex_count() == b.vertex_count());
    REQUIRE(a.triangle_count() == b.triangle_count());
    for (std::size_t i = 0; i < a.vertices.size(); ++i) {
        CHECK(a.vertices[i].x == b.vertices[i].x);
        CHECK(a.vertices[i].y == b.vertices[i].y);
    }
    CHECK(a.triangles == b.triangles);
}

}  // TEST_SUITE
