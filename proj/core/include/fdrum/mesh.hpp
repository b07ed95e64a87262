#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fdrum/geometry.hpp"
#include "fdrum/julia.hpp"
#include "fdrum/snowflake.hpp"

namespace fdrum::mesh {

inline constexpr std::int64_t kTriangleBudget = 5'000'000;

// Conforming triangle mesh, CCW triangles, no duplicate vertices.
// Boundary flags are derived from edge incidence (an edge shared by exactly
// one triangle is boundary).
struct TriMesh {
    std::vector<Vec2> vertices;
    std::vector<std::array<std::int32_t, 3>> triangles;
    std::vector<std::uint8_t> on_boundary;   // per vertex

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t triangle_count() const { return triangles.size(); }
    double area() const;
    double triangle_area(std::size_t t) const;
    BBox bbox() const { return BBox::of(vertices); }
};

struct MeshStats {
    std::int64_t v = 0, e = 0, t = 0;
    std::int64_t boundary_edges = 0;
    int components = 0;
    int holes = 0;   // components - (V - E + T)
};

// Derives boundary flags and verifies conformity (every edge shared by at
// most two triangles, consistent orientation on shared edges, positive
// triangle areas). Called by all mesh builders; exposed for tests.
void finalize(TriMesh& mesh);

MeshStats analyze(const TriMesh& mesh);

// Classic snowflakes are triangulated exactly by the equilateral lattice of
// pitch 3^-level and then refined; quadratic snowflakes are rasterized at
// pixel pitch b^level / 2^refine_steps and meshed by pixel splitting.
TriMesh mesh_snowflake(const snowflake::Spec& spec, int refine_steps,
                       std::int64_t budget = kTriangleBudget);

// Two right triangles per filled pixel, diagonal from the lower left to the
// upper right corner. Mesh area equals pixel_area(grid) up to rounding.
TriMesh mesh_from_raster(const julia::RasterGrid& grid,
                         std::int64_t budget = kTriangleBudget);

// One regular midpoint (1 -> 4) subdivision.
TriMesh refine(const TriMesh& mesh, std::int64_t budget = kTriangleBudget);

}  // namespace fdrum::mesh
