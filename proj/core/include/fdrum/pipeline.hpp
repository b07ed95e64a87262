#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fdrum/fem.hpp"
#include "fdrum/julia.hpp"
#include "fdrum/mesh.hpp"
#include "fdrum/snowflake.hpp"
#include "fdrum/spectral.hpp"

namespace fdrum::pipeline {

struct SolveOptions {
    int k = 10;
    fem::BC bc = fem::BC::dirichlet;
    double tol = fem::kSolverTol;
    std::uint64_t seed = 1;
    std::int64_t triangle_budget = mesh::kTriangleBudget;
};

struct Solution {
    fem::ReducedSystem system;
    fem::Spectrum spectrum;
};

// Assembles P1 matrices on the mesh, applies the boundary condition and
// solves for the smallest opt.k eigenpairs. domain_name and mesh_resolution
// only annotate the spectrum metadata.
Solution solve_mesh(const mesh::TriMesh& mesh, const SolveOptions& opt,
                    const std::string& domain_name, double mesh_resolution);

// Raster of the filled set cropped to content (1 px margin), pixel-split
// mesh, pixel area.
struct JuliaDomain {
    julia::RasterGrid grid;
    mesh::TriMesh mesh;
    double area = 0.0;
};

JuliaDomain build_julia_domain(const julia::JuliaSpec& spec,
                               std::int64_t triangle_budget =
                                   mesh::kTriangleBudget);

// Connected components after `erosion_rounds` rounds of boundary peeling;
// every peeled filled pixel is assigned back to the nearest surviving
// component by breadth-first growth. Separates components that touch only
// through a few pixels at pinch points. rounds = 0 is plain labeling.
julia::ComponentSet labeled_components(const julia::RasterGrid& grid,
                                       int erosion_rounds);

struct QuasicircleOptions {
    double resolution = 512.0;    // raster pixels per unit
    int raster_iterations = 170;  // escape iterations for the raster
    int erosion_rounds = 1;
    int max_groups = 4;           // mirror pairs count as one group
    int k = 6;
    double tol = fem::kSolverTol;
    std::uint64_t seed = 1;
    std::int64_t triangle_budget = mesh::kTriangleBudget;
    // Group labels by descending component size; defaults to "1", "2", ...
    std::vector<std::string> labels;
};

struct Quasicircle {
    std::string label;
    int multiplicity = 1;         // 2 for a mirror pair, spectrum shared
    std::int64_t pixel_count = 0;
    julia::RasterGrid grid;       // component subgrid, for meshing or images
    fem::Spectrum spectrum;       // Dirichlet spectrum of one representative
};

// Interior components of the filled set of z^2 + c grouped into mirror
// pairs (the set is symmetric under z -> -z, so pair members have exactly
// equal pixel counts and identical spectra; one representative is solved).
std::vector<Quasicircle> quasicircle_spectra(julia::Complex c,
                                             const QuasicircleOptions& opt);

std::vector<spectral::LabeledValue> quasicircle_union(
    const std::vector<Quasicircle>& qcs);

struct JuliaRunOptions {
    double resolution = 256.0;
    double escape_radius = 2.0;
    BBox bbox{{-2.0, -2.0}, {2.0, 2.0}};
    double tol = fem::kSolverTol;
    std::uint64_t seed = 1;
    std::int64_t pixel_budget = julia::kPixelBudget;
    std::int64_t triangle_budget = mesh::kTriangleBudget;
};

// First k eigenvalues of the full filled-set raster at each iteration count,
// one column per count. A failed solve flags its column and leaves the rest.
struct IterationComparison {
    julia::Complex c;
    fem::BC bc = fem::BC::dirichlet;
    std::vector<int> iterations;
    std::vector<std::vector<double>> columns;
    std::vector<std::uint8_t> ok;
};

IterationComparison iteration_comparison(julia::Complex c,
                                         const std::vector<int>& iteration_counts,
                                         int k, fem::BC bc,
                                         const JuliaRunOptions& opt);

// First k eigenvalues per parameter c, for eigenvalue flow plots along
// slices of the Mandelbrot plane.
struct SliceRow {
    julia::Complex c;
    std::vector<double> lambdas;
    bool ok = false;
};

std::vector<SliceRow> parameter_slice(const std::vector<julia::Complex>& c_values,
                                      int k, fem::BC bc, int max_iter,
                                      const JuliaRunOptions& opt);

// Sampling of a vertex or per-triangle field on a pixel grid covering the
// mesh bounding box, for image export. Pixels outside the mesh carry
// inside = 0 and value 0.
struct FieldImage {
    int width = 0;
    int height = 0;
    double pixel_size = 0.0;
    Vec2 origin{0.0, 0.0};  // lower left corner of pixel (0, 0)
    std::vector<double> values;  // row major, row 0 at the bottom
    std::vector<std::uint8_t> inside;
};

FieldImage render_vertex_field(const mesh::TriMesh& mesh,
                               const std::vector<double>& u, int width_px);
FieldImage render_cell_field(const mesh::TriMesh& mesh,
                             const std::vector<double>& cell_values,
                             int width_px);

}  // namespace fdrum::pipeline
