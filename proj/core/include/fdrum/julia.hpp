#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "fdrum/geometry.hpp"

namespace fdrum::julia {

using Complex = std::complex<double>;

// Parameters used throughout: the Basilica and Douady Rabbit centers and the
// two parabolic junction points of the Mandelbrot set on / off the real axis.
inline constexpr Complex kBasilica{-1.0, 0.0};
inline constexpr Complex kRabbit{-0.122561, 0.744862};
inline constexpr Complex kJunctionReal{-0.75, 0.0};
inline const Complex kJunctionThird{-0.125, 3.0 * 1.7320508075688772 / 8.0};

inline constexpr std::int64_t kPixelBudget = 100'000'000;

struct JuliaSpec {
    Complex c{0.0, 0.0};
    int max_iter = 100;
    double escape_radius = 2.0;       // must stay >= 2
    double resolution = 256.0;        // pixels per unit length
    BBox bbox{{-2.0, -2.0}, {2.0, 2.0}};
    std::int64_t pixel_budget = kPixelBudget;
};

// Pixel raster over an axis aligned box. Pixel (i, j) has its center at
// center_of(i, j); index layout is row major, j * width + i, with j = 0 the
// bottom row. Centers are computed relative to the box center so that grids
// over origin-symmetric boxes are exactly symmetric in floating point.
struct RasterGrid {
    int width = 0;
    int height = 0;
    double pixel_size = 0.0;
    Vec2 center{0.0, 0.0};
    std::vector<std::uint8_t> bits;

    std::int64_t size() const {
        return static_cast<std::int64_t>(width) * height;
    }
    bool filled(int i, int j) const {
        return bits[static_cast<std::size_t>(j) * width + i] != 0;
    }
    Vec2 center_of(int i, int j) const {
        return {center.x + ((i + 0.5) - 0.5 * width) * pixel_size,
                center.y + ((j + 0.5) - 0.5 * height) * pixel_size};
    }
    Vec2 origin() const {
        return {center.x - 0.5 * width * pixel_size,
                center.y - 0.5 * height * pixel_size};
    }
    std::int64_t filled_count() const;
};

// Connected components of the filled pixels, 4-neighbor adjacency.
// labels holds 0 for unfilled pixels and 1..count() for filled ones;
// component ids are ordered by decreasing pixel count, ties broken by the
// smaller first (row major) pixel index.
struct ComponentSet {
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> labels;
    std::vector<std::int64_t> pixel_counts;  // indexed by id - 1

    int count() const { return static_cast<int>(pixel_counts.size()); }
};

// 1-based index of the first element of the orbit z, p(z), p^2(z), ... whose
// modulus exceeds radius; empty if no element among the first max_iter does.
std::optional<int> escape_iterations(Complex z, Complex c, int max_iter,
                                     double radius);

// Center-point escape-time raster of the filled set: a pixel is filled when
// its center never escapes within max_iter orbit elements.
RasterGrid rasterize_filled(const JuliaSpec& spec);

double pixel_area(const RasterGrid& grid);

bool mandelbrot_member(Complex c, int max_iter);

ComponentSet interior_components(const RasterGrid& grid);

// Filled pixels with at least one unfilled (or out of grid) 4-neighbor.
RasterGrid boundary_cells(const RasterGrid& grid);

// Tight bounding subgrid of the filled pixels plus margin_px on each side.
// Symmetric inputs crop to exactly symmetric outputs.
RasterGrid crop_to_filled(const RasterGrid& grid, int margin_px = 1);

// Subgrid holding one labeled component (plus margin), for per-component
// meshing.
RasterGrid component_grid(const RasterGrid& grid, const ComponentSet& comps,
                          int id, int margin_px = 1);

}  // namespace fdrum::julia
