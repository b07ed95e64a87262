#pragma once

#include <complex>
#include <vector>

#include "fdrum/geometry.hpp"
#include "fdrum/julia.hpp"
#include "fdrum/snowflake.hpp"

namespace fdrum::boxdim {

// Decreasing box sizes with the occupancy count for each. Counts are kept as
// doubles so synthetic power laws can be fitted exactly in tests; counts
// coming from count_boxes are integral.
struct BoxCountSeries {
    std::vector<double> sizes;
    std::vector<double> counts;
};

struct LogLogFit {
    double dimension = 0.0;
    double intercept = 0.0;
    double fit_error = 0.0;   // RMS residual of log(count) vs log(1/size)
};

// Number of grid cells of the given size (anchored at anchor) that contain at
// least one of the points. Points exactly on a cell's lower face (within 1e-9
// in grid units) count toward the cell below, clamped at the anchor cell, so
// that a closed segment [0,1] at size 1/4 occupies 4 cells, not 5.
std::int64_t count_boxes(const std::vector<Vec2>& points, double box_size,
                         const Vec2& anchor);

// Same, over the centers of the marked cells of a raster (typically the
// boundary cells of a filled set).
std::int64_t count_boxes(const julia::RasterGrid& marked, double box_size,
                         const Vec2& anchor);

// Geometric size schedule: start at diameter/8, halve while size >= min_size.
// The anchor is the lower left corner of the points' bounding box.
BoxCountSeries box_count_series(const std::vector<Vec2>& points,
                                double min_size);

// Least squares fit of log(count) against log(1/size). Requires at least
// three distinct sizes.
LogLogFit fit_dimension(const BoxCountSeries& series);

// Boundary sampling for a snowflake: vertices of the polygon two levels
// finer than the spec (capped at the level limit) so no box of the schedule
// is undersampled; the schedule floor is two minimal edge lengths of the
// spec-level polygon.
BoxCountSeries snowflake_series(const snowflake::Spec& spec);

// Schedule floor of two pixel widths over the marked cells.
BoxCountSeries raster_series(const julia::RasterGrid& marked);

struct SweepRow {
    std::complex<double> c;
    int resolution_px = 0;   // pixels across the 4:3 window width
    double dimension = 0.0;
    double fit_error = 0.0;
};

// Box dimension of the filled-set boundary of z^2 + c over a grid of
// parameters and image widths (window [-2,2] x [-1.5,1.5], 4:3). Rows appear
// in input order, resolutions innermost. Parameters whose raster has no
// boundary yield NaN entries.
std::vector<SweepRow> dimension_sweep(
    const std::vector<std::complex<double>>& c_values,
    const std::vector<int>& resolutions, int max_iter = 200);

}  // namespace fdrum::boxdim
