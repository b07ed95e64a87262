#include "fdrum/boxdim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "fdrum/errors.hpp"

namespace fdrum::boxdim {

namespace {

inline std::int64_t cell_index(double coord, double anchor, double inv_size) {
    double t = (coord - anchor) * inv_size;
    if (t < 0.0 && t > -1e-9) t = 0.0;
    std::int64_t k = static_cast<std::int64_t>(std::floor(t));
    if (t - static_cast<double>(k) <= 1e-9 && k >= 1) --k;
    return k;
}

std::int64_t count_packed(std::vector<std::uint64_t>& cells) {
    std::sort(cells.begin(), cells.end());
    return std::unique(cells.begin(), cells.end()) - cells.begin();
}

constexpr std::uint64_t kBias = 1u << 31;

}  // namespace

std::int64_t count_boxes(const std::vector<Vec2>& points, double box_size,
                         const Vec2& anchor) {
    if (!(box_size > 0.0)) throw ConfigError("box size must be positive");
    const double inv = 1.0 / box_size;
    std::vector<std::uint64_t> cells;
    cells.reserve(points.size());
    for (const Vec2& p : points) {
        const std::uint64_t ix = kBias + cell_index(p.x, anchor.x, inv);
        const std::uint64_t iy = kBias + cell_index(p.y, anchor.y, inv);
        cells.push_back(ix << 32 | iy);
    }
    return count_packed(cells);
}

std::int64_t count_boxes(const julia::RasterGrid& marked, double box_size,
                         const Vec2& anchor) {
    if (!(box_size > 0.0)) throw ConfigError("box size must be positive");
    const double inv = 1.0 / box_size;
    std::vector<std::uint64_t> cells;
    for (int j = 0; j < marked.height; ++j)
        for (int i = 0; i < marked.width; ++i)
            if (marked.filled(i, j)) {
                const Vec2 p = marked.center_of(i, j);
                const std::uint64_t ix = kBias + cell_index(p.x, anchor.x, inv);
                const std::uint64_t iy = kBias + cell_index(p.y, anchor.y, inv);
                cells.push_back(ix << 32 | iy);
            }
    return count_packed(cells);
}

namespace {

BoxCountSeries series_over_points(const std::vector<Vec2>& points,
                                  double min_size) {
    if (points.empty()) throw ConfigError("no points to count");
    const BBox box = BBox::of(points);
    const Vec2 anchor = box.lo;
    BoxCountSeries s;
    for (double size = box.diameter() / 8.0; size >= min_size; size *= 0.5) {
        s.sizes.push_back(size);
        s.counts.push_back(
            static_cast<double>(count_boxes(points, size, anchor)));
    }
    if (s.sizes.size() < 3)
        throw ConfigError("degenerate box size schedule (fewer than 3 sizes)");
    return s;
}

}  // namespace

BoxCountSeries box_count_series(const std::vector<Vec2>& points,
                                double min_size) {
    return series_over_points(points, min_size);
}

LogLogFit fit_dimension(const BoxCountSeries& series) {
    const std::size_t n = series.sizes.size();
    if (n < 3 || series.counts.size() != n)
        throw ConfigError("box count series needs at least 3 entries");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(series.sizes[i] > 0.0) || !(series.counts[i] > 0.0))
            throw ConfigError("box count series entries must be positive");
        const double x = std::log(1.0 / series.sizes[i]);
        const double y = std::log(series.counts[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    // det >= 0 by Cauchy-Schwarz; it vanishes exactly when all sizes agree
    // (including the all-ones case where sxx itself is zero)
    const double det = n * sxx - sx * sx;
    if (det <= 1e-14 * n * sxx)
        throw ConfigError("box sizes are not distinct enough to fit");
    LogLogFit fit;
    fit.dimension = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.dimension * sx) / n;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(1.0 / series.sizes[i]);
        const double y = std::log(series.counts[i]);
        const double r = y - (fit.dimension * x + fit.intercept);
        ss += r * r;
    }
    fit.fit_error = std::sqrt(ss / n);
    return fit;
}

BoxCountSeries snowflake_series(const snowflake::Spec& spec) {
    snowflake::Spec fine = spec;
    fine.level = std::min(spec.level + 2, snowflake::kMaxLevel);
    const snowflake::Polygon poly = snowflake_polygon(fine);
    const double ratio = spec.kind == snowflake::Kind::classic
                             ? 1.0 / 3.0
                             : std::min(spec.a, spec.b);
    const double min_edge = std::pow(ratio, spec.level);
    return series_over_points(poly.vertices, 2.0 * min_edge);
}

BoxCountSeries raster_series(const julia::RasterGrid& marked) {
    std::vector<Vec2> pts;
    for (int j = 0; j < marked.height; ++j)
        for (int i = 0; i < marked.width; ++i)
            if (marked.filled(i, j)) pts.push_back(marked.center_of(i, j));
    return series_over_points(pts, 2.0 * marked.pixel_size);
}

std::vector<SweepRow> dimension_sweep(
    const std::vector<std::complex<double>>& c_values,
    const std::vector<int>& resolutions, int max_iter) {
    std::vector<SweepRow> rows;
    for (const auto& c : c_values) {
        for (int width_px : resolutions) {
            if (width_px < 16) throw ConfigError("sweep image width too small");
            julia::JuliaSpec js;
            js.c = c;
            js.max_iter = max_iter;
            js.bbox = {{-2.0, -1.5}, {2.0, 1.5}};
            js.resolution = width_px / 4.0;
            SweepRow row{c, width_px, std::numeric_limits<double>::quiet_NaN(),
                         std::numeric_limits<double>::quiet_NaN()};
            const julia::RasterGrid grid = rasterize_filled(js);
            const julia::RasterGrid edge = boundary_cells(grid);
            if (edge.filled_count() > 0) {
                try {
                    const LogLogFit fit = fit_dimension(raster_series(edge));
                    row.dimension = fit.dimension;
                    row.fit_error = fit.fit_error;
                } catch (const ConfigError&) {
                    // leave the row as NaN; the set was too small to fit
                }
            }
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace fdrum::boxdim
