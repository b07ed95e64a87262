#include "fdrum/julia.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fdrum/errors.hpp"

namespace fdrum::julia {

namespace {

void validate(const JuliaSpec& spec) {
    if (spec.max_iter < 1) throw ConfigError("max_iter must be positive");
    if (spec.escape_radius < 2.0)
        throw ConfigError("escape radius must be at least 2");
    if (!(spec.resolution > 0.0))
        throw ConfigError("resolution must be positive");
    if (!(spec.bbox.width() > 0.0 && spec.bbox.height() > 0.0))
        throw ConfigError("bounding box is empty");
}

// Escape test on raw coordinates; written so that the orbit arithmetic of
// (x, -y) with real c and of (-x, -y) with any c is the bitwise mirror of
// the orbit of (x, y). This keeps symmetric grids exactly symmetric.
inline bool stays_bounded(double x, double y, double cre, double cim,
                          int max_iter, double r2) {
    for (int n = 1; n <= max_iter; ++n) {
        const double xx = x * x, yy = y * y;
        if (xx + yy > r2) return false;
        const double nx = xx - yy + cre;
        y = 2.0 * x * y + cim;
        x = nx;
    }
    return true;
}

}  // namespace

std::int64_t RasterGrid::filled_count() const {
    return std::count_if(bits.begin(), bits.end(),
                         [](std::uint8_t b) { return b != 0; });
}

std::optional<int> escape_iterations(Complex z, Complex c, int max_iter,
                                     double radius) {
    const double r2 = radius * radius;
    double x = z.real(), y = z.imag();
    for (int n = 1; n <= max_iter; ++n) {
        if (x * x + y * y > r2) return n;
        const double nx = x * x - y * y + c.real();
        y = 2.0 * x * y + c.imag();
        x = nx;
    }
    return std::nullopt;
}

RasterGrid rasterize_filled(const JuliaSpec& spec) {
    validate(spec);
    RasterGrid g;
    g.width = std::max(1, static_cast<int>(
                              std::lround(spec.bbox.width() * spec.resolution)));
    g.height = std::max(1, static_cast<int>(std::lround(spec.bbox.height() *
                                                        spec.resolution)));
    if (g.size() > spec.pixel_budget)
        throw BudgetError("pixel budget exceeded: " + std::to_string(g.size()) +
                          " > " + std::to_string(spec.pixel_budget));
    g.pixel_size = 1.0 / spec.resolution;
    g.center = {0.5 * (spec.bbox.lo.x + spec.bbox.hi.x),
                0.5 * (spec.bbox.lo.y + spec.bbox.hi.y)};
    g.bits.assign(static_cast<std::size_t>(g.size()), 0);

    const double r2 = spec.escape_radius * spec.escape_radius;
    const double cre = spec.c.real(), cim = spec.c.imag();
    std::size_t idx = 0;
    for (int j = 0; j < g.height; ++j) {
        const double y = g.center.y + ((j + 0.5) - 0.5 * g.height) * g.pixel_size;
        for (int i = 0; i < g.width; ++i, ++idx) {
            const double x =
                g.center.x + ((i + 0.5) - 0.5 * g.width) * g.pixel_size;
            g.bits[idx] = stays_bounded(x, y, cre, cim, spec.max_iter, r2);
        }
    }
    return g;
}

double pixel_area(const RasterGrid& grid) {
    return static_cast<double>(grid.filled_count()) * grid.pixel_size *
           grid.pixel_size;
}

bool mandelbrot_member(Complex c, int max_iter) {
    return stays_bounded(0.0, 0.0, c.real(), c.imag(), max_iter, 4.0);
}

ComponentSet interior_components(const RasterGrid& grid) {
    ComponentSet cs;
    cs.width = grid.width;
    cs.height = grid.height;
    cs.labels.assign(grid.bits.size(), 0);

    const int w = grid.width, h = grid.height;
    std::vector<std::int64_t> raw_counts;
    std::vector<std::int64_t> first_pixel;
    std::vector<std::int64_t> stack;
    std::int32_t next = 0;

    for (std::int64_t start = 0; start < grid.size(); ++start) {
        if (!grid.bits[start] || cs.labels[start] != 0) continue;
        ++next;
        first_pixel.push_back(start);
        std::int64_t count = 0;
        stack.assign(1, start);
        cs.labels[start] = next;
        while (!stack.empty()) {
            const std::int64_t p = stack.back();
            stack.pop_back();
            ++count;
            const int i = static_cast<int>(p % w);
            const int j = static_cast<int>(p / w);
            const std::int64_t nb[4] = {i > 0 ? p - 1 : -1,
                                        i + 1 < w ? p + 1 : -1,
                                        j > 0 ? p - w : -1,
                                        j + 1 < h ? p + w : -1};
            for (std::int64_t q : nb) {
                if (q >= 0 && grid.bits[q] && cs.labels[q] == 0) {
                    cs.labels[q] = next;
                    stack.push_back(q);
                }
            }
        }
        raw_counts.push_back(count);
    }

    // Rank by decreasing size, ties by first appearance in row major order.
    std::vector<std::int32_t> order(next);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
        if (raw_counts[a] != raw_counts[b]) return raw_counts[a] > raw_counts[b];
        return first_pixel[a] < first_pixel[b];
    });
    std::vector<std::int32_t> rank(next);
    cs.pixel_counts.resize(next);
    for (std::int32_t r = 0; r < next; ++r) {
        rank[order[r]] = r + 1;
        cs.pixel_counts[r] = raw_counts[order[r]];
    }
    for (std::int32_t& l : cs.labels)
        if (l != 0) l = rank[l - 1];
    return cs;
}

RasterGrid boundary_cells(const RasterGrid& grid) {
    RasterGrid b = grid;
    b.bits.assign(grid.bits.size(), 0);
    const int w = grid.width, h = grid.height;
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
            const std::size_t p = static_cast<std::size_t>(j) * w + i;
            if (!grid.bits[p]) continue;
            const bool edge = i == 0 || i + 1 == w || j == 0 || j + 1 == h ||
                              !grid.bits[p - 1] || !grid.bits[p + 1] ||
                              !grid.bits[p - w] || !grid.bits[p + w];
            b.bits[p] = edge;
        }
    }
    return b;
}

namespace {

RasterGrid crop_range(const RasterGrid& grid, int i0, int i1, int j0, int j1,
                      int margin,
                      const std::vector<std::uint8_t>& keep) {
    i0 = std::max(0, i0 - margin);
    j0 = std::max(0, j0 - margin);
    i1 = std::min(grid.width - 1, i1 + margin);
    j1 = std::min(grid.height - 1, j1 + margin);

    RasterGrid out;
    out.width = i1 - i0 + 1;
    out.height = j1 - j0 + 1;
    out.pixel_size = grid.pixel_size;
    // Midpoint of the retained pixel range; keeps symmetric crops exact.
    out.center = {grid.center.x +
                      0.5 * ((i0 + i1 + 1) - grid.width) * grid.pixel_size,
                  grid.center.y +
                      0.5 * ((j0 + j1 + 1) - grid.height) * grid.pixel_size};
    out.bits.assign(static_cast<std::size_t>(out.size()), 0);
    for (int j = j0; j <= j1; ++j)
        for (int i = i0; i <= i1; ++i) {
            const std::size_t src = static_cast<std::size_t>(j) * grid.width + i;
            if (keep[src])
                out.bits[static_cast<std::size_t>(j - j0) * out.width +
                         (i - i0)] = 1;
        }
    return out;
}

}  // namespace

RasterGrid crop_to_filled(const RasterGrid& grid, int margin_px) {
    int i0 = grid.width, i1 = -1, j0 = grid.height, j1 = -1;
    for (int j = 0; j < grid.height; ++j)
        for (int i = 0; i < grid.width; ++i)
            if (grid.filled(i, j)) {
                i0 = std::min(i0, i);
                i1 = std::max(i1, i);
                j0 = std::min(j0, j);
                j1 = std::max(j1, j);
            }
    if (i1 < 0) throw ConfigError("cannot crop an empty raster");
    return crop_range(grid, i0, i1, j0, j1, margin_px, grid.bits);
}

RasterGrid component_grid(const RasterGrid& grid, const ComponentSet& comps,
                          int id, int margin_px) {
    if (id < 1 || id > comps.count())
        throw ConfigError("component id out of range");
    std::vector<std::uint8_t> keep(grid.bits.size(), 0);
    int i0 = grid.width, i1 = -1, j0 = grid.height, j1 = -1;
    for (int j = 0; j < grid.height; ++j)
        for (int i = 0; i < grid.width; ++i) {
            const std::size_t p = static_cast<std::size_t>(j) * grid.width + i;
            if (comps.labels[p] == id) {
                keep[p] = 1;
                i0 = std::min(i0, i);
                i1 = std::max(i1, i);
                j0 = std::min(j0, j);
                j1 = std::max(j1, j);
            }
        }
    return crop_range(grid, i0, i1, j0, j1, margin_px, keep);
}

}  // namespace fdrum::julia
