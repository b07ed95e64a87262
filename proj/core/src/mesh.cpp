#include "fdrum/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "fdrum/errors.hpp"

namespace fdrum::mesh {

namespace {

constexpr double kRoot3 = 1.7320508075688772;

inline std::uint64_t edge_key(std::int32_t a, std::int32_t b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) |
           static_cast<std::uint32_t>(b);
}

// Sorted x crossings of the polygon boundary with the horizontal line at y,
// half open in y so vertices are counted once.
std::vector<double> scanline_crossings(const std::vector<Vec2>& poly,
                                       double y) {
    std::vector<double> xs;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % n];
        if ((p.y <= y && y < q.y) || (q.y <= y && y < p.y))
            xs.push_back(p.x + (y - p.y) * (q.x - p.x) / (q.y - p.y));
    }
    std::sort(xs.begin(), xs.end());
    return xs;
}

struct Int64PairHash {
    std::size_t operator()(std::uint64_t k) const {
        k ^= k >> 33;
        k *= 0xff51afd7ed558ccdULL;
        k ^= k >> 33;
        return static_cast<std::size_t>(k);
    }
};

}  // namespace

double TriMesh::triangle_area(std::size_t t) const {
    const auto& tri = triangles[t];
    const Vec2 e1 = vertices[tri[1]] - vertices[tri[0]];
    const Vec2 e2 = vertices[tri[2]] - vertices[tri[0]];
    return 0.5 * e1.cross(e2);
}

double TriMesh::area() const {
    double a = 0.0;
    for (std::size_t t = 0; t < triangles.size(); ++t) a += triangle_area(t);
    return a;
}

void finalize(TriMesh& mesh) {
    const double scale = mesh.vertices.empty() ? 1.0 : mesh.bbox().diameter();
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t)
        if (!(mesh.triangle_area(t) > 1e-14 * scale * scale))
            throw ConfigError("degenerate or misoriented triangle " +
                              std::to_string(t));

    std::unordered_map<std::uint64_t, int, Int64PairHash> edge_use;
    edge_use.reserve(mesh.triangles.size() * 2);
    for (const auto& tri : mesh.triangles)
        for (int k = 0; k < 3; ++k)
            ++edge_use[edge_key(tri[k], tri[(k + 1) % 3])];

    mesh.on_boundary.assign(mesh.vertices.size(), 0);
    for (const auto& tri : mesh.triangles)
        for (int k = 0; k < 3; ++k) {
            const int uses = edge_use[edge_key(tri[k], tri[(k + 1) % 3])];
            if (uses > 2) throw ConfigError("non-manifold mesh edge");
            if (uses == 1) {
                mesh.on_boundary[tri[k]] = 1;
                mesh.on_boundary[tri[(k + 1) % 3]] = 1;
            }
        }
}

MeshStats analyze(const TriMesh& mesh) {
    MeshStats s;
    s.v = static_cast<std::int64_t>(mesh.vertex_count());
    s.t = static_cast<std::int64_t>(mesh.triangle_count());

    std::unordered_map<std::uint64_t, int, Int64PairHash> edge_use;
    edge_use.reserve(mesh.triangles.size() * 2);
    for (const auto& tri : mesh.triangles)
        for (int k = 0; k < 3; ++k)
            ++edge_use[edge_key(tri[k], tri[(k + 1) % 3])];
    s.e = static_cast<std::int64_t>(edge_use.size());
    for (const auto& [key, uses] : edge_use)
        if (uses == 1) ++s.boundary_edges;

    // Union-find on vertices through edges for the component count.
    std::vector<std::int32_t> parent(mesh.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::int32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& tri : mesh.triangles) {
        const std::int32_t r = find(tri[0]);
        parent[find(tri[1])] = r;
        parent[find(tri[2])] = r;
    }
    int comps = 0;
    for (std::size_t i = 0; i < parent.size(); ++i)
        if (find(static_cast<std::int32_t>(i)) == static_cast<std::int32_t>(i))
            ++comps;
    s.components = comps;
    s.holes = static_cast<int>(comps - (s.v - s.e + s.t));
    return s;
}

namespace {

TriMesh lattice_snowflake(const snowflake::Spec& spec, std::int64_t budget) {
    const snowflake::Polygon poly = snowflake_polygon(spec);
    const double s = std::pow(3.0, -spec.level);
    const double row_h = s * kRoot3 / 2.0;
    const BBox box = poly.bbox();

    TriMesh m;
    std::unordered_map<std::uint64_t, std::int32_t, Int64PairHash> vid;
    auto vertex_at = [&](std::int64_t i, std::int64_t j) {
        const std::uint64_t key =
            (static_cast<std::uint64_t>(i + (1 << 20)) << 32) |
            static_cast<std::uint64_t>(j + (1 << 20));
        auto [it, inserted] = vid.try_emplace(
            key, static_cast<std::int32_t>(m.vertices.size()));
        if (inserted)
            m.vertices.push_back({i * s + j * (0.5 * s), j * row_h});
        return it->second;
    };

    const auto jmin =
        static_cast<std::int64_t>(std::floor(box.lo.y / row_h)) - 1;
    const auto jmax =
        static_cast<std::int64_t>(std::ceil(box.hi.y / row_h)) + 1;

    for (std::int64_t j = jmin; j <= jmax; ++j) {
        // Up triangles (i,j),(i+1,j),(i,j+1) and down triangles
        // (i+1,j),(i+1,j+1),(i,j+1); centroid x is affine in i on each row.
        for (int kind = 0; kind < 2; ++kind) {
            const double f = kind == 0 ? 1.0 / 3.0 : 2.0 / 3.0;
            const double cy = (j + f) * row_h;
            if (cy < box.lo.y || cy > box.hi.y) continue;
            const std::vector<double> xs =
                scanline_crossings(poly.vertices, cy);
            const double c0 = f * s + (j + f) * 0.5 * s;  // centroid x at i=0
            for (std::size_t q = 0; q + 1 < xs.size(); q += 2) {
                const auto ilo = static_cast<std::int64_t>(
                    std::ceil((xs[q] - c0) / s));
                const auto ihi = static_cast<std::int64_t>(
                    std::floor((xs[q + 1] - c0) / s));
                for (std::int64_t i = ilo; i <= ihi; ++i) {
                    if (static_cast<std::int64_t>(m.triangles.size()) >= budget)
                        throw BudgetError("triangle budget exceeded");
                    if (kind == 0)
                        m.triangles.push_back({vertex_at(i, j),
                                               vertex_at(i + 1, j),
                                               vertex_at(i, j + 1)});
                    else
                        m.triangles.push_back({vertex_at(i + 1, j),
                                               vertex_at(i + 1, j + 1),
                                               vertex_at(i, j + 1)});
                }
            }
        }
    }
    if (m.triangles.empty()) throw ConfigError("empty snowflake mesh");
    return m;
}

// Pixel-center raster of the polygon interior, even-odd rule.
julia::RasterGrid rasterize_polygon(const std::vector<Vec2>& poly,
                                    double pitch, std::int64_t budget) {
    BBox box = BBox::of(poly);
    box.expand(pitch);
    julia::RasterGrid g;
    g.width = static_cast<int>(std::ceil(box.width() / pitch));
    g.height = static_cast<int>(std::ceil(box.height() / pitch));
    if (g.size() > 2 * budget)
        throw BudgetError("raster pixel budget exceeded");
    g.pixel_size = pitch;
    g.center = {0.5 * (box.lo.x + box.hi.x), 0.5 * (box.lo.y + box.hi.y)};
    g.bits.assign(static_cast<std::size_t>(g.size()), 0);
    for (int j = 0; j < g.height; ++j) {
        const double y = g.center_of(0, j).y;
        const std::vector<double> xs = scanline_crossings(poly, y);
        for (std::size_t q = 0; q + 1 < xs.size(); q += 2) {
            const double x0 = g.center_of(0, j).x;
            auto ilo = static_cast<std::int64_t>(
                std::ceil((xs[q] - x0) / pitch));
            auto ihi = static_cast<std::int64_t>(
                std::floor((xs[q + 1] - x0) / pitch));
            ilo = std::max<std::int64_t>(ilo, 0);
            ihi = std::min<std::int64_t>(ihi, g.width - 1);
            for (std::int64_t i = ilo; i <= ihi; ++i)
                g.bits[static_cast<std::size_t>(j) * g.width + i] = 1;
        }
    }
    return g;
}

}  // namespace

TriMesh mesh_from_raster(const julia::RasterGrid& grid, std::int64_t budget) {
    const std::int64_t filled = grid.filled_count();
    if (filled == 0) throw ConfigError("empty filled set, nothing to mesh");
    if (2 * filled > budget)
        throw BudgetError("triangle budget exceeded: need " +
                          std::to_string(2 * filled));

    TriMesh m;
    const int w = grid.width, h = grid.height;
    const Vec2 o = grid.origin();
    const double px = grid.pixel_size;
    std::vector<std::int32_t> corner(
        static_cast<std::size_t>(w + 1) * (h + 1), -1);
    auto corner_id = [&](int i, int j) {
        std::int32_t& id = corner[static_cast<std::size_t>(j) * (w + 1) + i];
        if (id < 0) {
            id = static_cast<std::int32_t>(m.vertices.size());
            m.vertices.push_back({o.x + i * px, o.y + j * px});
        }
        return id;
    };

    for (int j = 0; j < h; ++j)
        for (int i = 0; i < w; ++i) {
            if (!grid.filled(i, j)) continue;
            const std::int32_t a = corner_id(i, j);
            const std::int32_t b = corner_id(i + 1, j);
            const std::int32_t c = corner_id(i + 1, j + 1);
            const std::int32_t d = corner_id(i, j + 1);
            m.triangles.push_back({a, b, c});
            m.triangles.push_back({a, c, d});
        }
    finalize(m);
    return m;
}

TriMesh mesh_snowflake(const snowflake::Spec& spec, int refine_steps,
                       std::int64_t budget) {
    if (refine_steps < 0) throw ConfigError("refine steps must be >= 0");
    if (spec.kind == snowflake::Kind::quadratic) {
        const double pitch =
            std::pow(spec.b, spec.level) / std::pow(2.0, refine_steps);
        const snowflake::Polygon poly = snowflake_polygon(spec);
        return mesh_from_raster(rasterize_polygon(poly.vertices, pitch, budget),
                                budget);
    }
    TriMesh m = lattice_snowflake(spec, budget);
    const std::int64_t final_count =
        static_cast<std::int64_t>(m.triangles.size())
        << (2 * refine_steps);
    if (final_count > budget)
        throw BudgetError("triangle budget exceeded after refinement: " +
                          std::to_string(final_count));
    finalize(m);
    for (int r = 0; r < refine_steps; ++r) m = refine(m, budget);
    return m;
}

TriMesh refine(const TriMesh& mesh, std::int64_t budget) {
    if (static_cast<std::int64_t>(mesh.triangle_count()) * 4 > budget)
        throw BudgetError("triangle budget exceeded by refinement");
    TriMesh out;
    out.vertices = mesh.vertices;
    out.triangles.reserve(mesh.triangle_count() * 4);
    std::unordered_map<std::uint64_t, std::int32_t, Int64PairHash> midpoint;
    midpoint.reserve(mesh.triangle_count() * 2);
    auto mid = [&](std::int32_t a, std::int32_t b) {
        auto [it, inserted] = midpoint.try_emplace(
            edge_key(a, b), static_cast<std::int32_t>(out.vertices.size()));
        if (inserted)
            out.vertices.push_back(
                0.5 * (mesh.vertices[a] + mesh.vertices[b]));
        return it->second;
    };
    for (const auto& tri : mesh.triangles) {
        const std::int32_t ab = mid(tri[0], tri[1]);
        const std::int32_t bc = mid(tri[1], tri[2]);
        const std::int32_t ca = mid(tri[2], tri[0]);
        out.triangles.push_back({tri[0], ab, ca});
        out.triangles.push_back({ab, tri[1], bc});
        out.triangles.push_back({ca, bc, tri[2]});
        out.triangles.push_back({ab, bc, ca});
    }
    finalize(out);
    return out;
}

}  // namespace fdrum::mesh
