#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fdrum/errors.hpp"
#include "fdrum/pipeline.hpp"

namespace fdrum::pipeline {

namespace {

using julia::ComponentSet;
using julia::RasterGrid;

struct Centroid {
    double x = 0.0, y = 0.0;
};

std::vector<Centroid> component_centroids(const RasterGrid& grid,
                                          const ComponentSet& comps) {
    std::vector<Centroid> sums(comps.count());
    for (int j = 0; j < grid.height; ++j)
        for (int i = 0; i < grid.width; ++i) {
            const std::int32_t id =
                comps.labels[static_cast<std::size_t>(j) * grid.width + i];
            if (id == 0) continue;
            const Vec2 p = grid.center_of(i, j);
            sums[id - 1].x += p.x;
            sums[id - 1].y += p.y;
        }
    for (int id = 0; id < comps.count(); ++id) {
        const double n = static_cast<double>(comps.pixel_counts[id]);
        sums[id].x /= n;
        sums[id].y /= n;
    }
    return sums;
}

}  // namespace

Solution solve_mesh(const mesh::TriMesh& mesh, const SolveOptions& opt,
                    const std::string& domain_name, double mesh_resolution) {
    const fem::AssembledSystem assembled = fem::assemble(mesh);
    Solution sol;
    sol.system = fem::apply_bc(assembled, mesh, opt.bc);
    sol.spectrum = fem::solve_smallest(sol.system.stiffness, sol.system.mass,
                                       opt.k, opt.tol, opt.seed);
    sol.spectrum.meta.domain = domain_name;
    sol.spectrum.meta.bc = fem::to_string(opt.bc);
    sol.spectrum.meta.mesh_resolution = mesh_resolution;
    sol.spectrum.meta.solver_tol = opt.tol;
    sol.spectrum.meta.seed = opt.seed;
    return sol;
}

JuliaDomain build_julia_domain(const julia::JuliaSpec& spec,
                               std::int64_t triangle_budget) {
    JuliaDomain dom;
    dom.grid = julia::crop_to_filled(julia::rasterize_filled(spec), 1);
    dom.area = julia::pixel_area(dom.grid);
    dom.mesh = mesh::mesh_from_raster(dom.grid, triangle_budget);
    return dom;
}

ComponentSet labeled_components(const RasterGrid& grid, int erosion_rounds) {
    if (erosion_rounds <= 0) return julia::interior_components(grid);

    RasterGrid work = grid;
    for (int round = 0; round < erosion_rounds; ++round) {
        const RasterGrid rim = julia::boundary_cells(work);
        for (std::size_t p = 0; p < work.bits.size(); ++p)
            if (rim.bits[p]) work.bits[p] = 0;
    }

    const ComponentSet eroded = julia::interior_components(work);
    const int w = grid.width, h = grid.height;
    std::vector<std::int32_t> labels = eroded.labels;

    // Grow the surviving labels back over everything the erosion removed,
    // one distance ring per wave with ties going to the smaller id. The
    // wave commit keeps the result independent of scan order, so mirror
    // image components regain exactly mirrored pixel sets.
    std::vector<std::int64_t> frontier, next;
    frontier.reserve(grid.bits.size());
    for (std::size_t p = 0; p < labels.size(); ++p)
        if (labels[p] != 0) frontier.push_back(static_cast<std::int64_t>(p));
    std::vector<std::int32_t> claim(labels.size(), 0);
    while (!frontier.empty()) {
        next.clear();
        for (const std::int64_t p : frontier) {
            const int i = static_cast<int>(p % w);
            const int j = static_cast<int>(p / w);
            const int ni[4] = {i - 1, i + 1, i, i};
            const int nj[4] = {j, j, j - 1, j + 1};
            for (int q = 0; q < 4; ++q) {
                if (ni[q] < 0 || ni[q] >= w || nj[q] < 0 || nj[q] >= h)
                    continue;
                const std::int64_t np =
                    static_cast<std::int64_t>(nj[q]) * w + ni[q];
                if (labels[np] != 0 || !grid.bits[np]) continue;
                if (claim[np] == 0) next.push_back(np);
                if (claim[np] == 0 || labels[p] < claim[np])
                    claim[np] = labels[p];
            }
        }
        for (const std::int64_t np : next) {
            labels[np] = claim[np];
            claim[np] = 0;
        }
        frontier.swap(next);
    }

    // Blobs thinner than the erosion depth vanish entirely and stay out of
    // reach of the regrowth; label them as their own components so the
    // labels still partition the filled set.
    int extra = eroded.count();
    std::vector<std::int64_t> stack;
    for (std::size_t s = 0; s < labels.size(); ++s) {
        if (labels[s] != 0 || !grid.bits[s]) continue;
        ++extra;
        labels[s] = extra;
        stack.assign(1, static_cast<std::int64_t>(s));
        while (!stack.empty()) {
            const std::int64_t p = stack.back();
            stack.pop_back();
            const int i = static_cast<int>(p % w);
            const int j = static_cast<int>(p / w);
            const int ni[4] = {i - 1, i + 1, i, i};
            const int nj[4] = {j, j, j - 1, j + 1};
            for (int q = 0; q < 4; ++q) {
                if (ni[q] < 0 || ni[q] >= w || nj[q] < 0 || nj[q] >= h)
                    continue;
                const std::int64_t np =
                    static_cast<std::int64_t>(nj[q]) * w + ni[q];
                if (labels[np] != 0 || !grid.bits[np]) continue;
                labels[np] = extra;
                stack.push_back(np);
            }
        }
    }

    // Recount and restore the ordering invariant (decreasing size, ties by
    // first row-major pixel).
    const int k = extra;
    std::vector<std::int64_t> counts(k, 0), first(k, -1);
    for (std::size_t p = 0; p < labels.size(); ++p) {
        const std::int32_t id = labels[p];
        if (id == 0) continue;
        ++counts[id - 1];
        if (first[id - 1] < 0) first[id - 1] = static_cast<std::int64_t>(p);
    }
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (counts[a] != counts[b]) return counts[a] > counts[b];
        return first[a] < first[b];
    });
    std::vector<std::int32_t> renum(k);
    ComponentSet out;
    out.width = w;
    out.height = h;
    out.pixel_counts.resize(k);
    for (int r = 0; r < k; ++r) {
        renum[order[r]] = r + 1;
        out.pixel_counts[r] = counts[order[r]];
    }
    out.labels.assign(labels.size(), 0);
    for (std::size_t p = 0; p < labels.size(); ++p)
        if (labels[p] != 0) out.labels[p] = renum[labels[p] - 1];
    return out;
}

std::vector<Quasicircle> quasicircle_spectra(julia::Complex c,
                                             const QuasicircleOptions& opt) {
    julia::JuliaSpec spec;
    spec.c = c;
    spec.max_iter = opt.raster_iterations;
    spec.resolution = opt.resolution;
    const RasterGrid grid =
        julia::crop_to_filled(julia::rasterize_filled(spec), 1);
    const ComponentSet comps = labeled_components(grid, opt.erosion_rounds);
    if (comps.count() == 0)
        throw ConfigError("filled set has no interior components");
    const std::vector<Centroid> cent = component_centroids(grid, comps);

    std::vector<Quasicircle> out;
    int id = 1;
    while (id <= comps.count() &&
           out.size() < static_cast<std::size_t>(opt.max_groups)) {
        Quasicircle qc;
        qc.pixel_count = comps.pixel_counts[id - 1];
        qc.multiplicity = 1;
        // Mirror pair: equal size and centroids opposite under z -> -z.
        if (id < comps.count() &&
            comps.pixel_counts[id] == qc.pixel_count) {
            const double mx = cent[id - 1].x + cent[id].x;
            const double my = cent[id - 1].y + cent[id].y;
            if (std::hypot(mx, my) <= 2.0 * grid.pixel_size)
                qc.multiplicity = 2;
        }
        qc.label = out.size() < opt.labels.size()
                       ? opt.labels[out.size()]
                       : std::to_string(out.size() + 1);
        qc.grid = julia::component_grid(grid, comps, id, 1);
        const mesh::TriMesh m =
            mesh::mesh_from_raster(qc.grid, opt.triangle_budget);
        SolveOptions so;
        so.k = opt.k;
        so.bc = fem::BC::dirichlet;
        so.tol = opt.tol;
        so.seed = opt.seed;
        so.triangle_budget = opt.triangle_budget;
        qc.spectrum = solve_mesh(m, so, "julia-component-" + qc.label,
                                 qc.grid.pixel_size)
                          .spectrum;
        id += qc.multiplicity;
        out.push_back(std::move(qc));
    }
    return out;
}

std::vector<spectral::LabeledValue> quasicircle_union(
    const std::vector<Quasicircle>& qcs) {
    std::vector<spectral::UnionPart> parts;
    parts.reserve(qcs.size());
    for (const Quasicircle& qc : qcs)
        parts.push_back({&qc.spectrum, qc.multiplicity, qc.label});
    return spectral::union_spectrum(parts);
}

IterationComparison iteration_comparison(
    julia::Complex c, const std::vector<int>& iteration_counts, int k,
    fem::BC bc, const JuliaRunOptions& opt) {
    if (iteration_counts.empty()) throw ConfigError("no iteration counts");
    if (!std::is_sorted(iteration_counts.begin(), iteration_counts.end()))
        throw ConfigError("iteration counts must be ascending");

    IterationComparison table;
    table.c = c;
    table.bc = bc;
    table.iterations = iteration_counts;
    table.columns.resize(iteration_counts.size());
    table.ok.assign(iteration_counts.size(), 0);

    for (std::size_t col = 0; col < iteration_counts.size(); ++col) {
        julia::JuliaSpec spec;
        spec.c = c;
        spec.max_iter = iteration_counts[col];
        spec.escape_radius = opt.escape_radius;
        spec.resolution = opt.resolution;
        spec.bbox = opt.bbox;
        spec.pixel_budget = opt.pixel_budget;
        try {
            const JuliaDomain dom =
                build_julia_domain(spec, opt.triangle_budget);
            SolveOptions so;
            so.k = k;
            so.bc = bc;
            so.tol = opt.tol;
            so.seed = opt.seed;
            so.triangle_budget = opt.triangle_budget;
            const Solution sol = solve_mesh(dom.mesh, so, "julia",
                                            dom.grid.pixel_size);
            table.columns[col] = sol.spectrum.eigenvalues;
            table.ok[col] = sol.spectrum.converged ? 1 : 0;
        } catch (const std::runtime_error&) {
            // empty raster, budget, or solver trouble: flag the column only
        }
    }
    return table;
}

std::vector<SliceRow> parameter_slice(
    const std::vector<julia::Complex>& c_values, int k, fem::BC bc,
    int max_iter, const JuliaRunOptions& opt) {
    if (c_values.empty()) throw ConfigError("no parameters given");

    std::vector<SliceRow> rows(c_values.size());
    for (std::size_t r = 0; r < c_values.size(); ++r) {
        rows[r].c = c_values[r];
        julia::JuliaSpec spec;
        spec.c = c_values[r];
        spec.max_iter = max_iter;
        spec.escape_radius = opt.escape_radius;
        spec.resolution = opt.resolution;
        spec.bbox = opt.bbox;
        spec.pixel_budget = opt.pixel_budget;
        try {
            const JuliaDomain dom =
                build_julia_domain(spec, opt.triangle_budget);
            SolveOptions so;
            so.k = k;
            so.bc = bc;
            so.tol = opt.tol;
            so.seed = opt.seed;
            so.triangle_budget = opt.triangle_budget;
            const Solution sol = solve_mesh(dom.mesh, so, "julia",
                                            dom.grid.pixel_size);
            rows[r].lambdas = sol.spectrum.eigenvalues;
            rows[r].ok = sol.spectrum.converged;
        } catch (const std::runtime_error&) {
            // flag the row, keep going
        }
    }
    return rows;
}

namespace {

template <typename ValueAt>
FieldImage render_field(const mesh::TriMesh& mesh, int width_px,
                        ValueAt&& value_at) {
    if (mesh.triangles.empty()) throw ConfigError("empty mesh");
    if (width_px < 1) throw ConfigError("image width must be positive");

    const BBox box = mesh.bbox();
    FieldImage img;
    img.width = width_px;
    img.pixel_size = box.width() / width_px;
    if (!(img.pixel_size > 0.0)) throw ConfigError("degenerate mesh extent");
    img.height = std::max(
        1, static_cast<int>(std::ceil(box.height() / img.pixel_size)));
    img.origin = box.lo;
    img.values.assign(static_cast<std::size_t>(img.width) * img.height, 0.0);
    img.inside.assign(img.values.size(), 0);

    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tri = mesh.triangles[t];
        const Vec2 p0 = mesh.vertices[tri[0]];
        const Vec2 p1 = mesh.vertices[tri[1]];
        const Vec2 p2 = mesh.vertices[tri[2]];
        const double den = (p1 - p0).cross(p2 - p0);
        if (den <= 0.0) continue;
        const double xmin = std::min({p0.x, p1.x, p2.x});
        const double xmax = std::max({p0.x, p1.x, p2.x});
        const double ymin = std::min({p0.y, p1.y, p2.y});
        const double ymax = std::max({p0.y, p1.y, p2.y});
        const int i0 = std::max(
            0, static_cast<int>(
                   std::floor((xmin - img.origin.x) / img.pixel_size - 0.5)));
        const int i1 = std::min(
            img.width - 1,
            static_cast<int>(
                std::ceil((xmax - img.origin.x) / img.pixel_size)));
        const int j0 = std::max(
            0, static_cast<int>(
                   std::floor((ymin - img.origin.y) / img.pixel_size - 0.5)));
        const int j1 = std::min(
            img.height - 1,
            static_cast<int>(
                std::ceil((ymax - img.origin.y) / img.pixel_size)));
        for (int j = j0; j <= j1; ++j)
            for (int i = i0; i <= i1; ++i) {
                const Vec2 q{img.origin.x + (i + 0.5) * img.pixel_size,
                             img.origin.y + (j + 0.5) * img.pixel_size};
                const double l0 = (p1 - q).cross(p2 - q) / den;
                const double l1 = (p2 - q).cross(p0 - q) / den;
                const double l2 = (p0 - q).cross(p1 - q) / den;
                const double slack = -1e-12;
                if (l0 < slack || l1 < slack || l2 < slack) continue;
                const std::size_t p =
                    static_cast<std::size_t>(j) * img.width + i;
                img.values[p] = value_at(t, tri, l0, l1, l2);
                img.inside[p] = 1;
            }
    }
    return img;
}

}  // namespace

FieldImage render_vertex_field(const mesh::TriMesh& mesh,
                               const std::vector<double>& u, int width_px) {
    if (u.size() != mesh.vertices.size())
        throw ConfigError("field length does not match vertex count");
    return render_field(
        mesh, width_px,
        [&](std::size_t, const std::array<std::int32_t, 3>& tri, double l0,
            double l1, double l2) {
            return l0 * u[tri[0]] + l1 * u[tri[1]] + l2 * u[tri[2]];
        });
}

FieldImage render_cell_field(const mesh::TriMesh& mesh,
                             const std::vector<double>& cell_values,
                             int width_px) {
    if (cell_values.size() != mesh.triangles.size())
        throw ConfigError("field length does not match triangle count");
    return render_field(
        mesh, width_px,
        [&](std::size_t t, const std::array<std::int32_t, 3>&, double, double,
            double) { return cell_values[t]; });
}

}  // namespace fdrum::pipeline
