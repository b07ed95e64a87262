#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "fdrum/errors.hpp"
#include "fdrum/pipeline.hpp"

using namespace fdrum;

namespace {

julia::RasterGrid blank(int w, int h, double px = 1.0) {
    julia::RasterGrid g;
    g.width = w;
    g.height = h;
    g.pixel_size = px;
    g.bits.assign(std::size_t(w) * h, 0);
    return g;
}

void fill_rect(julia::RasterGrid& g, int i0, int j0, int i1, int j1) {
    for (int j = j0; j <= j1; ++j)
        for (int i = i0; i <= i1; ++i)
            g.bits[std::size_t(j) * g.width + i] = 1;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("erosion labeling separates a dumbbell at its bridge") {
    // two 7x7 plates joined by a single pixel bridge of length 3
    auto g = blank(19, 9);
    fill_rect(g, 1, 1, 7, 7);
    fill_rect(g, 11, 1, 17, 7);
    fill_rect(g, 8, 4, 10, 4);

    const auto plain = pipeline::labeled_components(g, 0);
    CHECK(plain.count() == 1);
    CHECK(plain.pixel_counts[0] == g.filled_count());

    const auto split = pipeline::labeled_components(g, 1);
    REQUIRE(split.count() == 2);
    CHECK(split.pixel_counts[0] + split.pixel_counts[1] == g.filled_count());
    // the bridge regrows from both ends; the tie on its middle pixel goes
    // to the smaller label
    CHECK(split.pixel_counts[0] == 51);
    CHECK(split.pixel_counts[1] == 50);
    for (std::size_t p = 0; p < g.bits.size(); ++p)
        CHECK((split.labels[p] != 0) == (g.bits[p] != 0));
}

TEST_CASE("blobs thinner than the erosion depth stay labeled") {
    auto g = blank(9, 5);
    fill_rect(g, 0, 2, 2, 2);   // 3x1 line, vanishes after one peel
    fill_rect(g, 5, 1, 7, 3);   // 3x3 block, survives
    const auto comps = pipeline::labeled_components(g, 1);
    REQUIRE(comps.count() == 2);
    CHECK(comps.pixel_counts[0] == 9);
    CHECK(comps.pixel_counts[1] == 3);
    std::int64_t labeled = 0;
    for (auto l : comps.labels)
        if (l) ++labeled;
    CHECK(labeled == g.filled_count());
}

TEST_CASE("solve_mesh annotates the spectrum metadata") {
    const auto m = mesh::mesh_snowflake(snowflake::Spec::classic(2), 0);
    pipeline::SolveOptions opt;
    opt.k = 3;
    const auto sol = pipeline::solve_mesh(m, opt, "classic_2", 9.0);
    CHECK(sol.spectrum.meta.domain == "classic_2");
    CHECK(sol.spectrum.meta.bc == "dirichlet");
    CHECK(sol.spectrum.meta.mesh_resolution == 9.0);
    CHECK(sol.spectrum.meta.solver_tol == fem::kSolverTol);
    REQUIRE(sol.spectrum.eigenvalues.size() == 3);
    CHECK(std::is_sorted(sol.spectrum.eigenvalues.begin(),
                         sol.spectrum.eigenvalues.end()));
}

TEST_CASE("julia domains agree between raster, mesh and area") {
    julia::JuliaSpec spec;
    spec.c = {0, 0};
    spec.resolution = 32;
    spec.max_iter = 40;
    const auto dom = pipeline::build_julia_domain(spec);
    CHECK(dom.area == doctest::Approx(julia::pixel_area(dom.grid)).epsilon(1e-14));
    CHECK(dom.mesh.area() == doctest::Approx(dom.area).epsilon(1e-12));
    CHECK(dom.mesh.triangle_count() == 2 * std::size_t(dom.grid.filled_count()));
}

TEST_CASE("mirror components share one spectrum and duplicate in the union") {
    pipeline::QuasicircleOptions opt;
    opt.resolution = 128;
    opt.raster_iterations = 170;
    opt.erosion_rounds = 1;
    opt.max_groups = 3;
    opt.k = 2;
    const auto qcs = pipeline::quasicircle_spectra(julia::kBasilica, opt);
    REQUIRE(qcs.size() == 3);
    CHECK(qcs[0].multiplicity == 1);  // the central component is its own mirror
    CHECK(qcs[1].multiplicity == 2);
    CHECK(qcs[2].multiplicity == 2);
    CHECK(qcs[0].pixel_count >= qcs[1].pixel_count);
    CHECK(qcs[1].pixel_count >= qcs[2].pixel_count);
    CHECK(qcs[0].label == "1");
    for (const auto& qc : qcs) {
        CHECK(qc.spectrum.converged);
        REQUIRE(qc.spectrum.eigenvalues.size() == 2);
        CHECK(qc.spectrum.eigenvalues[0] < qc.spectrum.eigenvalues[1]);
    }

    const auto merged = pipeline::quasicircle_union(qcs);
    REQUIRE(merged.size() == 10);  // 2 + 2*2 + 2*2 eigenvalues
    int pair_hits = 0;
    for (std::size_t i = 0; i + 1 < merged.size(); ++i)
        if (merged[i].source == merged[i + 1].source &&
            merged[i].eigenvalue == merged[i + 1].eigenvalue)
            ++pair_hits;
    CHECK(pair_hits >= 4);  // each mirrored eigenvalue appears twice, adjacent
}

TEST_CASE("iteration columns flag failures instead of aborting") {
    pipeline::JuliaRunOptions opt;
    opt.resolution = 64;
    // the critical orbit of c = 0.5 escapes, so deep iteration leaves an
    // empty raster while shallow iteration still produces a blob
    const auto table = pipeline::iteration_comparison(
        {0.5, 0.0}, {2, 80}, 2, fem::BC::dirichlet, opt);
    REQUIRE(table.iterations == std::vector<int>{2, 80});
    REQUIRE(table.columns.size() == 2);
    REQUIRE(table.ok.size() == 2);
    CHECK(table.ok[0] == 1);
    CHECK(table.ok[1] == 0);
    CHECK(table.columns[0].size() == 2);
    CHECK(table.columns[1].empty());
    CHECK(table.columns[0][0] > 0.0);
}

TEST_CASE("parameter slices keep row order and flag empty members") {
    pipeline::JuliaRunOptions opt;
    opt.resolution = 48;
    const std::vector<julia::Complex> cs = {{0, 0}, {0.2, 0}, {0.5, 0}};
    const auto rows =
        pipeline::parameter_slice(cs, 2, fem::BC::dirichlet, 60, opt);
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(rows[i].c == cs[i]);
    CHECK(rows[0].ok);
    CHECK(rows[1].ok);
    CHECK(!rows[2].ok);
    REQUIRE(rows[0].lambdas.size() == 2);
    // the disk has the lowest ground state of the three
    CHECK(rows[0].lambdas[0] < rows[1].lambdas[0]);
}

TEST_CASE("vertex fields sample onto the pixel grid") {
    auto g = blank(4, 4, 0.25);
    fill_rect(g, 0, 0, 3, 3);
    const auto m = mesh::mesh_from_raster(g);
    std::vector<double> u(m.vertex_count());
    for (std::size_t v = 0; v < m.vertex_count(); ++v) u[v] = m.vertices[v].x;
    const auto img = pipeline::render_vertex_field(m, u, 32);
    REQUIRE(img.width == 32);
    REQUIRE(img.height == 32);
    int inside = 0;
    for (std::size_t p = 0; p < img.values.size(); ++p) {
        if (!img.inside[p]) continue;
        ++inside;
        const int i = int(p) % img.width;
        const double x = img.origin.x + (i + 0.5) * img.pixel_size;
        CHECK(img.values[p] == doctest::Approx(x).epsilon(1e-9));
    }
    CHECK(inside > 900);  // nearly the whole square

    const std::vector<double> cellwise(m.triangle_count(), 2.5);
    const auto flat = pipeline::render_cell_field(m, cellwise, 16);
    for (std::size_t p = 0; p < flat.values.size(); ++p)
        if (flat.inside[p]) CHECK(flat.values[p] == 2.5);
}

}  // TEST_SUITE
