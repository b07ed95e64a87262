#include <benchmark/benchmark.h>

#include "fdrum/boxdim.hpp"
#include "fdrum/fem.hpp"
#include "fdrum/julia.hpp"
#include "fdrum/mesh.hpp"
#include "fdrum/snowflake.hpp"

using namespace fdrum;

namespace {

julia::RasterGrid disk_grid(double resolution) {
    julia::JuliaSpec spec;
    spec.c = {0, 0};
    spec.resolution = resolution;
    spec.max_iter = 60;
    return julia::crop_to_filled(julia::rasterize_filled(spec), 1);
}

void bm_polygon(benchmark::State& state) {
    const auto spec = snowflake::Spec::classic(int(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(snowflake::snowflake_polygon(spec));
}
BENCHMARK(bm_polygon)->Arg(4)->Arg(6)->Arg(8);

void bm_rasterize(benchmark::State& state) {
    julia::JuliaSpec spec;
    spec.c = julia::kBasilica;
    spec.resolution = double(state.range(0));
    spec.max_iter = 170;
    for (auto _ : state)
        benchmark::DoNotOptimize(julia::rasterize_filled(spec));
}
BENCHMARK(bm_rasterize)->Arg(128)->Arg(256);

void bm_count_boxes(benchmark::State& state) {
    const auto grid = disk_grid(double(state.range(0)));
    const auto ring = julia::boundary_cells(grid);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            boxdim::count_boxes(ring, 8.0 * ring.pixel_size, ring.origin()));
}
BENCHMARK(bm_count_boxes)->Arg(256)->Arg(512);

void bm_lattice_mesh(benchmark::State& state) {
    const auto spec = snowflake::Spec::classic(int(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(mesh::mesh_snowflake(spec, 0));
}
BENCHMARK(bm_lattice_mesh)->Arg(3)->Arg(4);

void bm_refine(benchmark::State& state) {
    const auto m = mesh::mesh_from_raster(disk_grid(double(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(mesh::refine(m));
}
BENCHMARK(bm_refine)->Arg(64)->Arg(128);

void bm_assemble(benchmark::State& state) {
    const auto m = mesh::mesh_from_raster(disk_grid(double(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(fem::assemble(m));
}
BENCHMARK(bm_assemble)->Arg(64)->Arg(128);

void bm_solve(benchmark::State& state) {
    const auto m = mesh::mesh_from_raster(disk_grid(double(state.range(0))));
    const auto reduced = fem::apply_bc(fem::assemble(m), m, fem::BC::dirichlet);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            fem::solve_smallest(reduced.stiffness, reduced.mass, 6));
}
BENCHMARK(bm_solve)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
