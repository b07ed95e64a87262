#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fdrum/boxdim.hpp"
#include "fdrum/errors.hpp"
#include "fdrum/io.hpp"
#include "fdrum/pipeline.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fdrum;

constexpr const char* kVersion = "0.1.0";

// Complex literals come in as re+imi, e.g. -1+0i, 0.2, -0.125+0.6495i, 1i.
julia::Complex parse_complex(const std::string& text) {
    if (text.empty()) throw ConfigError("empty complex literal");
    if (text.back() != 'i' && text.back() != 'I') {
        char* end = nullptr;
        const double re = std::strtod(text.c_str(), &end);
        if (end != text.c_str() + text.size())
            throw ConfigError("bad complex literal: " + text);
        return {re, 0.0};
    }
    const std::string body = text.substr(0, text.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t p = body.size(); p-- > 1;) {
        if (body[p] != '+' && body[p] != '-') continue;
        const char prev = body[p - 1];
        if (prev == 'e' || prev == 'E') continue;
        split = p;
        break;
    }
    auto parse_part = [](const std::string& part, double fallback) {
        if (part.empty() || part == "+") return fallback;
        if (part == "-") return -fallback;
        char* end = nullptr;
        const double v = std::strtod(part.c_str(), &end);
        if (end != part.c_str() + part.size())
            throw ConfigError("bad complex literal part: " + part);
        return v;
    };
    if (split == std::string::npos)
        return {0.0, parse_part(body, 1.0)};
    return {parse_part(body.substr(0, split), 0.0),
            parse_part(body.substr(split), 1.0)};
}

// a:step:b inclusive ranges for parameter sweeps.
std::vector<double> parse_range(const std::string& text) {
    const std::size_t c1 = text.find(':');
    if (c1 == std::string::npos) return {parse_complex(text).real()};
    const std::size_t c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw ConfigError("range must be start:step:stop, got " + text);
    const double a = std::strtod(text.substr(0, c1).c_str(), nullptr);
    const double step = std::strtod(text.substr(c1 + 1, c2 - c1 - 1).c_str(),
                                    nullptr);
    const double b = std::strtod(text.substr(c2 + 1).c_str(), nullptr);
    if (!(step > 0.0)) throw ConfigError("range step must be positive");
    if (b < a) throw ConfigError("range stop before start");
    std::vector<double> out;
    const int n = static_cast<int>(std::floor((b - a) / step + 0.5));
    for (int i = 0; i <= n; ++i) out.push_back(a + i * step);
    return out;
}

fem::BC parse_bc(const std::string& name) {
    if (name == "dirichlet") return fem::BC::dirichlet;
    if (name == "neumann") return fem::BC::neumann;
    throw ConfigError("bc must be dirichlet or neumann");
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void write_metadata(const std::string& outdir, const json& meta) {
    io::atomic_write(join_path(outdir, "metadata.json"), meta.dump(2) + "\n");
}

void write_eigenfunction_images(const std::string& outdir,
                                const mesh::TriMesh& mesh,
                                const pipeline::Solution& sol, int images,
                                int image_width, json& outputs) {
    const int count = std::min<int>(
        images, static_cast<int>(sol.spectrum.eigenvalues.size()));
    for (int i = 0; i < count; ++i) {
        const std::vector<double> u = fem::expand_eigenvector(
            sol.spectrum, sol.system, i, mesh.vertex_count());
        char name[64];
        std::snprintf(name, sizeof name, "eigenfunction_%03d.pgm", i + 1);
        io::write_field_pgm(join_path(outdir, name),
                            pipeline::render_vertex_field(mesh, u, image_width),
                            true);
        outputs.push_back(name);

        const fem::EnergyField energy =
            fem::energy_distribution(mesh, u, fem::EnergyVariant::gradient);
        std::snprintf(name, sizeof name, "energy_%03d.pgm", i + 1);
        io::write_field_pgm(
            join_path(outdir, name),
            pipeline::render_cell_field(mesh, energy.values, image_width),
            false);
        outputs.push_back(name);
    }
}

// Boundary box dimension of a raster, for the counting-series exponent.
// Falls back to 1 when the fit is degenerate and clamps into [1, 2].
double raster_dimension(const julia::RasterGrid& grid, double* fit_error) {
    const julia::RasterGrid rim = julia::boundary_cells(grid);
    const boxdim::BoxCountSeries series = boxdim::raster_series(rim);
    const boxdim::LogLogFit fit = boxdim::fit_dimension(series);
    if (fit_error) *fit_error = fit.fit_error;
    if (!std::isfinite(fit.dimension)) return 1.0;
    return std::min(2.0, std::max(1.0, fit.dimension));
}

struct SnowflakeArgs {
    std::string kind = "classic";
    double b = 0.1;
    int level = 3;
    int refine = 0;
    std::string bc = "dirichlet";
    int k = 10;
    double tol = fem::kSolverTol;
    std::uint64_t seed = 1;
    int images = 4;
    int image_width = 600;
    std::string outdir = "fdrum-snowflake";
    bool polygon_only = false;
};

int run_snowflake(const SnowflakeArgs& a) {
    const snowflake::Spec spec = a.kind == "classic"
                                     ? snowflake::Spec::classic(a.level)
                                     : snowflake::Spec::quadratic(a.b, a.level);
    fs::create_directories(a.outdir);

    json meta;
    meta["command"] = "snowflake";
    meta["version"] = kVersion;
    meta["parameters"] = {
        {"kind", a.kind},           {"b", a.b},
        {"level", a.level},         {"refine", a.refine},
        {"bc", a.bc},               {"k", a.k},
        {"tol", a.tol},             {"seed", a.seed},
        {"images", a.images},       {"image_width", a.image_width},
        {"polygon_only", a.polygon_only}};
    json outputs = json::array();

    const snowflake::Polygon poly = snowflake::snowflake_polygon(spec);
    io::write_polygon_csv(join_path(a.outdir, "polygon.csv"), poly);
    outputs.push_back("polygon.csv");

    if (!a.polygon_only) {
        const mesh::TriMesh m = mesh::mesh_snowflake(spec, a.refine);
        io::write_mesh(join_path(a.outdir, "mesh.txt"), m);
        outputs.push_back("mesh.txt");

        pipeline::SolveOptions opt;
        opt.k = a.k;
        opt.bc = parse_bc(a.bc);
        opt.tol = a.tol;
        opt.seed = a.seed;
        const double pitch =
            spec.kind == snowflake::Kind::classic
                ? std::pow(3.0, -a.level) / std::pow(2.0, a.refine)
                : std::pow(spec.b, a.level) / std::pow(2.0, a.refine);
        const pipeline::Solution sol =
            pipeline::solve_mesh(m, opt, a.kind + "-snowflake", pitch);
        io::write_spectrum_csv(join_path(a.outdir, "spectrum.csv"),
                               sol.spectrum);
        outputs.push_back("spectrum.csv");

        const double dim = snowflake::boxdim_closed_form(spec);
        const spectral::CountingSeries counting = spectral::counting_series(
            sol.spectrum, m.area(), dim, sol.spectrum.eigenvalues.back());
        io::write_counting_csv(join_path(a.outdir, "counting.csv"), counting);
        outputs.push_back("counting.csv");
        meta["area"] = m.area();
        meta["boundary_dimension"] = dim;
        meta["converged"] = sol.spectrum.converged;

        write_eigenfunction_images(a.outdir, m, sol, a.images, a.image_width,
                                   outputs);
    }

    meta["outputs"] = outputs;
    write_metadata(a.outdir, meta);
    return 0;
}

struct JuliaArgs {
    std::string c_text;
    int iterations = 100;
    bool iterations_given = false;
    double resolution = 256.0;
    double escape_radius = 2.0;
    std::string bc = "dirichlet";
    int k = 10;
    double tol = fem::kSolverTol;
    std::uint64_t seed = 1;
    int images = 4;
    int image_width = 600;
    std::string outdir = "fdrum-julia";
    bool area_only = false;
    bool union_mode = false;
    int erosion = 1;
    int groups = 4;
    std::string labels_text;
    std::string slice_re;
    std::string slice_im = "0";
};

int run_julia_union(const JuliaArgs& a, json& meta, json& outputs) {
    pipeline::QuasicircleOptions opt;
    opt.resolution = a.resolution;
    opt.raster_iterations = a.iterations_given ? a.iterations : 170;
    opt.erosion_rounds = a.erosion;
    opt.max_groups = a.groups;
    opt.k = a.k;
    opt.tol = a.tol;
    opt.seed = a.seed;
    if (!a.labels_text.empty()) {
        std::size_t start = 0;
        while (start <= a.labels_text.size()) {
            const std::size_t comma = a.labels_text.find(',', start);
            opt.labels.push_back(
                a.labels_text.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    const julia::Complex c = parse_complex(a.c_text);
    const std::vector<pipeline::Quasicircle> qcs =
        pipeline::quasicircle_spectra(c, opt);

    json parts = json::array();
    for (const pipeline::Quasicircle& qc : qcs) {
        const std::string name = "spectrum_qc" + qc.label + ".csv";
        io::write_spectrum_csv(join_path(a.outdir, name), qc.spectrum);
        outputs.push_back(name);
        io::write_raster_pgm(join_path(a.outdir, "qc" + qc.label + ".pgm"),
                             qc.grid);
        outputs.push_back("qc" + qc.label + ".pgm");
        parts.push_back({{"label", qc.label},
                         {"multiplicity", qc.multiplicity},
                         {"pixel_count", qc.pixel_count},
                         {"converged", qc.spectrum.converged}});
    }
    io::write_union_csv(join_path(a.outdir, "union.csv"),
                        pipeline::quasicircle_union(qcs));
    outputs.push_back("union.csv");
    meta["quasicircles"] = parts;
    meta["raster_iterations"] = opt.raster_iterations;
    return 0;
}

int run_julia_slice(const JuliaArgs& a, json& meta, json& outputs) {
    const std::vector<double> res = parse_range(a.slice_re);
    const double im = std::strtod(a.slice_im.c_str(), nullptr);
    std::vector<julia::Complex> cs;
    for (double re : res) cs.push_back({re, im});

    pipeline::JuliaRunOptions opt;
    opt.resolution = a.resolution;
    opt.escape_radius = a.escape_radius;
    opt.tol = a.tol;
    opt.seed = a.seed;
    const std::vector<pipeline::SliceRow> rows = pipeline::parameter_slice(
        cs, a.k, parse_bc(a.bc), a.iterations, opt);
    io::write_slice_csv(join_path(a.outdir, "slice.csv"), rows, a.k);
    outputs.push_back("slice.csv");
    meta["slice_points"] = cs.size();
    return 0;
}

int run_julia(const JuliaArgs& a) {
    fs::create_directories(a.outdir);
    json meta;
    meta["command"] = "julia";
    meta["version"] = kVersion;
    meta["parameters"] = {{"c", a.c_text},
                          {"iterations", a.iterations},
                          {"resolution", a.resolution},
                          {"escape_radius", a.escape_radius},
                          {"bc", a.bc},
                          {"k", a.k},
                          {"tol", a.tol},
                          {"seed", a.seed},
                          {"images", a.images},
                          {"image_width", a.image_width},
                          {"area_only", a.area_only},
                          {"union", a.union_mode},
                          {"erosion", a.erosion},
                          {"groups", a.groups},
                          {"labels", a.labels_text},
                          {"slice_re", a.slice_re},
                          {"slice_im", a.slice_im}};
    json outputs = json::array();

    int rc = 0;
    if (!a.slice_re.empty()) {
        rc = run_julia_slice(a, meta, outputs);
    } else if (a.union_mode) {
        rc = run_julia_union(a, meta, outputs);
    } else {
        julia::JuliaSpec spec;
        spec.c = parse_complex(a.c_text);
        spec.max_iter = a.iterations;
        spec.escape_radius = a.escape_radius;
        spec.resolution = a.resolution;

        const julia::RasterGrid grid =
            julia::crop_to_filled(julia::rasterize_filled(spec), 1);
        io::write_raster_pgm(join_path(a.outdir, "filled.pgm"), grid);
        outputs.push_back("filled.pgm");

        const double area = julia::pixel_area(grid);
        {
            std::string s = "area,filled_pixels,pixel_size\n";
            s += io::format_double(area) + "," +
                 std::to_string(grid.filled_count()) + "," +
                 io::format_double(grid.pixel_size) + "\n";
            io::atomic_write(join_path(a.outdir, "area.csv"), s);
            outputs.push_back("area.csv");
        }
        meta["area"] = area;

        const julia::ComponentSet comps = julia::interior_components(grid);
        io::write_components_csv(join_path(a.outdir, "components.csv"), comps,
                                 grid.pixel_size);
        outputs.push_back("components.csv");

        if (!a.area_only) {
            const mesh::TriMesh m = mesh::mesh_from_raster(grid);
            io::write_mesh(join_path(a.outdir, "mesh.txt"), m);
            outputs.push_back("mesh.txt");

            pipeline::SolveOptions opt;
            opt.k = a.k;
            opt.bc = parse_bc(a.bc);
            opt.tol = a.tol;
            opt.seed = a.seed;
            const pipeline::Solution sol =
                pipeline::solve_mesh(m, opt, "julia", grid.pixel_size);
            io::write_spectrum_csv(join_path(a.outdir, "spectrum.csv"),
                                   sol.spectrum);
            outputs.push_back("spectrum.csv");

            double fit_err = 0.0;
            const double dim = raster_dimension(grid, &fit_err);
            const spectral::CountingSeries counting =
                spectral::counting_series(sol.spectrum, area, dim,
                                          sol.spectrum.eigenvalues.back());
            io::write_counting_csv(join_path(a.outdir, "counting.csv"),
                                   counting);
            outputs.push_back("counting.csv");
            meta["boundary_dimension"] = dim;
            meta["boundary_dimension_fit_error"] = fit_err;
            meta["converged"] = sol.spectrum.converged;

            write_eigenfunction_images(a.outdir, m, sol, a.images,
                                       a.image_width, outputs);
        }
    }

    meta["outputs"] = outputs;
    write_metadata(a.outdir, meta);
    return rc;
}

struct BoxdimArgs {
    std::string kind;
    double b = 0.1;
    int level = 6;
    std::string c_text;
    int iterations = 200;
    double resolution = 512.0;
    bool segment = false;
    bool julia_sweep = false;
    std::string sweep_re;
    std::string sweep_im = "0";
    std::vector<int> px = {512};
    std::string outdir = "fdrum-boxdim";
};

int run_boxdim(const BoxdimArgs& a) {
    fs::create_directories(a.outdir);
    json meta;
    meta["command"] = "boxdim";
    meta["version"] = kVersion;
    meta["parameters"] = {{"kind", a.kind},
                          {"b", a.b},
                          {"level", a.level},
                          {"c", a.c_text},
                          {"iterations", a.iterations},
                          {"resolution", a.resolution},
                          {"segment", a.segment},
                          {"julia_sweep", a.julia_sweep},
                          {"sweep_re", a.sweep_re},
                          {"sweep_im", a.sweep_im},
                          {"px", a.px}};
    json outputs = json::array();

    if (a.julia_sweep) {
        if (a.sweep_re.empty())
            throw ConfigError("--julia-sweep needs --re start:step:stop");
        const std::vector<double> res = parse_range(a.sweep_re);
        const double im = std::strtod(a.sweep_im.c_str(), nullptr);
        std::vector<std::complex<double>> cs;
        for (double re : res) cs.push_back({re, im});
        const std::vector<boxdim::SweepRow> rows =
            boxdim::dimension_sweep(cs, a.px, a.iterations);
        io::write_sweep_csv(join_path(a.outdir, "sweep.csv"), rows);
        outputs.push_back("sweep.csv");
    } else {
        boxdim::BoxCountSeries series;
        if (a.segment) {
            std::vector<Vec2> pts;
            for (int i = 0; i <= 8192; ++i)
                pts.push_back({static_cast<double>(i) / 8192.0, 0.0});
            series = boxdim::box_count_series(pts, 1.0 / 1024.0);
            meta["domain"] = "unit-segment";
        } else if (!a.c_text.empty()) {
            julia::JuliaSpec spec;
            spec.c = parse_complex(a.c_text);
            spec.max_iter = a.iterations;
            spec.resolution = a.resolution;
            const julia::RasterGrid grid =
                julia::crop_to_filled(julia::rasterize_filled(spec), 1);
            series = boxdim::raster_series(julia::boundary_cells(grid));
            meta["domain"] = "julia";
        } else if (!a.kind.empty()) {
            const snowflake::Spec spec =
                a.kind == "classic"
                    ? snowflake::Spec::classic(a.level)
                    : snowflake::Spec::quadratic(a.b, a.level);
            series = boxdim::snowflake_series(spec);
            meta["domain"] = a.kind + "-snowflake";
            meta["closed_form"] = snowflake::boxdim_closed_form(spec);
        } else {
            throw ConfigError(
                "choose one of --kind, --c, --segment or --julia-sweep");
        }
        const boxdim::LogLogFit fit = boxdim::fit_dimension(series);
        io::write_boxcount_csv(join_path(a.outdir, "boxcount.csv"), series);
        outputs.push_back("boxcount.csv");
        io::write_fit_csv(join_path(a.outdir, "fit.csv"), fit,
                          series.sizes.size());
        outputs.push_back("fit.csv");
        meta["dimension"] = fit.dimension;
        meta["fit_error"] = fit.fit_error;
    }

    meta["outputs"] = outputs;
    write_metadata(a.outdir, meta);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"prefractal and Julia set Laplacian spectra toolkit"};
    app.require_subcommand(1);

    SnowflakeArgs sf;
    CLI::App* snow = app.add_subcommand(
        "snowflake", "polygon, mesh and spectrum of a snowflake prefractal");
    snow->add_option("--kind", sf.kind, "classic or quadratic")
        ->check(CLI::IsMember({"classic", "quadratic"}));
    snow->add_option("--b", sf.b, "quadratic family parameter in (0, 1)");
    snow->add_option("--level", sf.level, "prefractal level")->required();
    snow->add_option("--refine", sf.refine, "midpoint refinement rounds");
    snow->add_option("--bc", sf.bc, "boundary condition")
        ->check(CLI::IsMember({"dirichlet", "neumann"}));
    snow->add_option("-k,--eigenvalues", sf.k, "eigenpair count");
    snow->add_option("--tol", sf.tol, "solver residual tolerance");
    snow->add_option("--seed", sf.seed, "solver start seed");
    snow->add_option("--images", sf.images, "eigenfunction images to write");
    snow->add_option("--image-width", sf.image_width, "image width, pixels");
    snow->add_option("-o,--outdir", sf.outdir, "output directory");
    snow->add_flag("--polygon-only", sf.polygon_only,
                   "skip meshing and solving");

    JuliaArgs jl;
    CLI::App* ju = app.add_subcommand(
        "julia", "filled Julia set raster, mesh and spectrum");
    ju->add_option("--c", jl.c_text, "parameter c as re+imi")->required();
    CLI::Option* iters =
        ju->add_option("--iterations", jl.iterations, "escape iterations");
    ju->add_option("--resolution", jl.resolution, "pixels per unit");
    ju->add_option("--escape-radius", jl.escape_radius, "escape radius");
    ju->add_option("--bc", jl.bc, "boundary condition")
        ->check(CLI::IsMember({"dirichlet", "neumann"}));
    ju->add_option("-k,--eigenvalues", jl.k, "eigenpair count");
    ju->add_option("--tol", jl.tol, "solver residual tolerance");
    ju->add_option("--seed", jl.seed, "solver start seed");
    ju->add_option("--images", jl.images, "eigenfunction images to write");
    ju->add_option("--image-width", jl.image_width, "image width, pixels");
    ju->add_option("-o,--outdir", jl.outdir, "output directory");
    ju->add_flag("--area-only", jl.area_only, "raster and area, no solve");
    ju->add_flag("--union", jl.union_mode,
                 "per-component spectra and their sorted union");
    ju->add_option("--erosion", jl.erosion,
                   "erosion rounds separating pinched components");
    ju->add_option("--groups", jl.groups, "component groups to solve");
    ju->add_option("--labels", jl.labels_text,
                   "comma separated component labels by size");
    ju->add_option("--re", jl.slice_re,
                   "slice start:step:stop of Re(c); writes slice.csv");
    ju->add_option("--im", jl.slice_im, "Im(c) for the slice");

    BoxdimArgs bd;
    CLI::App* bx = app.add_subcommand(
        "boxdim", "box-counting dimension estimates");
    bx->add_option("--kind", bd.kind, "snowflake kind")
        ->check(CLI::IsMember({"classic", "quadratic"}));
    bx->add_option("--b", bd.b, "quadratic family parameter");
    bx->add_option("--level", bd.level, "snowflake level");
    bx->add_option("--c", bd.c_text, "Julia parameter c as re+imi");
    bx->add_option("--iterations", bd.iterations, "escape iterations");
    bx->add_option("--resolution", bd.resolution, "pixels per unit");
    bx->add_flag("--segment", bd.segment, "unit segment self test");
    bx->add_flag("--julia-sweep", bd.julia_sweep,
                 "dimension over a parameter slice");
    bx->add_option("--re", bd.sweep_re, "sweep start:step:stop of Re(c)");
    bx->add_option("--im", bd.sweep_im, "Im(c) for the sweep");
    bx->add_option("--px", bd.px, "sweep window widths in pixels");
    bx->add_option("-o,--outdir", bd.outdir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        jl.iterations_given = iters->count() > 0;
        if (snow->parsed()) return run_snowflake(sf);
        if (ju->parsed()) return run_julia(jl);
        if (bx->parsed()) return run_boxdim(bd);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const SolverError& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return 3;
    } catch (const BudgetError& e) {
        std::fprintf(stderr, "budget error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
