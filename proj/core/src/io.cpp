#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "fdrum/io.hpp"

namespace fdrum::io {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string fmt_int(long long v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld", v);
    return buf;
}

}  // namespace

std::string format_double(double v) { return fmt("%.17g", v); }

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp);
        out.write(content.data(),
                  static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("short write to " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw std::runtime_error("cannot move " + tmp + " to " + path + ": " +
                                 ec.message());
}

void write_polygon_csv(const std::string& path,
                       const snowflake::Polygon& poly) {
    std::string s = "x,y\n";
    s.reserve(s.size() + poly.vertices.size() * 40);
    for (const Vec2& v : poly.vertices)
        s += format_double(v.x) + "," + format_double(v.y) + "\n";
    atomic_write(path, s);
}

void write_components_csv(const std::string& path,
                          const julia::ComponentSet& comps,
                          double pixel_size) {
    std::string s = "component_id,pixel_count,area\n";
    const double pa = pixel_size * pixel_size;
    for (int id = 1; id <= comps.count(); ++id) {
        const std::int64_t n = comps.pixel_counts[id - 1];
        s += fmt_int(id) + "," + fmt_int(n) + "," +
             format_double(static_cast<double>(n) * pa) + "\n";
    }
    atomic_write(path, s);
}

void write_spectrum_csv(const std::string& path, const fem::Spectrum& spec) {
    const bool neumann = spec.meta.bc == "neumann";
    std::string s = neumann ? "# index base 0 (lambda_0 is the constant mode)\n"
                            : "# index base 1\n";
    s += "index,eigenvalue\n";
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i)
        s += fmt_int(static_cast<long long>(i) + (neumann ? 0 : 1)) + "," +
             format_double(spec.eigenvalues[i]) + "\n";
    atomic_write(path, s);
}

void write_counting_csv(const std::string& path,
                        const spectral::CountingSeries& series) {
    std::string s = "# beta " + format_double(series.beta) +
                    (series.truncated ? ", truncated\n" : "\n");
    s += "t,N,weyl,D1,D2\n";
    for (std::size_t i = 0; i < series.t.size(); ++i)
        s += format_double(series.t[i]) + "," + fmt_int(series.n[i]) + "," +
             format_double(series.weyl[i]) + "," +
             format_double(series.d1[i]) + "," + format_double(series.d2[i]) +
             "\n";
    atomic_write(path, s);
}

void write_union_csv(const std::string& path,
                     const std::vector<spectral::LabeledValue>& entries) {
    std::string s = "rank,eigenvalue,source\n";
    for (std::size_t i = 0; i < entries.size(); ++i)
        s += fmt_int(static_cast<long long>(i) + 1) + "," +
             format_double(entries[i].eigenvalue) + "," + entries[i].source +
             "\n";
    atomic_write(path, s);
}

void write_boxcount_csv(const std::string& path,
                        const boxdim::BoxCountSeries& series) {
    std::string s = "box_size,count\n";
    for (std::size_t i = 0; i < series.sizes.size(); ++i)
        s += format_double(series.sizes[i]) + "," +
             format_double(series.counts[i]) + "\n";
    atomic_write(path, s);
}

void write_fit_csv(const std::string& path, const boxdim::LogLogFit& fit,
                   std::size_t points) {
    std::string s = "dimension,fit_error,intercept,points\n";
    s += format_double(fit.dimension) + "," + format_double(fit.fit_error) +
         "," + format_double(fit.intercept) + "," +
         fmt_int(static_cast<long long>(points)) + "\n";
    atomic_write(path, s);
}

void write_sweep_csv(const std::string& path,
                     const std::vector<boxdim::SweepRow>& rows) {
    std::string s = "re_c,im_c,resolution_px,dimension,fit_error\n";
    for (const boxdim::SweepRow& r : rows)
        s += format_double(r.c.real()) + "," + format_double(r.c.imag()) +
             "," + fmt_int(r.resolution_px) + "," +
             format_double(r.dimension) + "," + format_double(r.fit_error) +
             "\n";
    atomic_write(path, s);
}

void write_slice_csv(const std::string& path,
                     const std::vector<pipeline::SliceRow>& rows, int k) {
    std::string s = "c_re,c_im";
    for (int i = 1; i <= k; ++i) s += ",lambda_" + fmt_int(i);
    s += "\n";
    const double nan = std::nan("");
    for (const pipeline::SliceRow& r : rows) {
        s += format_double(r.c.real()) + "," + format_double(r.c.imag());
        for (int i = 0; i < k; ++i) {
            const double v = (r.ok && i < static_cast<int>(r.lambdas.size()))
                                 ? r.lambdas[i]
                                 : nan;
            s += "," + format_double(v);
        }
        s += "\n";
    }
    atomic_write(path, s);
}

void write_iteration_csv(const std::string& path,
                         const pipeline::IterationComparison& table, int k) {
    std::string s = "index";
    for (int it : table.iterations) s += ",iter_" + fmt_int(it);
    s += "\n";
    const double nan = std::nan("");
    for (int row = 0; row < k; ++row) {
        s += fmt_int(row + 1);
        for (std::size_t col = 0; col < table.columns.size(); ++col) {
            const auto& colv = table.columns[col];
            const double v =
                (table.ok[col] && row < static_cast<int>(colv.size()))
                    ? colv[row]
                    : nan;
            s += "," + format_double(v);
        }
        s += "\n";
    }
    atomic_write(path, s);
}

void write_mesh(const std::string& path, const mesh::TriMesh& mesh) {
    std::string s = fmt_int(static_cast<long long>(mesh.vertex_count())) +
                    " " +
                    fmt_int(static_cast<long long>(mesh.triangle_count())) +
                    "\n";
    s.reserve(s.size() + mesh.vertices.size() * 48 +
              mesh.triangles.size() * 24);
    for (const Vec2& v : mesh.vertices)
        s += format_double(v.x) + " " + format_double(v.y) + "\n";
    for (const auto& t : mesh.triangles)
        s += fmt_int(t[0]) + " " + fmt_int(t[1]) + " " + fmt_int(t[2]) + "\n";
    atomic_write(path, s);
}

namespace {

void write_pgm(const std::string& path, int width, int height,
               const std::vector<std::uint8_t>& bottom_up) {
    std::string s = "P5\n" + fmt_int(width) + " " + fmt_int(height) + "\n255\n";
    s.reserve(s.size() + bottom_up.size());
    for (int j = height - 1; j >= 0; --j)
        s.append(reinterpret_cast<const char*>(bottom_up.data() +
                                               static_cast<std::size_t>(j) *
                                                   width),
                 static_cast<std::size_t>(width));
    atomic_write(path, s);
}

}  // namespace

void write_raster_pgm(const std::string& path,
                      const julia::RasterGrid& grid) {
    std::vector<std::uint8_t> px(grid.bits.size());
    for (std::size_t i = 0; i < grid.bits.size(); ++i)
        px[i] = grid.bits[i] ? 0 : 255;
    write_pgm(path, grid.width, grid.height, px);
}

void write_field_pgm(const std::string& path,
                     const pipeline::FieldImage& img, bool signed_field) {
    double peak = 0.0;
    for (std::size_t i = 0; i < img.values.size(); ++i)
        if (img.inside[i]) peak = std::max(peak, std::abs(img.values[i]));
    if (peak == 0.0) peak = 1.0;

    std::vector<std::uint8_t> px(img.values.size(), 255);
    for (std::size_t i = 0; i < img.values.size(); ++i) {
        if (!img.inside[i]) continue;
        const double v = img.values[i] / peak;
        double shade = signed_field ? 127.0 + 127.0 * v : 254.0 * (1.0 - v);
        shade = std::min(254.0, std::max(0.0, shade));
        px[i] = static_cast<std::uint8_t>(shade + 0.5);
    }
    write_pgm(path, img.width, img.height, px);
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    CsvTable table;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            cells.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (!have_header) {
            table.header = cells;
            have_header = true;
            continue;
        }
        std::vector<double> row(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i)
            row[i] = std::strtod(cells[i].c_str(), nullptr);
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace fdrum::io
