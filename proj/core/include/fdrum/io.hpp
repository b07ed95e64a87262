#pragma once

#include <string>
#include <vector>

#include "fdrum/boxdim.hpp"
#include "fdrum/fem.hpp"
#include "fdrum/julia.hpp"
#include "fdrum/mesh.hpp"
#include "fdrum/pipeline.hpp"
#include "fdrum/snowflake.hpp"
#include "fdrum/spectral.hpp"

namespace fdrum::io {

// All writers go through a temp file in the same directory plus rename, so
// a crash never leaves a half-written artifact. Doubles are printed with
// %.17g and parse back bit-identical.
void atomic_write(const std::string& path, const std::string& content);

std::string format_double(double v);

void write_polygon_csv(const std::string& path,
                       const snowflake::Polygon& poly);

void write_components_csv(const std::string& path,
                          const julia::ComponentSet& comps,
                          double pixel_size);

// index column is 1-based for Dirichlet spectra and 0-based for Neumann
// (the constant mode is lambda_0); a leading # line states the base.
void write_spectrum_csv(const std::string& path, const fem::Spectrum& spec);

void write_counting_csv(const std::string& path,
                        const spectral::CountingSeries& series);

void write_union_csv(const std::string& path,
                     const std::vector<spectral::LabeledValue>& entries);

void write_boxcount_csv(const std::string& path,
                        const boxdim::BoxCountSeries& series);

void write_fit_csv(const std::string& path, const boxdim::LogLogFit& fit,
                   std::size_t points);

void write_sweep_csv(const std::string& path,
                     const std::vector<boxdim::SweepRow>& rows);

void write_slice_csv(const std::string& path,
                     const std::vector<pipeline::SliceRow>& rows, int k);

void write_iteration_csv(const std::string& path,
                         const pipeline::IterationComparison& table, int k);

// "V T" count header, V lines "x y", T lines "a b c" (0-based, CCW).
void write_mesh(const std::string& path, const mesh::TriMesh& mesh);

// Binary PGM (P5). Filled pixels black on white.
void write_raster_pgm(const std::string& path, const julia::RasterGrid& grid);

// Signed fields (eigenfunctions) map [-max|v|, +max|v|] onto [0, 254];
// nonnegative fields (energies) map [0, max] onto [254, 0]. Pixels outside
// the domain are white.
void write_field_pgm(const std::string& path,
                     const pipeline::FieldImage& img, bool signed_field);

// Reads a CSV written by the writers above: skips # comment lines, returns
// the header names and all rows as doubles.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const std::string& path);

}  // namespace fdrum::io
