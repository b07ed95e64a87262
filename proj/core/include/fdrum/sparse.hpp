#pragma once

#include <cstdint>
#include <vector>

namespace fdrum::fem {

// Square symmetric sparse matrix in compressed row storage, both triangles
// stored. Rows are sorted by column with no duplicates once built.
struct SparseMatrix {
    std::int32_t n = 0;
    std::vector<std::int64_t> row_ptr;   // size n + 1
    std::vector<std::int32_t> cols;
    std::vector<double> vals;

    std::int64_t nonzeros() const { return static_cast<std::int64_t>(cols.size()); }

    static SparseMatrix from_triplets(
        std::int32_t n,
        std::vector<std::int32_t>& rows,
        std::vector<std::int32_t>& cols,
        std::vector<double>& vals);

    void matvec(const double* x, double* y) const;
    std::vector<double> matvec(const std::vector<double>& x) const;

    double trace() const;
    double row_sum(std::int32_t r) const;
    double max_abs() const;

    // Symmetric extraction: rows and columns listed in keep (sorted).
    SparseMatrix submatrix(const std::vector<std::int32_t>& keep) const;
};

}  // namespace fdrum::fem
