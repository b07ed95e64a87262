#include "fdrum/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fdrum/errors.hpp"

namespace fdrum::fem {

SparseMatrix SparseMatrix::from_triplets(std::int32_t n,
                                         std::vector<std::int32_t>& rows,
                                         std::vector<std::int32_t>& cols,
                                         std::vector<double>& vals) {
    SparseMatrix m;
    m.n = n;
    m.row_ptr.assign(n + 1, 0);

    const std::size_t nt = rows.size();
    std::vector<std::size_t> order(nt);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (rows[a] != rows[b]) return rows[a] < rows[b];
        return cols[a] < cols[b];
    });

    m.cols.reserve(nt);
    m.vals.reserve(nt);
    std::int32_t last_row = -1;
    for (std::size_t q : order) {
        const std::int32_t r = rows[q], c = cols[q];
        if (last_row == r && m.cols.back() == c) {
            m.vals.back() += vals[q];
        } else {
            m.cols.push_back(c);
            m.vals.push_back(vals[q]);
            last_row = r;
        }
        m.row_ptr[r + 1] = static_cast<std::int64_t>(m.cols.size());
    }
    // Rows without entries still need cumulative offsets.
    for (std::int32_t r = 0; r < n; ++r)
        m.row_ptr[r + 1] = std::max(m.row_ptr[r + 1], m.row_ptr[r]);
    return m;
}

void SparseMatrix::matvec(const double* x, double* y) const {
    for (std::int32_t r = 0; r < n; ++r) {
        double acc = 0.0;
        for (std::int64_t q = row_ptr[r]; q < row_ptr[r + 1]; ++q)
            acc += vals[q] * x[cols[q]];
        y[r] = acc;
    }
}

std::vector<double> SparseMatrix::matvec(const std::vector<double>& x) const {
    std::vector<double> y(n, 0.0);
    matvec(x.data(), y.data());
    return y;
}

double SparseMatrix::trace() const {
    double t = 0.0;
    for (std::int32_t r = 0; r < n; ++r)
        for (std::int64_t q = row_ptr[r]; q < row_ptr[r + 1]; ++q)
            if (cols[q] == r) t += vals[q];
    return t;
}

double SparseMatrix::row_sum(std::int32_t r) const {
    double s = 0.0;
    for (std::int64_t q = row_ptr[r]; q < row_ptr[r + 1]; ++q) s += vals[q];
    return s;
}

double SparseMatrix::max_abs() const {
    double m = 0.0;
    for (double v : vals) m = std::max(m, std::abs(v));
    return m;
}

SparseMatrix SparseMatrix::submatrix(const std::vector<std::int32_t>& keep) const {
    std::vector<std::int32_t> where(n, -1);
    for (std::size_t i = 0; i < keep.size(); ++i) where[keep[i]] = static_cast<std::int32_t>(i);

    SparseMatrix out;
    out.n = static_cast<std::int32_t>(keep.size());
    out.row_ptr.assign(out.n + 1, 0);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        const std::int32_t r = keep[i];
        for (std::int64_t q = row_ptr[r]; q < row_ptr[r + 1]; ++q)
            if (where[cols[q]] >= 0) {
                out.cols.push_back(where[cols[q]]);
                out.vals.push_back(vals[q]);
            }
        out.row_ptr[i + 1] = static_cast<std::int64_t>(out.cols.size());
    }
    return out;
}

}  // namespace fdrum::fem
