#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "fdrum/errors.hpp"
#include "fdrum/fem.hpp"

namespace fdrum::fem {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr int kDenseCutoff = 600;

SpMat to_eigen(const SparseMatrix& m) {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(m.cols.size());
    for (std::int32_t r = 0; r < m.n; ++r)
        for (std::int64_t q = m.row_ptr[r]; q < m.row_ptr[r + 1]; ++q)
            trips.emplace_back(r, m.cols[q], m.vals[q]);
    SpMat s(m.n, m.n);
    s.setFromTriplets(trips.begin(), trips.end());
    return s;
}

// A stiffness matrix with every row summing to ~0 annihilates constants:
// natural (Neumann) problem, needs the regularizing shift.
bool is_singular_stiffness(const SparseMatrix& K) {
    const double scale = std::max(K.max_abs(), 1e-300);
    double worst = 0.0;
    for (std::int32_t r = 0; r < K.n; ++r)
        worst = std::max(worst, std::abs(K.row_sum(r)));
    return worst <= 1e-10 * scale;
}

void compute_residuals(const SparseMatrix& K, const SparseMatrix& M,
                       Spectrum& s) {
    const std::size_t k = s.eigenvalues.size();
    const std::int32_t n = K.n;
    s.residuals.assign(k, 0.0);
    std::vector<double> x(n), kx(n), mx(n);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::int32_t r = 0; r < n; ++r)
            x[r] = s.eigenvectors(r, static_cast<Eigen::Index>(i));
        K.matvec(x.data(), kx.data());
        M.matvec(x.data(), mx.data());
        double rn = 0.0, mn = 0.0;
        for (std::int32_t r = 0; r < n; ++r) {
            const double d = kx[r] - s.eigenvalues[i] * mx[r];
            rn += d * d;
            mn += mx[r] * mx[r];
        }
        s.residuals[i] = std::sqrt(rn) / std::max(std::sqrt(mn), 1e-300);
    }
}

Spectrum solve_dense(const SparseMatrix& K, const SparseMatrix& M, int k) {
    const std::int32_t n = K.n;
    MatrixXd Kd = MatrixXd::Zero(n, n), Md = MatrixXd::Zero(n, n);
    for (std::int32_t r = 0; r < n; ++r) {
        for (std::int64_t q = K.row_ptr[r]; q < K.row_ptr[r + 1]; ++q)
            Kd(r, K.cols[q]) += K.vals[q];
        for (std::int64_t q = M.row_ptr[r]; q < M.row_ptr[r + 1]; ++q)
            Md(r, M.cols[q]) += M.vals[q];
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> es(Kd, Md);
    if (es.info() != Eigen::Success)
        throw SolverError("dense generalized eigensolver failed");
    Spectrum s;
    s.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + k);
    s.eigenvectors = es.eigenvectors().leftCols(k);
    compute_residuals(K, M, s);
    s.converged = true;
    return s;
}

// Right-multiplication by the inverse of an upper triangular factor.
void apply_inv_upper(MatrixXd& x, const MatrixXd& r) {
    MatrixXd xt = x.transpose();
    r.transpose().triangularView<Eigen::Lower>().solveInPlace(xt);
    x = xt.transpose();
}

}  // namespace

Spectrum solve_smallest(const SparseMatrix& K, const SparseMatrix& M, int k,
                        double tol, std::uint64_t seed) {
    const std::int32_t n = K.n;
    if (M.n != n) throw ConfigError("stiffness and mass sizes differ");
    if (k < 1 || k > n)
        throw ConfigError("requested eigenpair count must be in [1, n]");

    if (n <= kDenseCutoff) return solve_dense(K, M, k);
    if (4LL * k + 24 >= n && n <= 6000) return solve_dense(K, M, k);

    // The shift must sit well above the factorization noise floor, which
    // grows like 1 / (eps * h^2); 1e-4 of the mean diagonal keeps the floor
    // a few decades under the tolerance while staying far below the first
    // nonzero eigenvalue. The reported values subtract the shift exactly,
    // so it introduces no bias.
    const double eps =
        is_singular_stiffness(K) ? 1e-4 * K.trace() / n : 0.0;

    const SpMat Ke = to_eigen(K);
    const SpMat Me = to_eigen(M);
    const SpMat A = eps == 0.0 ? Ke : SpMat(Ke + eps * Me);
    Eigen::SimplicialLDLT<SpMat> chol(A);
    if (chol.info() != Eigen::Success)
        throw SolverError("sparse Cholesky factorization failed");

    const int b = 4;
    const int max_basis = static_cast<int>(std::min<std::int64_t>(
        n - n % b, std::max<std::int64_t>(6LL * k + 30, 60)));
    if (k + b > max_basis)
        throw ConfigError("eigenpair count too large for the iterative solver");

    std::mt19937_64 rng(seed);
    auto rand_fill = [&](Eigen::Ref<MatrixXd> x) {
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            for (Eigen::Index i = 0; i < x.rows(); ++i)
                x(i, j) = ((rng() >> 11) * 0x1.0p-53) * 2.0 - 1.0;
    };

    MatrixXd Q(n, max_basis);
    MatrixXd T = MatrixXd::Zero(max_basis, max_basis);

    // M-orthonormalizes x (Cholesky QR in the M inner product, two passes);
    // returns the combined triangular factor or fails on rank deficiency.
    auto m_orthonormalize = [&](MatrixXd& x, MatrixXd& r_total) -> bool {
        r_total = MatrixXd::Identity(x.cols(), x.cols());
        for (int pass = 0; pass < 2; ++pass) {
            const MatrixXd g = x.transpose() * (Me * x);
            Eigen::LLT<MatrixXd> llt(g);
            if (llt.info() != Eigen::Success) return false;
            const MatrixXd r = llt.matrixU();
            apply_inv_upper(x, r);
            r_total = r * r_total;
        }
        return true;
    };

    auto orth_against_basis = [&](int m, MatrixXd& z) {
        for (int pass = 0; pass < 2; ++pass) {
            const MatrixXd c = Q.leftCols(m).transpose() * (Me * z);
            z.noalias() -= Q.leftCols(m) * c;
        }
    };

    // Thick-restart block Lanczos. Between restarts the best Ritz vectors
    // stay locked in the basis: T restarts as diag(theta) plus the coupling
    // row block carried by the pending next block x, so no convergence
    // progress is thrown away.
    MatrixXd x(n, b);
    rand_fill(x);
    MatrixXd rfac;
    if (!m_orthonormalize(x, rfac))
        throw SolverError("cannot build an M-orthonormal start block");
    MatrixXd coupling(b, 0);
    int m = 0;
    int steps_since_check = 0;
    int restarts = 0;

    {
        while (m + b <= max_basis) {
            Q.middleCols(m, b) = x;
            if (coupling.cols() > 0) {
                T.block(m, 0, b, m) = coupling;
                T.block(0, m, m, b) = coupling.transpose();
            }
            m += b;

            MatrixXd z = chol.solve(Me * Q.middleCols(m - b, b));
            if (chol.info() != Eigen::Success)
                throw SolverError("sparse triangular solve failed");

            // Rayleigh coefficients against the whole basis (full
            // reorthogonalization), then a cleanup pass.
            MatrixXd c = Q.leftCols(m).transpose() * (Me * z);
            T.block(0, m - b, m, b) = c;
            T.block(m - b, 0, b, m) = c.transpose();
            z.noalias() -= Q.leftCols(m) * c;
            {
                const MatrixXd c2 = Q.leftCols(m).transpose() * (Me * z);
                z.noalias() -= Q.leftCols(m) * c2;
            }

            if (!m_orthonormalize(z, rfac)) {
                // Krylov breakdown: refresh with random directions that are
                // orthogonal to everything found so far.
                rand_fill(z);
                orth_against_basis(m, z);
                if (!m_orthonormalize(z, rfac))
                    throw SolverError("block Lanczos breakdown");
                rfac.setZero();
            }
            coupling.resize(b, m);
            coupling.setZero();
            coupling.rightCols(b) = rfac;
            x = z;

            const bool basis_full = m + b > max_basis;
            if (m < k || (++steps_since_check < 2 && !basis_full)) continue;
            steps_since_check = 0;

            Eigen::SelfAdjointEigenSolver<MatrixXd> es(T.topLeftCorner(m, m));
            // Columns reversed so the largest operator eigenvalue (smallest
            // lambda) comes first.
            const MatrixXd s =
                MatrixXd(es.eigenvectors().rowwise().reverse());
            Spectrum trial;
            trial.eigenvalues.resize(k);
            trial.eigenvectors = Q.leftCols(m) * s.leftCols(k);
            for (int i = 0; i < k; ++i) {
                const double theta = es.eigenvalues()(m - 1 - i);
                trial.eigenvalues[i] =
                    theta > 0.0 ? 1.0 / theta - eps
                                : std::numeric_limits<double>::infinity();
            }
            compute_residuals(K, M, trial);
            // tol reads as a relative eigenvalue accuracy: the residual of a
            // symmetric pencil bounds |lambda - lambda_exact|, so scale the
            // bar by the eigenvalue itself (floored at one for zero modes)
            bool done = true;
            for (int i = 0; i < k; ++i)
                done = done &&
                       trial.residuals[i] <=
                           tol * std::max(1.0, std::abs(trial.eigenvalues[i]));
            if (done || (basis_full && restarts >= kMaxRestarts)) {
                MatrixXd rfin;
                if (m_orthonormalize(trial.eigenvectors, rfin))
                    compute_residuals(K, M, trial);
                trial.converged = done;
                return trial;
            }
            if (basis_full) {
                // Lock the best Ritz vectors and restart around them.
                ++restarts;
                const int keep =
                    std::min(m - b, std::max(k + b, m / 2) / b * b);
                const MatrixXd sk = s.leftCols(keep);
                const MatrixXd locked = Q.leftCols(m) * sk;
                coupling = coupling * sk;
                Q.leftCols(keep) = locked;
                T.setZero();
                for (int i = 0; i < keep; ++i)
                    T(i, i) = es.eigenvalues()(m - 1 - i);
                m = keep;
            }
        }
    }
    throw SolverError("eigensolver failed to converge");
}

}  // namespace fdrum::fem
