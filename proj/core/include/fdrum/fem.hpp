#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fdrum/mesh.hpp"
#include "fdrum/sparse.hpp"

namespace fdrum::fem {

enum class BC { dirichlet, neumann };

inline const char* to_string(BC bc) {
    return bc == BC::dirichlet ? "dirichlet" : "neumann";
}

// P1 stiffness and mass on the full mesh, all vertices.
struct AssembledSystem {
    SparseMatrix stiffness;
    SparseMatrix mass;
};

AssembledSystem assemble(const mesh::TriMesh& mesh);

// Dirichlet conditions are applied by eliminating boundary vertices;
// dof_to_vertex maps reduced indices back to mesh vertices. Neumann keeps
// the matrices as assembled (natural condition) with the identity map.
struct ReducedSystem {
    SparseMatrix stiffness;
    SparseMatrix mass;
    std::vector<std::int32_t> dof_to_vertex;
    BC bc = BC::dirichlet;
};

ReducedSystem apply_bc(const AssembledSystem& sys, const mesh::TriMesh& mesh,
                       BC bc);

struct SpectrumMeta {
    std::string domain;
    std::string bc;
    double mesh_resolution = 0.0;
    double solver_tol = 0.0;
    std::uint64_t seed = 0;
};

// Smallest eigenpairs of K u = lambda M u, ascending, with M-orthonormal
// eigenvectors (columns) on the reduced dofs. residuals[i] holds
// ||K u - lambda M u||_2 / ||M u||_2. converged is false when the solver ran
// out of restarts; the partial results are still returned.
struct Spectrum {
    std::vector<double> eigenvalues;
    Eigen::MatrixXd eigenvectors;
    std::vector<double> residuals;
    bool converged = true;
    SpectrumMeta meta;
};

// tol bounds the eigenvalue error relative to max(1, |lambda|); the restart
// cap ends a stalled solve with converged = false instead of spinning.
inline constexpr double kSolverTol = 1e-8;
inline constexpr int kMaxRestarts = 60;

// Shift-invert block Lanczos in the M inner product with full
// reorthogonalization; inner solves by sparse Cholesky of K (+ eps M when K
// is singular, i.e. the Neumann zero mode). Deterministic for a fixed seed.
Spectrum solve_smallest(const SparseMatrix& K, const SparseMatrix& M, int k,
                        double tol = kSolverTol, std::uint64_t seed = 1);

// Eigenvector on all mesh vertices, zeros re-inserted on eliminated dofs.
std::vector<double> expand_eigenvector(const Spectrum& spec,
                                       const ReducedSystem& sys,
                                       std::size_t which,
                                       std::size_t vertex_count);

enum class EnergyVariant { gradient, edge_normal };

// Per-triangle energy of a P1 field u (values on all mesh vertices):
// gradient variant |grad u|^2 * area, edge variant sum over the triangle's
// edges of (grad u . n)^2 * edge length.
struct EnergyField {
    EnergyVariant variant = EnergyVariant::gradient;
    std::vector<double> values;   // one per triangle

    double total() const;
};

EnergyField energy_distribution(const mesh::TriMesh& mesh,
                                const std::vector<double>& u,
                                EnergyVariant variant);

// Cellwise weighted sum of fields of identical shape and variant.
EnergyField energy_combination(const std::vector<const EnergyField*>& fields,
                               const std::vector<double>& weights);

}  // namespace fdrum::fem
