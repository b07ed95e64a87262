#include <array>
#include <cmath>

#include "fdrum/errors.hpp"
#include "fdrum/fem.hpp"

namespace fdrum::fem {

AssembledSystem assemble(const mesh::TriMesh& mesh) {
    const auto n = static_cast<std::int32_t>(mesh.vertex_count());
    if (n == 0) throw ConfigError("cannot assemble an empty mesh");
    const double scale = mesh.bbox().diameter();

    std::vector<std::int32_t> ri, ci;
    std::vector<double> kv, mv;
    const std::size_t guess = mesh.triangle_count() * 9;
    ri.reserve(guess);
    ci.reserve(guess);
    kv.reserve(guess);
    mv.reserve(guess);

    for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
        const auto& tri = mesh.triangles[t];
        const Vec2& p0 = mesh.vertices[tri[0]];
        const Vec2& p1 = mesh.vertices[tri[1]];
        const Vec2& p2 = mesh.vertices[tri[2]];
        const double area = mesh.triangle_area(t);
        if (!(area > 1e-14 * scale * scale))
            throw ConfigError("degenerate triangle in assembly");

        // Opposite edge vectors; grad(lambda_i) = rot90(e_i) / (2 area), so
        // K_ij = (e_i . e_j) / (4 area).
        const std::array<Vec2, 3> e = {p2 - p1, p0 - p2, p1 - p0};
        const double inv4a = 1.0 / (4.0 * area);
        const double m_off = area / 12.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                ri.push_back(tri[i]);
                ci.push_back(tri[j]);
                kv.push_back(e[i].dot(e[j]) * inv4a);
                mv.push_back(i == j ? 2.0 * m_off : m_off);
            }
    }

    AssembledSystem sys;
    std::vector<std::int32_t> ri2 = ri, ci2 = ci;
    sys.stiffness = SparseMatrix::from_triplets(n, ri, ci, kv);
    sys.mass = SparseMatrix::from_triplets(n, ri2, ci2, mv);
    return sys;
}

ReducedSystem apply_bc(const AssembledSystem& sys, const mesh::TriMesh& mesh,
                       BC bc) {
    ReducedSystem red;
    red.bc = bc;
    const auto n = static_cast<std::int32_t>(mesh.vertex_count());
    if (sys.stiffness.n != n)
        throw ConfigError("system does not match the mesh");

    if (bc == BC::neumann) {
        red.stiffness = sys.stiffness;
        red.mass = sys.mass;
        red.dof_to_vertex.resize(n);
        for (std::int32_t i = 0; i < n; ++i) red.dof_to_vertex[i] = i;
        return red;
    }

    for (std::int32_t i = 0; i < n; ++i)
        if (!mesh.on_boundary[i]) red.dof_to_vertex.push_back(i);
    if (red.dof_to_vertex.empty())
        throw ConfigError(
            "Dirichlet problem has no interior vertices on this mesh");
    red.stiffness = sys.stiffness.submatrix(red.dof_to_vertex);
    red.mass = sys.mass.submatrix(red.dof_to_vertex);
    return red;
}

std::vector<double> expand_eigenvector(const Spectrum& spec,
                                       const ReducedSystem& sys,
                                       std::size_t which,
                                       std::size_t vertex_count) {
    std::vector<double> full(vertex_count, 0.0);
    for (std::size_t i = 0; i < sys.dof_to_vertex.size(); ++i)
        full[sys.dof_to_vertex[i]] =
            spec.eigenvectors(static_cast<Eigen::Index>(i),
                              static_cast<Eigen::Index>(which));
    return full;
}

}  // namespace fdrum::fem
