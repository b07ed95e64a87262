#include <cmath>
#include <numeric>
#include <string>

#include "fdrum/errors.hpp"
#include "fdrum/fem.hpp"

namespace fdrum::fem {

namespace {

Vec2 perp(const Vec2& v) { return {-v.y, v.x}; }

}  // namespace

double EnergyField::total() const {
    return std::accumulate(values.begin(), values.end(), 0.0);
}

EnergyField energy_distribution(const mesh::TriMesh& mesh,
                                const std::vector<double>& u,
                                EnergyVariant variant) {
    if (u.size() != mesh.vertices.size())
        throw ConfigError("field length does not match vertex count");

    EnergyField field;
    field.variant = variant;
    field.values.resize(mesh.triangles.size());

    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tri = mesh.triangles[t];
        const Vec2 p0 = mesh.vertices[tri[0]];
        const Vec2 p1 = mesh.vertices[tri[1]];
        const Vec2 p2 = mesh.vertices[tri[2]];
        const double area = mesh.triangle_area(t);
        // grad of the P1 interpolant: sum of nodal values times the
        // rotated opposite edge, over twice the area.
        const Vec2 g = (1.0 / (2.0 * area)) *
                       (u[tri[0]] * perp(p2 - p1) + u[tri[1]] * perp(p0 - p2) +
                        u[tri[2]] * perp(p1 - p0));
        if (variant == EnergyVariant::gradient) {
            field.values[t] = g.dot(g) * area;
        } else {
            double acc = 0.0;
            const Vec2 edges[3] = {p1 - p0, p2 - p1, p0 - p2};
            for (const Vec2& d : edges) {
                const double len = d.norm();
                if (len == 0.0) continue;
                // outward normal of a CCW-directed edge
                const Vec2 nrm{d.y / len, -d.x / len};
                const double gn = g.dot(nrm);
                acc += gn * gn * len;
            }
            field.values[t] = acc;
        }
    }
    return field;
}

EnergyField energy_combination(const std::vector<const EnergyField*>& fields,
                               const std::vector<double>& weights) {
    if (fields.empty()) throw ConfigError("no energy fields given");
    if (fields.size() != weights.size())
        throw ConfigError("field and weight counts differ");
    for (const EnergyField* f : fields) {
        if (f == nullptr) throw ConfigError("null energy field");
        if (f->variant != fields[0]->variant)
            throw ConfigError("mixed energy variants");
        if (f->values.size() != fields[0]->values.size())
            throw ConfigError("energy fields have different shapes");
    }

    EnergyField out;
    out.variant = fields[0]->variant;
    out.values.assign(fields[0]->values.size(), 0.0);
    for (std::size_t f = 0; f < fields.size(); ++f)
        for (std::size_t i = 0; i < out.values.size(); ++i)
            out.values[i] += weights[f] * fields[f]->values[i];
    return out;
}

}  // namespace fdrum::fem
