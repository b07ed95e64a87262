#include "fdrum/snowflake.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "fdrum/errors.hpp"

namespace fdrum::snowflake {

namespace {

constexpr double kRoot3 = 1.7320508075688772;

void validate(const Spec& spec) {
    if (spec.level < 0 || spec.level > kMaxLevel)
        throw ConfigError("snowflake level must be in [0, " +
                          std::to_string(kMaxLevel) + "]");
    if (spec.kind == Kind::quadratic) {
        if (!(spec.b > 0.0 && spec.b < 1.0))
            throw ConfigError("quadratic parameter b must be in (0, 1)");
        if (std::abs(2.0 * spec.a + spec.b - 1.0) > 1e-12)
            throw ConfigError("quadratic parameters must satisfy 2a + b = 1");
    }
}

// Appends the start points of the level-m images of the unit segment under
// all branch words, in lexicographic word order. The final endpoint (1,0)
// is supplied by the next edge of the surrounding polygon.
void expand_edge(const AffineMap& frame, const std::vector<AffineMap>& branches,
                 int depth, std::vector<Vec2>& out) {
    if (depth == 0) {
        out.push_back(frame(Vec2{0.0, 0.0}));
        return;
    }
    for (const AffineMap& f : branches)
        expand_edge(frame.compose(f), branches, depth - 1, out);
}

}  // namespace

std::vector<AffineMap> ifs_branches(const Spec& spec) {
    validate(spec);
    if (spec.kind == Kind::classic) {
        const double s = 1.0 / 3.0;
        const double c = 1.0 / 6.0;        // cos(60) / 3
        const double q = kRoot3 / 6.0;     // sin(60) / 3
        return {
            AffineMap{{s, 0.0, 0.0, s}, {0.0, 0.0}},
            AffineMap{{c, -q, q, c}, {1.0 / 3.0, 0.0}},
            AffineMap{{c, q, -q, c}, {0.5, q}},
            AffineMap{{s, 0.0, 0.0, s}, {2.0 / 3.0, 0.0}},
        };
    }
    const double a = spec.a, b = spec.b;
    return {
        AffineMap{{a, 0.0, 0.0, a}, {0.0, 0.0}},
        AffineMap{{0.0, -b, b, 0.0}, {a, 0.0}},
        AffineMap{{b, 0.0, 0.0, b}, {a, b}},
        AffineMap{{0.0, b, -b, 0.0}, {a + b, b}},
        AffineMap{{a, 0.0, 0.0, a}, {a + b, 0.0}},
    };
}

Polygon snowflake_polygon(const Spec& spec) {
    const std::vector<AffineMap> branches = ifs_branches(spec);

    // Base polygon traversed clockwise so the generator bump (on the +y side
    // of each directed edge) points outward; reversed to CCW at the end.
    std::vector<Vec2> base;
    if (spec.kind == Kind::classic) {
        base = {{0.0, 0.0}, {0.5, 0.5 * kRoot3}, {1.0, 0.0}};
    } else {
        const double w = 2.0 * spec.a + spec.b;
        base = {{0.0, 0.0}, {0.0, w}, {w, w}, {w, 0.0}};
    }

    Polygon poly;
    const std::size_t n = base.size();
    for (std::size_t i = 0; i < n; ++i) {
        const AffineMap frame =
            AffineMap::segment_frame(base[i], base[(i + 1) % n]);
        expand_edge(frame, branches, spec.level, poly.vertices);
    }
    std::reverse(poly.vertices.begin(), poly.vertices.end());
    return poly;
}

double Polygon::area() const {
    double twice = 0.0;
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i)
        twice += vertices[i].cross(vertices[(i + 1) % n]);
    return 0.5 * twice;
}

double area_at_level(const Spec& spec, int m) {
    validate(spec);
    if (m < 0) throw ConfigError("level must be non-negative");
    if (spec.kind == Kind::classic) {
        const double a0 = kRoot3 / 4.0;
        return a0 / 5.0 * (8.0 - 3.0 * std::pow(4.0 / 9.0, m));
    }
    const double a = spec.a, b = spec.b;
    const double r = 2.0 * a * a + 3.0 * b * b;
    double geom = 0.0, term = 1.0;
    for (int j = 0; j < m; ++j) {
        geom += term;
        term *= r;
    }
    const double side = 2.0 * a + b;
    return side * side + 4.0 * b * b * geom;
}

double area_limit(const Spec& spec) {
    validate(spec);
    if (spec.kind == Kind::classic) return 2.0 * kRoot3 / 5.0;
    const double a = spec.a, b = spec.b;
    const double r = 2.0 * a * a + 3.0 * b * b;
    if (!(r < 1.0))
        throw ConfigError("quadratic area series diverges: 2a^2 + 3b^2 >= 1");
    const double side = 2.0 * a + b;
    return side * side + 4.0 * b * b / (1.0 - r);
}

double boxdim_closed_form(const Spec& spec) {
    validate(spec);
    if (spec.kind == Kind::classic) return std::log(4.0) / std::log(3.0);
    const double a = spec.a, b = spec.b;
    auto f = [&](double d) {
        return 2.0 * std::pow(a, d) + 3.0 * std::pow(b, d) - 1.0;
    };
    // f is strictly decreasing with f(1) = 2b > 0 and f(2) = 2a^2+3b^2-1 < 0
    // for every spec that also has a finite area limit.
    double lo = 1.0, hi = 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double val = f(mid);
        if (std::abs(val) <= 1e-12) return mid;
        (val > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace fdrum::snowflake
