#pragma once

#include <vector>

#include "fdrum/geometry.hpp"

namespace fdrum::snowflake {

enum class Kind { classic, quadratic };

// Prefractal snowflake description. The classic kind substitutes every edge
// by the four-map Koch generator (ratio 1/3). The quadratic kind uses the
// five-map generator with two contraction ratios a and b tied by 2a + b = 1;
// the base polygon is the square with corners (0,0) and (2a+b, 2a+b).
struct Spec {
    Kind kind = Kind::classic;
    double a = 0.0;   // quadratic only
    double b = 0.0;   // quadratic only
    int level = 0;

    static Spec classic(int level) { return {Kind::classic, 0.0, 0.0, level}; }
    static Spec quadratic(double b, int level) {
        return {Kind::quadratic, 0.5 * (1.0 - b), b, level};
    }
};

// Closed polygonal curve, counterclockwise, first vertex not repeated.
struct Polygon {
    std::vector<Vec2> vertices;

    std::size_t edge_count() const { return vertices.size(); }
    double area() const;   // shoelace
    BBox bbox() const { return BBox::of(vertices); }
};

inline constexpr int kMaxLevel = 8;

// The edge substitution maps of the generator, unit segment convention:
// they chain f_i(1,0) = f_{i+1}(0,0) and map [0,1]x{0} onto the generator
// curve with the bump on the +y side. Validates the spec (level range,
// 2a + b = 1 within 1e-12 for quadratic).
std::vector<AffineMap> ifs_branches(const Spec& spec);

// Prefractal boundary at spec.level as a simple CCW polygon.
Polygon snowflake_polygon(const Spec& spec);

// Exact area of the level-m prefractal region.
double area_at_level(const Spec& spec, int m);

// Limit of area_at_level as m -> infinity.
double area_limit(const Spec& spec);

// Similarity (box-counting) dimension of the boundary curve. The classic
// value is log 4 / log 3; the quadratic one solves 2 a^d + 3 b^d = 1 by
// bisection on [1, 2] to residual 1e-12.
double boxdim_closed_form(const Spec& spec);

}  // namespace fdrum::snowflake
