#pragma once

#include <array>
#include <cmath>
#include <vector>

namespace fdrum {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

// Planar affine map p -> A p + t with A stored row major.
struct AffineMap {
    std::array<double, 4> a{1.0, 0.0, 0.0, 1.0};  // a00 a01 a10 a11
    Vec2 t{0.0, 0.0};

    Vec2 operator()(const Vec2& p) const {
        return {a[0] * p.x + a[1] * p.y + t.x, a[2] * p.x + a[3] * p.y + t.y};
    }

    // this after other: (this o other)(p) = this(other(p))
    AffineMap compose(const AffineMap& o) const {
        AffineMap r;
        r.a = {a[0] * o.a[0] + a[1] * o.a[2], a[0] * o.a[1] + a[1] * o.a[3],
               a[2] * o.a[0] + a[3] * o.a[2], a[2] * o.a[1] + a[3] * o.a[3]};
        r.t = (*this)(o.t);
        return r;
    }

    // Largest singular value of the linear part.
    double operator_norm() const {
        const double g = a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3];
        const double d = a[0] * a[3] - a[1] * a[2];
        const double h = std::sqrt(std::max(0.0, g * g - 4.0 * d * d));
        return std::sqrt(0.5 * (g + h));
    }

    static AffineMap scale(double s) { return {{s, 0.0, 0.0, s}, {0.0, 0.0}}; }

    // Orientation preserving similarity taking (0,0) -> p and (1,0) -> q.
    static AffineMap segment_frame(const Vec2& p, const Vec2& q) {
        const Vec2 d = q - p;
        return {{d.x, -d.y, d.y, d.x}, p};
    }
};

struct BBox {
    Vec2 lo{0.0, 0.0};
    Vec2 hi{0.0, 0.0};

    double width() const { return hi.x - lo.x; }
    double height() const { return hi.y - lo.y; }
    double diameter() const { return (hi - lo).norm(); }

    static BBox of(const std::vector<Vec2>& pts);
    void expand(double margin) {
        lo.x -= margin; lo.y -= margin;
        hi.x += margin; hi.y += margin;
    }
};

inline BBox BBox::of(const std::vector<Vec2>& pts) {
    BBox b;
    if (pts.empty()) return b;
    b.lo = b.hi = pts.front();
    for (const Vec2& p : pts) {
        b.lo.x = std::min(b.lo.x, p.x);
        b.lo.y = std::min(b.lo.y, p.y);
        b.hi.x = std::max(b.hi.x, p.x);
        b.hi.y = std::max(b.hi.y, p.y);
    }
    return b;
}

}  // namespace fdrum
