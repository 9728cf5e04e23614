#pragma once

#include <cmath>
#include <array>

namespace flowlab {

/// Plain 2-vector used for displacements, tangents, normals and grid points.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    Vec2 operator-() const { return {-x, -y}; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }
    /// 90-degree clockwise rotation; maps a unit tangent to the outward normal.
    Vec2 rot_cw() const { return {y, -x}; }
    Vec2 rot_ccw() const { return {-y, x}; }
    Vec2 normalized() const { double n = norm(); return {x / n, y / n}; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

/// Canonical representative of a real number modulo 1, in [0,1).
inline double wrap01(double t) {
    double w = t - std::floor(t);
    if (w >= 1.0) w -= 1.0;  // guards against floor rounding at negative epsilons
    return w;
}

/// Representative of t modulo 1 in [-1/2, 1/2).
inline double wrap_half(double t) {
    double w = t - std::floor(t + 0.5);
    if (w >= 0.5) w -= 1.0;
    return w;
}

/// A position on the unit flat 2-torus, stored by its canonical
/// representative in [0,1)^2.
struct TorusPoint {
    double x1 = 0.0;
    double x2 = 0.0;

    TorusPoint() = default;
    TorusPoint(double a, double b) : x1(wrap01(a)), x2(wrap01(b)) {}

    static TorusPoint canon(double a, double b) { return TorusPoint(a, b); }
    static TorusPoint canon(const Vec2& v) { return TorusPoint(v.x, v.y); }

    Vec2 as_vec() const { return {x1, x2}; }
    TorusPoint translated(const Vec2& d) const { return TorusPoint(x1 + d.x, x2 + d.y); }
};

/// Wrapped difference p - q, both components in [-1/2, 1/2).
inline Vec2 wrap_diff(const TorusPoint& p, const TorusPoint& q) {
    return {wrap_half(p.x1 - q.x1), wrap_half(p.x2 - q.x2)};
}

inline Vec2 wrap_diff(const Vec2& p, const Vec2& q) {
    return {wrap_half(p.x - q.x), wrap_half(p.y - q.y)};
}

/// Torus distance between two points.
inline double torus_dist(const TorusPoint& p, const TorusPoint& q) {
    return wrap_diff(p, q).norm();
}

}  // namespace flowlab
