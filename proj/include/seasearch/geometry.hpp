#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Core>

namespace seasearch {

using Vec2 = Eigen::Vector2d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kGravity = 9.81;

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a)
{
    a = std::remainder(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    return a;
}

inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

/// z-component of the 2-D cross product; positive when b is counter-clockwise of a.
inline double cross2(const Vec2 &a, const Vec2 &b) { return a.x() * b.y() - a.y() * b.x(); }

/// Axis-aligned rectangle [x0, x1] x [y0, y1].
struct Rect {
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 0.0;
    double y1 = 0.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }
    Vec2 center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }

    bool contains(const Vec2 &p, double eps = 1e-9) const
    {
        return p.x() >= x0 - eps && p.x() <= x1 + eps && p.y() >= y0 - eps && p.y() <= y1 + eps;
    }

    Vec2 clamp(const Vec2 &p) const
    {
        return {std::clamp(p.x(), x0, x1), std::clamp(p.y(), y0, y1)};
    }

    /// Left (index 0) or right (index 1) half split at the vertical mid-line.
    Rect half(int index) const
    {
        const double mid = 0.5 * (x0 + x1);
        return index == 0 ? Rect{x0, y0, mid, y1} : Rect{mid, y0, x1, y1};
    }
};

/// Euclidean distance from p to segment [a, b].
inline double point_segment_distance(const Vec2 &p, const Vec2 &a, const Vec2 &b)
{
    const Vec2 ab = b - a;
    const double len2 = ab.squaredNorm();
    if (len2 == 0.0) return (p - a).norm();
    const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return (p - (a + t * ab)).norm();
}

} // namespace seasearch
