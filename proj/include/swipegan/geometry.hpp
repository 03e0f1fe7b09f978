#pragma once

#include <cmath>

namespace swipegan {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
    friend Point operator*(double s, Point a) { return a * s; }
    friend bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::sqrt(a.x * a.x + a.y * a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline double squared_distance(Point a, Point b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}
inline Point lerp(Point a, Point b, double t) { return a + (b - a) * t; }

// Unit vector along a, or (0, 0) when a is (numerically) zero.
inline Point normalized(Point a) {
    const double n = norm(a);
    if (n < 1e-15) return {0.0, 0.0};
    return {a.x / n, a.y / n};
}

// Left-hand normal of a unit direction.
inline Point perpendicular(Point a) { return {-a.y, a.x}; }

}  // namespace swipegan
