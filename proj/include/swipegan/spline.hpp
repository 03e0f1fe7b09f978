#pragma once

#include <vector>

#include "swipegan/geometry.hpp"

namespace swipegan {

// Natural cubic spline through 2-D via points, chord-length parameterized.
// With two points it degenerates to the straight segment, with one point to a
// constant curve.
class CubicSpline2D {
public:
    explicit CubicSpline2D(std::vector<Point> via);

    Point evaluate(double t) const;

    // Knot parameter values (cumulative chord lengths), one per via point.
    const std::vector<double>& knots() const { return knots_; }
    const std::vector<Point>& via_points() const { return via_; }
    double total() const { return knots_.back(); }

private:
    std::vector<Point> via_;
    std::vector<double> knots_;
    std::vector<Point> m2_;  // second derivatives at knots (natural: zero at ends)
};

}  // namespace swipegan
