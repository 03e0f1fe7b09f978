#include "swipegan/spline.hpp"

#include <algorithm>

#include "swipegan/error.hpp"

namespace swipegan {

CubicSpline2D::CubicSpline2D(std::vector<Point> via) : via_(std::move(via)) {
    const std::size_t m = via_.size();
    if (m == 0) throw InvalidArgumentError("spline: no via points");
    knots_.resize(m, 0.0);
    for (std::size_t i = 1; i < m; ++i) {
        const double h = distance(via_[i - 1], via_[i]);
        if (h <= 0.0)
            throw InvalidArgumentError("spline: coincident consecutive via points");
        knots_[i] = knots_[i - 1] + h;
    }
    m2_.assign(m, {0.0, 0.0});
    if (m < 3) return;

    // Thomas solve of the natural-spline tridiagonal system, per coordinate.
    const std::size_t n = m - 2;
    std::vector<double> diag(n), upper(n), rhs_x(n), rhs_y(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double h0 = knots_[j + 1] - knots_[j];
        const double h1 = knots_[j + 2] - knots_[j + 1];
        diag[j] = (h0 + h1) / 3.0;
        upper[j] = h1 / 6.0;
        const Point d1 = (via_[j + 2] - via_[j + 1]) * (1.0 / h1);
        const Point d0 = (via_[j + 1] - via_[j]) * (1.0 / h0);
        rhs_x[j] = d1.x - d0.x;
        rhs_y[j] = d1.y - d0.y;
    }
    for (std::size_t j = 1; j < n; ++j) {
        const double lower = (knots_[j + 1] - knots_[j]) / 6.0;
        const double w = lower / diag[j - 1];
        diag[j] -= w * upper[j - 1];
        rhs_x[j] -= w * rhs_x[j - 1];
        rhs_y[j] -= w * rhs_y[j - 1];
    }
    m2_[n].x = rhs_x[n - 1] / diag[n - 1];
    m2_[n].y = rhs_y[n - 1] / diag[n - 1];
    for (std::size_t j = n - 1; j >= 1; --j) {
        m2_[j].x = (rhs_x[j - 1] - upper[j - 1] * m2_[j + 1].x) / diag[j - 1];
        m2_[j].y = (rhs_y[j - 1] - upper[j - 1] * m2_[j + 1].y) / diag[j - 1];
    }
}

Point CubicSpline2D::evaluate(double t) const {
    const std::size_t m = via_.size();
    if (m == 1) return via_[0];
    t = std::clamp(t, knots_.front(), knots_.back());
    // Locate the segment [knots_[j], knots_[j+1]].
    std::size_t j = static_cast<std::size_t>(
        std::upper_bound(knots_.begin(), knots_.end(), t) - knots_.begin());
    j = std::clamp<std::size_t>(j, 1, m - 1) - 1;

    const double h = knots_[j + 1] - knots_[j];
    const double a = (knots_[j + 1] - t) / h;
    const double b = (t - knots_[j]) / h;
    const double wa = (a * a * a - a) * h * h / 6.0;
    const double wb = (b * b * b - b) * h * h / 6.0;
    return {a * via_[j].x + b * via_[j + 1].x + wa * m2_[j].x + wb * m2_[j + 1].x,
            a * via_[j].y + b * via_[j + 1].y + wa * m2_[j].y + wb * m2_[j + 1].y};
}

}  // namespace swipegan
