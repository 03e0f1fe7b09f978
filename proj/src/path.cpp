#include "swipegan/path.hpp"

#include <cmath>

#include "swipegan/error.hpp"

namespace swipegan {

const char* source_tag(Source s) {
    switch (s) {
        case Source::USER_STYLE: return "user";
        case Source::SYNTHETIC: return "synthetic";
        case Source::GAN: return "gan";
    }
    return "synthetic";
}

Source source_from_tag(const std::string& tag) {
    if (tag == "user") return Source::USER_STYLE;
    if (tag == "synthetic") return Source::SYNTHETIC;
    if (tag == "gan") return Source::GAN;
    throw InvalidArgumentError("unknown source tag \"" + tag + "\"");
}

double arc_length(const std::vector<Point>& pts) {
    double total = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) total += distance(pts[i - 1], pts[i]);
    return total;
}

std::vector<Point> resample_points(const std::vector<Point>& pts, int n) {
    if (n < 2) throw InvalidArgumentError("resample: n must be >= 2");
    if (pts.size() < 2) throw InvalidArgumentError("resample: need at least 2 points");

    std::vector<double> cum(pts.size(), 0.0);
    for (std::size_t i = 1; i < pts.size(); ++i)
        cum[i] = cum[i - 1] + distance(pts[i - 1], pts[i]);
    const double total = cum.back();

    std::vector<Point> out(static_cast<std::size_t>(n));
    if (total <= 0.0) {
        for (auto& p : out) p = pts.front();
        return out;
    }

    out.front() = pts.front();
    out.back() = pts.back();
    std::size_t seg = 0;
    for (int i = 1; i + 1 < n; ++i) {
        const double target = total * static_cast<double>(i) / static_cast<double>(n - 1);
        while (seg + 2 < pts.size() && cum[seg + 1] < target) ++seg;
        const double seg_len = cum[seg + 1] - cum[seg];
        const double t = seg_len > 0.0 ? (target - cum[seg]) / seg_len : 0.0;
        out[static_cast<std::size_t>(i)] = lerp(pts[seg], pts[seg + 1], t);
    }
    return out;
}

Path resample(const Path& path, int n) {
    Path out;
    out.word = path.word;
    out.source = path.source;
    out.points = resample_points(path.points, n);
    return out;
}

double path_distance(const std::vector<Point>& x, const std::vector<Point>& y) {
    if (x.size() != y.size())
        throw LengthMismatchError("path_distance: lengths " + std::to_string(x.size()) + " vs " +
                                  std::to_string(y.size()));
    if (x.empty()) throw InvalidArgumentError("path_distance: empty paths");
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += squared_distance(x[i], y[i]);
    return acc / static_cast<double>(x.size());
}

double path_distance(const Path& x, const Path& y) { return path_distance(x.points, y.points); }

PathStats path_stats(const Path& path) {
    const auto& pts = path.points;
    if (pts.size() < 2) throw InvalidArgumentError("path_stats: need at least 2 points");
    PathStats s;
    s.arc_length = arc_length(pts);
    double turn_sum = 0.0;
    int turn_count = 0;
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        const Point a = pts[i] - pts[i - 1];
        const Point b = pts[i + 1] - pts[i];
        if (norm(a) < 1e-15 || norm(b) < 1e-15) continue;
        turn_sum += std::fabs(std::atan2(cross(a, b), dot(a, b)));
        ++turn_count;
    }
    s.mean_abs_turn = turn_count > 0 ? turn_sum / turn_count : 0.0;
    return s;
}

PathStats path_stats(const Path& path, const KeyboardLayout& layout) {
    PathStats s = path_stats(path);
    const std::string collapsed = collapse_duplicates(path.word);
    if (!collapsed.empty()) {
        s.start_key_dist = distance(path.points.front(), layout.key_center(collapsed.front()));
        s.end_key_dist = distance(path.points.back(), layout.key_center(collapsed.back()));
    }
    return s;
}

}  // namespace swipegan
