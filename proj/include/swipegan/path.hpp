#pragma once

#include <string>
#include <vector>

#include "swipegan/geometry.hpp"
#include "swipegan/layout.hpp"

namespace swipegan {

enum class Source { USER_STYLE, SYNTHETIC, GAN };

const char* source_tag(Source s);           // "user" | "synthetic" | "gan"
Source source_from_tag(const std::string&); // inverse; throws ParseError-free InvalidArgumentError

// Ordered 2-D point sequence with its word label. Time is implicit: points
// are uniformly spaced in time by index.
struct Path {
    std::string word;
    std::vector<Point> points;
    Source source = Source::SYNTHETIC;
};

// Total polyline length.
double arc_length(const std::vector<Point>& pts);

// n points uniformly spaced by cumulative arc length; endpoints preserved
// exactly. Degenerate (zero-length) inputs repeat the first point.
Path resample(const Path& path, int n);
std::vector<Point> resample_points(const std::vector<Point>& pts, int n);

// Mean squared pointwise Euclidean distance; requires equal lengths.
double path_distance(const Path& x, const Path& y);
double path_distance(const std::vector<Point>& x, const std::vector<Point>& y);

struct PathStats {
    double arc_length = 0.0;
    double mean_abs_turn = 0.0;   // radians per interior point
    double start_key_dist = 0.0;  // filled by the layout overload
    double end_key_dist = 0.0;
};

PathStats path_stats(const Path& path);
// Adds endpoint distances to the word's first/last via key centers.
PathStats path_stats(const Path& path, const KeyboardLayout& layout);

}  // namespace swipegan
