#include "swipegan/svg.hpp"

#include <cmath>
#include <cstdio>

#include "swipegan/error.hpp"

namespace swipegan {

namespace {

constexpr double kScaleX = 1000.0;
constexpr double kScaleY = 333.0;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", x);
    return buf;
}

std::string segment_color(double t) {
    // #00a000 -> #e0c000
    const int r = static_cast<int>(std::lround(0xe0 * t));
    const int g = static_cast<int>(std::lround(0xa0 + (0xc0 - 0xa0) * t));
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x00", r, g);
    return buf;
}

}  // namespace

std::string render_svg(const KeyboardLayout& layout, const Path& path) {
    if (path.points.size() < 2) throw InvalidArgumentError("render_svg: need at least 2 points");

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 333\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"1000\" height=\"333\" fill=\"#ffffff\"/>\n";
    for (char c : layout.alphabet()) {
        const KeyBox& k = layout.key(c);
        const double x = (k.center.x - k.width / 2.0) * kScaleX;
        const double y = (k.center.y - k.height / 2.0) * kScaleY;
        out += "<rect x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" width=\"" + fmt(k.width * kScaleX) +
               "\" height=\"" + fmt(k.height * kScaleY) +
               "\" fill=\"none\" stroke=\"#b0b0b0\" stroke-width=\"1\"/>\n";
        out += "<text x=\"" + fmt(k.center.x * kScaleX) + "\" y=\"" + fmt(k.center.y * kScaleY + 12.0) +
               "\" font-family=\"sans-serif\" font-size=\"34\" fill=\"#707070\" "
               "text-anchor=\"middle\">" +
               c + "</text>\n";
    }

    const std::size_t segments = path.points.size() - 1;
    for (std::size_t i = 0; i < segments; ++i) {
        const double t = segments > 1 ? static_cast<double>(i) / static_cast<double>(segments - 1) : 0.0;
        const Point a = path.points[i];
        const Point b = path.points[i + 1];
        out += "<line class=\"seg\" x1=\"" + fmt(a.x * kScaleX) + "\" y1=\"" + fmt(a.y * kScaleY) +
               "\" x2=\"" + fmt(b.x * kScaleX) + "\" y2=\"" + fmt(b.y * kScaleY) + "\" stroke=\"" +
               segment_color(t) + "\" stroke-width=\"5\" stroke-linecap=\"round\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace swipegan
