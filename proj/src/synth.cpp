#include "swipegan/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "swipegan/error.hpp"
#include "swipegan/rng.hpp"

namespace swipegan {

namespace {

constexpr double kNominalKeyWidth = 0.1;
constexpr double kCoordMin = -0.25;
constexpr double kCoordMax = 1.25;
constexpr double kPi = 3.141592653589793;

void clamp_to_margin(std::vector<Point>& pts) {
    for (Point& p : pts) {
        p.x = std::clamp(p.x, kCoordMin, kCoordMax);
        p.y = std::clamp(p.y, kCoordMin, kCoordMax);
    }
}

// Interior indices where the polyline turns sharply (local maxima of the
// turning angle above threshold); used as stand-ins for via points.
std::vector<std::size_t> turn_indices(const std::vector<Point>& pts, double threshold) {
    const std::size_t n = pts.size();
    std::vector<double> turn(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const Point a = pts[i] - pts[i - 1];
        const Point b = pts[i + 1] - pts[i];
        if (norm(a) < 1e-15 || norm(b) < 1e-15) continue;
        turn[i] = std::fabs(std::atan2(cross(a, b), dot(a, b)));
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (turn[i] < threshold) continue;
        bool is_max = true;
        for (std::size_t j = (i >= 2 ? i - 2 : 0); j <= std::min(i + 2, n - 1); ++j)
            if (turn[j] > turn[i]) is_max = false;
        if (is_max && (out.empty() || i - out.back() > 2)) out.push_back(i);
    }
    return out;
}

std::vector<Point> apply_corner_cut(const std::vector<Point>& pts, double strength) {
    const std::size_t n = pts.size();
    const std::size_t k = std::max<std::size_t>(1, n / 16);
    std::vector<Point> out = pts;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const std::size_t lo = i >= k ? i - k : 0;
        const std::size_t hi = std::min(i + k, n - 1);
        Point avg{0.0, 0.0};
        for (std::size_t j = lo; j <= hi; ++j) avg = avg + pts[j];
        avg = avg * (1.0 / static_cast<double>(hi - lo + 1));
        out[i] = lerp(pts[i], avg, strength);
    }
    return out;
}

std::vector<Point> apply_overshoot(const std::vector<Point>& pts, double scale, Rng& rng) {
    const std::size_t n = pts.size();
    const std::vector<std::size_t> turns = turn_indices(pts, 0.3);
    std::vector<Point> spliced;
    spliced.reserve(n + turns.size() + 1);
    std::size_t next_turn = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        spliced.push_back(pts[i]);
        if (next_turn < turns.size() && turns[next_turn] == i) {
            ++next_turn;
            const Point dir = normalized(pts[i] - pts[i - 1]);
            const double d = kNominalKeyWidth * scale * rng.uniform(0.6, 1.0);
            spliced.push_back(pts[i] + dir * d);
        }
    }
    // Overshoot the final key, then settle back onto it.
    const Point dir = normalized(pts[n - 1] - pts[n - 2]);
    const double d = kNominalKeyWidth * scale * rng.uniform(0.6, 1.0);
    spliced.push_back(pts[n - 1] + dir * d);
    spliced.push_back(pts[n - 1]);
    return resample_points(spliced, static_cast<int>(n));
}

std::vector<Point> apply_excursion(const std::vector<Point>& pts, double amplitude,
                                   double wavelength, Rng& rng) {
    const std::size_t n = pts.size();
    const double total = arc_length(pts);
    if (total <= 0.0) return pts;
    const double phase1 = rng.uniform(0.0, 2.0 * kPi);
    const double phase2 = rng.uniform(0.0, 2.0 * kPi);

    std::vector<double> s(n, 0.0);
    for (std::size_t i = 1; i < n; ++i)
        s[i] = s[i - 1] + distance(pts[i - 1], pts[i]) / total;

    std::vector<Point> out = pts;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const Point tangent = normalized(pts[i + 1] - pts[i - 1]);
        if (tangent == Point{0.0, 0.0}) continue;
        const double cycles = total / wavelength;
        // Endpoint window keeps first/last points anchored to their keys.
        const double window = std::sin(kPi * s[i]);
        const double off = amplitude * window *
                           (0.7 * std::sin(2.0 * kPi * cycles * s[i] + phase1) +
                            0.3 * std::sin(4.0 * kPi * cycles * s[i] + phase2));
        out[i] = pts[i] + perpendicular(tangent) * off;
    }
    return out;
}

std::vector<Point> apply_speed_warp(const std::vector<Point>& pts, double strength, Rng& rng) {
    const std::size_t n = pts.size();
    const double total = arc_length(pts);
    if (total <= 0.0) return pts;
    const double beta = std::min(strength, 0.9);
    const double a1 = rng.uniform(-1.0, 1.0);
    const double a2 = rng.uniform(-1.0, 1.0);
    // u' = u + sum_k c_k sin(pi k u) with sum |c_k| pi k <= beta < 1, so the
    // reparameterization stays strictly monotone and fixes both endpoints.
    const double c1 = beta * a1 / (2.0 * kPi);
    const double c2 = beta * a2 / (4.0 * kPi);

    std::vector<double> cum(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) cum[i] = cum[i - 1] + distance(pts[i - 1], pts[i]);

    std::vector<Point> out(n);
    out.front() = pts.front();
    out.back() = pts.back();
    std::size_t seg = 0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(n - 1);
        const double w = u + c1 * std::sin(kPi * u) + c2 * std::sin(2.0 * kPi * u);
        const double target = std::clamp(w, 0.0, 1.0) * total;
        while (seg + 2 < n && cum[seg + 1] < target) ++seg;
        const double seg_len = cum[seg + 1] - cum[seg];
        const double t = seg_len > 0.0 ? (target - cum[seg]) / seg_len : 0.0;
        out[i] = lerp(pts[seg], pts[seg + 1], t);
    }
    return out;
}

std::string fmt_short(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

}  // namespace

void StyleParams::validate() const {
    if (overshoot_scale < 0.0) throw InvalidArgumentError("style: overshoot_scale < 0");
    if (excursion_amplitude < 0.0) throw InvalidArgumentError("style: excursion_amplitude < 0");
    if (excursion_wavelength <= 0.0) throw InvalidArgumentError("style: excursion_wavelength <= 0");
    if (corner_cut < 0.0 || corner_cut >= 1.0) throw InvalidArgumentError("style: corner_cut outside [0, 1)");
    if (speed_warp < 0.0) throw InvalidArgumentError("style: speed_warp < 0");
}

std::string StyleParams::to_json() const {
    return std::string("{\"overshoot_scale\":") + fmt_short(overshoot_scale) +
           ",\"excursion_amplitude\":" + fmt_short(excursion_amplitude) +
           ",\"excursion_wavelength\":" + fmt_short(excursion_wavelength) +
           ",\"corner_cut\":" + fmt_short(corner_cut) + ",\"speed_warp\":" + fmt_short(speed_warp) +
           ",\"rng_seed\":" + std::to_string(rng_seed) + "}";
}

StyleParams StyleParams::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgumentError(std::string("style: ") + e.what());
    }
    StyleParams s;
    s.overshoot_scale = j.value("overshoot_scale", s.overshoot_scale);
    s.excursion_amplitude = j.value("excursion_amplitude", s.excursion_amplitude);
    s.excursion_wavelength = j.value("excursion_wavelength", s.excursion_wavelength);
    s.corner_cut = j.value("corner_cut", s.corner_cut);
    s.speed_warp = j.value("speed_warp", s.speed_warp);
    s.rng_seed = j.value("rng_seed", s.rng_seed);
    s.validate();
    return s;
}

StyleParams default_user_style(std::uint64_t seed) {
    StyleParams s;
    s.overshoot_scale = 0.7;
    s.excursion_amplitude = 0.045;
    s.excursion_wavelength = 0.35;
    s.corner_cut = 0.25;
    s.speed_warp = 0.5;
    s.rng_seed = seed;
    return s;
}

CubicSpline2D word_spline(const KeyboardLayout& layout, const std::string& word) {
    return CubicSpline2D(word_to_via_points(layout, word));
}

Path synthesize_spline(const KeyboardLayout& layout, const std::string& word, int n) {
    const std::vector<Point> via = word_to_via_points(layout, word);
    if (n < 2 || n < static_cast<int>(via.size()))
        throw InvalidArgumentError("synthesize_spline: n must be >= max(2, via points)");

    Path path;
    path.word = word;
    path.source = Source::SYNTHETIC;
    if (via.size() == 1) {
        path.points.assign(static_cast<std::size_t>(n), via[0]);
        return path;
    }

    const CubicSpline2D spline(via);
    std::vector<Point> sampled(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double t = spline.total() * static_cast<double>(i) / static_cast<double>(n - 1);
        sampled[static_cast<std::size_t>(i)] = spline.evaluate(t);
    }
    path.points = resample_points(sampled, n);
    return path;
}

Path apply_user_style(const Path& path, const StyleParams& style) {
    style.validate();
    if (path.points.size() < 2)
        throw InvalidArgumentError("apply_user_style: need at least 2 points");

    Path out;
    out.word = path.word;
    out.source = Source::USER_STYLE;

    Rng rng(style.rng_seed);
    std::vector<Point> pts = path.points;
    if (style.corner_cut > 0.0) pts = apply_corner_cut(pts, style.corner_cut);
    if (style.overshoot_scale > 0.0) pts = apply_overshoot(pts, style.overshoot_scale, rng);
    if (style.excursion_amplitude > 0.0)
        pts = apply_excursion(pts, style.excursion_amplitude, style.excursion_wavelength, rng);
    if (style.speed_warp > 0.0) pts = apply_speed_warp(pts, style.speed_warp, rng);
    if (style.corner_cut > 0.0 || style.overshoot_scale > 0.0 ||
        style.excursion_amplitude > 0.0 || style.speed_warp > 0.0)
        clamp_to_margin(pts);
    out.points = std::move(pts);
    return out;
}

Corpus generate_corpus(const KeyboardLayout& layout, const std::vector<std::string>& lexicon,
                       int per_word, CorpusMode mode, const StyleParams& style,
                       std::uint64_t base_seed, int points_per_path) {
    if (lexicon.empty()) throw InvalidArgumentError("generate_corpus: empty lexicon");
    if (per_word < 1) throw InvalidArgumentError("generate_corpus: per_word must be >= 1");
    style.validate();
    for (const std::string& w : lexicon) word_to_via_points(layout, w);  // validates words

    Corpus corpus;
    corpus.metadata.layout = layout.name();
    corpus.metadata.seed = base_seed;
    corpus.metadata.generator = mode == CorpusMode::SYNTHETIC ? "spline" : "user-style";
    if (mode == CorpusMode::USER_STYLE) corpus.metadata.style_json = style.to_json();

    corpus.paths.reserve(lexicon.size() * static_cast<std::size_t>(per_word));
    for (const std::string& word : lexicon) {
        for (int i = 0; i < per_word; ++i) {
            Path base = synthesize_spline(layout, word, points_per_path);
            if (mode == CorpusMode::SYNTHETIC) {
                corpus.paths.push_back(std::move(base));
                continue;
            }
            const std::uint64_t path_seed = derive_seed(base_seed, word, static_cast<std::uint64_t>(i));
            Rng jitter(derive_seed(path_seed, "style-jitter"));
            StyleParams s = style;
            s.overshoot_scale *= 1.0 + 0.3 * jitter.uniform(-1.0, 1.0);
            s.excursion_amplitude *= 1.0 + 0.3 * jitter.uniform(-1.0, 1.0);
            s.corner_cut = std::min(0.999, s.corner_cut * (1.0 + 0.3 * jitter.uniform(-1.0, 1.0)));
            s.speed_warp *= 1.0 + 0.3 * jitter.uniform(-1.0, 1.0);
            s.rng_seed = path_seed;
            corpus.paths.push_back(apply_user_style(base, s));
        }
    }
    return corpus;
}

std::vector<std::string> read_lexicon(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw InvalidArgumentError("cannot open lexicon file \"" + file + "\"");
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) words.push_back(line);
    }
    if (words.empty()) throw InvalidArgumentError("lexicon file \"" + file + "\" is empty");
    return words;
}

}  // namespace swipegan
