#include <cmath>
#include <sstream>

#include "doctest.h"
#include "swipegan/error.hpp"
#include "swipegan/synth.hpp"

using namespace swipegan;

namespace {

// Independent fidelity oracle: distance from each via point to the densely
// evaluated spline (each knot span sampled endpoint-inclusive).
double max_via_residual(const KeyboardLayout& layout, const std::string& word) {
    const CubicSpline2D spline = word_spline(layout, word);
    const auto& via = spline.via_points();
    const auto& knots = spline.knots();
    double worst = 0.0;
    for (const Point& v : via) {
        double best = 1e9;
        for (std::size_t seg = 0; seg + 1 < knots.size(); ++seg) {
            for (int k = 0; k <= 32; ++k) {
                const double t = knots[seg] + (knots[seg + 1] - knots[seg]) * k / 32.0;
                best = std::min(best, distance(v, spline.evaluate(t)));
            }
        }
        if (via.size() == 1) best = distance(v, spline.evaluate(0.0));
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

TEST_CASE("spline path endpoints hit the first and last key centers") {
    const KeyboardLayout layout = reference_qwerty();
    const Path p = synthesize_spline(layout, "go", 64);
    REQUIRE(p.points.size() == 64);
    CHECK(distance(p.points.front(), layout.key_center('g')) < 1e-9);
    CHECK(distance(p.points.back(), layout.key_center('o')) < 1e-9);
    CHECK(p.source == Source::SYNTHETIC);
    CHECK(p.word == "go");
}

TEST_CASE("two-letter words give straight lines") {
    const KeyboardLayout layout = reference_qwerty();
    const Path p = synthesize_spline(layout, "am", 64);
    const Point a = layout.key_center('a');
    const Point m = layout.key_center('m');
    const Point dir = m - a;
    for (const Point& q : p.points) CHECK(std::fabs(cross(dir, q - a)) < 1e-9);
}

TEST_CASE("spline interpolates every via point of a long word") {
    const KeyboardLayout layout = reference_qwerty();
    CHECK(max_via_residual(layout, "anybody") < 1e-9);

    // The 64-point output visits the via points in order.
    const Path p = synthesize_spline(layout, "anybody", 64);
    const auto via = word_to_via_points(layout, "anybody");
    std::size_t cursor = 0;
    for (const Point& v : via) {
        std::size_t best_idx = cursor;
        double best = 1e9;
        for (std::size_t i = cursor; i < p.points.size(); ++i) {
            const double d = distance(v, p.points[i]);
            if (d < best) {
                best = d;
                best_idx = i;
            }
        }
        CHECK(best < 0.05);  // nearest output sample is close; exactness is the spline's job
        cursor = best_idx;
    }
}

TEST_CASE("single-letter words become constant paths") {
    const KeyboardLayout layout = reference_qwerty();
    const Path p = synthesize_spline(layout, "a", 64);
    REQUIRE(p.points.size() == 64);
    for (const Point& q : p.points) CHECK(q == layout.key_center('a'));
}

TEST_CASE("synthesize_spline validates arguments") {
    const KeyboardLayout layout = reference_qwerty();
    CHECK_THROWS_AS(synthesize_spline(layout, "word", 3), InvalidArgumentError);
    CHECK_THROWS_AS(synthesize_spline(layout, "w!", 64), InvalidWordError);
}

TEST_CASE("zero-magnitude style is the identity") {
    const KeyboardLayout layout = reference_qwerty();
    const Path p = synthesize_spline(layout, "that", 64);
    StyleParams style;  // all magnitudes zero
    style.rng_seed = 99;
    const Path styled = apply_user_style(p, style);
    CHECK(styled.source == Source::USER_STYLE);
    REQUIRE(styled.points.size() == p.points.size());
    for (std::size_t i = 0; i < p.points.size(); ++i) CHECK(styled.points[i] == p.points[i]);
}

TEST_CASE("overshoot adds a reversal and lengthens straight paths") {
    const KeyboardLayout layout = reference_qwerty();
    const Path p = synthesize_spline(layout, "am", 64);
    StyleParams style;
    style.overshoot_scale = 0.5;
    style.rng_seed = 3;
    const Path styled = apply_user_style(p, style);
    CHECK(styled.points.size() == p.points.size());
    CHECK(arc_length(styled.points) > arc_length(p.points));
}

TEST_CASE("style application is deterministic") {
    const KeyboardLayout layout = reference_qwerty();
    const Path p = synthesize_spline(layout, "word", 64);
    const StyleParams style = default_user_style(1234);
    const Path a = apply_user_style(p, style);
    const Path b = apply_user_style(p, style);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i] == b.points[i]);
}

TEST_CASE("style output length always matches the input length") {
    const KeyboardLayout layout = reference_qwerty();
    const StyleParams style = default_user_style(5);
    for (const char* word : {"a", "go", "that", "anybody"}) {
        for (int n : {16, 64, 100}) {
            const Path p = synthesize_spline(layout, word, n);
            CHECK(apply_user_style(p, style).points.size() == static_cast<std::size_t>(n));
        }
    }
}

TEST_CASE("more excursion means more turning") {
    const KeyboardLayout layout = reference_qwerty();
    double prev_mean = -1.0;
    for (double amplitude : {0.01, 0.03, 0.06}) {
        double turn_sum = 0.0;
        int count = 0;
        for (int i = 0; i < 100; ++i) {
            StyleParams style;
            style.excursion_amplitude = amplitude;
            style.excursion_wavelength = 0.4;
            style.rng_seed = derive_seed(2024, "excursion", static_cast<std::uint64_t>(i));
            const Path p = synthesize_spline(layout, i % 2 ? "that" : "word", 64);
            turn_sum += path_stats(apply_user_style(p, style)).mean_abs_turn;
            ++count;
        }
        const double mean = turn_sum / count;
        CHECK(mean > prev_mean);
        prev_mean = mean;
    }
}

TEST_CASE("style parameter bounds are enforced") {
    StyleParams s;
    s.corner_cut = 1.0;
    CHECK_THROWS_AS(s.validate(), InvalidArgumentError);
    s = StyleParams{};
    s.excursion_wavelength = 0.0;
    CHECK_THROWS_AS(s.validate(), InvalidArgumentError);
    s = StyleParams{};
    s.overshoot_scale = -0.1;
    CHECK_THROWS_AS(s.validate(), InvalidArgumentError);
}

TEST_CASE("style params survive a JSON round trip") {
    const StyleParams s = default_user_style(77);
    const StyleParams back = StyleParams::from_json(s.to_json());
    CHECK(back.overshoot_scale == s.overshoot_scale);
    CHECK(back.excursion_amplitude == s.excursion_amplitude);
    CHECK(back.excursion_wavelength == s.excursion_wavelength);
    CHECK(back.corner_cut == s.corner_cut);
    CHECK(back.speed_warp == s.speed_warp);
    CHECK(back.rng_seed == s.rng_seed);
}

TEST_CASE("generate_corpus counts and determinism") {
    const KeyboardLayout layout = reference_qwerty();
    const std::vector<std::string> lexicon = {"go", "the", "and", "you"};
    const StyleParams style = default_user_style();

    const Corpus synth = generate_corpus(layout, lexicon, 5, CorpusMode::SYNTHETIC, style, 11, 32);
    CHECK(synth.paths.size() == 20);
    for (const Path& p : synth.paths) CHECK(p.source == Source::SYNTHETIC);

    const Corpus u1 = generate_corpus(layout, lexicon, 5, CorpusMode::USER_STYLE, style, 11, 32);
    const Corpus u2 = generate_corpus(layout, lexicon, 5, CorpusMode::USER_STYLE, style, 11, 32);
    std::ostringstream s1, s2;
    corpus_write(u1, s1);
    corpus_write(u2, s2);
    CHECK(s1.str() == s2.str());
    for (const Path& p : u1.paths) CHECK(p.source == Source::USER_STYLE);

    // A different seed changes the user-style corpus.
    const Corpus u3 = generate_corpus(layout, lexicon, 5, CorpusMode::USER_STYLE, style, 12, 32);
    std::ostringstream s3;
    corpus_write(u3, s3);
    CHECK(s1.str() != s3.str());
}

TEST_CASE("generate_corpus validates arguments") {
    const KeyboardLayout layout = reference_qwerty();
    const StyleParams style;
    CHECK_THROWS_AS(generate_corpus(layout, {}, 5, CorpusMode::SYNTHETIC, style, 1),
                    InvalidArgumentError);
    CHECK_THROWS_AS(generate_corpus(layout, {"go"}, 0, CorpusMode::SYNTHETIC, style, 1),
                    InvalidArgumentError);
    CHECK_THROWS_AS(generate_corpus(layout, {"b4d"}, 1, CorpusMode::SYNTHETIC, style, 1),
                    InvalidWordError);
}
