#include <cmath>
#include <sstream>

#include "doctest.h"
#include "swipegan/corpus.hpp"
#include "swipegan/error.hpp"
#include "swipegan/path.hpp"
#include "swipegan/rng.hpp"

using namespace swipegan;

namespace {

Path make_path(std::vector<Point> pts, const std::string& word = "ab",
               Source source = Source::SYNTHETIC) {
    return Path{word, std::move(pts), source};
}

}  // namespace

TEST_CASE("resample splits a segment at its midpoint") {
    const Path p = make_path({{0, 0}, {1, 0}});
    const Path r = resample(p, 3);
    REQUIRE(r.points.size() == 3);
    CHECK(r.points[0] == Point{0, 0});
    CHECK(r.points[1].x == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.points[1].y == 0.0);
    CHECK(r.points[2] == Point{1, 0});
    CHECK(r.word == p.word);
    CHECK(r.source == p.source);
}

TEST_CASE("resample is the identity on an already-uniform polyline") {
    std::vector<Point> pts;
    for (int i = 0; i < 9; ++i) pts.push_back({0.1 * i, 0.2 * i});
    const Path r = resample(make_path(pts), 9);
    for (int i = 0; i < 9; ++i) {
        CHECK(std::fabs(r.points[i].x - pts[i].x) < 1e-12);
        CHECK(std::fabs(r.points[i].y - pts[i].y) < 1e-12);
    }
}

TEST_CASE("arc-length midpoint of an L-shaped polyline is the corner") {
    const Path r = resample(make_path({{0, 0}, {0, 1}, {1, 1}}), 3);
    CHECK(r.points[1].x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.points[1].y == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("resample rejects bad arguments") {
    CHECK_THROWS_AS(resample(make_path({{0, 0}, {1, 0}}), 1), InvalidArgumentError);
    CHECK_THROWS_AS(resample(make_path({{0, 0}}), 4), InvalidArgumentError);
}

TEST_CASE("resample preserves arc length on smooth gentle paths") {
    // Low-curvature sine; chord shortcuts stay inside the 1e-6 budget at n >= 64.
    std::vector<Point> pts;
    const int n_in = 257;
    for (int i = 0; i < n_in; ++i) {
        const double x = static_cast<double>(i) / (n_in - 1);
        pts.push_back({x, 0.01 * std::sin(2.0 * 3.141592653589793 * x)});
    }
    const double in_len = arc_length(pts);
    for (int n : {64, 128, 256}) {
        const auto out = resample_points(pts, n);
        CHECK(std::fabs(arc_length(out) - in_len) / in_len < 1e-6);
    }
}

TEST_CASE("resample arc length converges as n grows on a curvy path") {
    std::vector<Point> pts;
    const int n_in = 1025;
    for (int i = 0; i < n_in; ++i) {
        const double t = 3.141592653589793 * i / (n_in - 1);
        pts.push_back({0.5 + 0.4 * std::cos(t), 0.5 + 0.4 * std::sin(t)});
    }
    const double in_len = arc_length(pts);
    const double err64 = std::fabs(arc_length(resample_points(pts, 64)) - in_len);
    const double err512 = std::fabs(arc_length(resample_points(pts, 512)) - in_len);
    CHECK(err512 < err64);
    CHECK(err512 / in_len < 1e-4);
}

TEST_CASE("path_distance identities") {
    const Path x = make_path({{0.1, 0.2}, {0.3, 0.4}, {0.5, 0.2}});
    CHECK(path_distance(x, x) == 0.0);

    Path shifted = x;
    for (Point& p : shifted.points) p.x += 0.1;
    CHECK(path_distance(x, shifted) == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(path_distance(shifted, x) == doctest::Approx(0.01).epsilon(1e-12));

    const Path y = make_path({{0, 0}, {1, 0}, {2, 0}, {3, 0}});
    CHECK_THROWS_AS(path_distance(x, y), LengthMismatchError);
}

TEST_CASE("path_distance grows with translation magnitude") {
    const Path x = make_path({{0.1, 0.2}, {0.3, 0.4}, {0.5, 0.2}});
    double prev = 0.0;
    for (double s : {0.05, 0.1, 0.2, 0.4}) {
        Path shifted = x;
        for (Point& p : shifted.points) p.x += s;
        const double d = path_distance(x, shifted);
        CHECK(d > prev);
        prev = d;
    }
}

TEST_CASE("sqrt of the distance satisfies the triangle inequality") {
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t len = 2 + rng.index(9);
        auto random_path = [&] {
            std::vector<Point> pts;
            for (std::size_t i = 0; i < len; ++i) pts.push_back({rng.uniform(), rng.uniform()});
            return make_path(std::move(pts));
        };
        const Path a = random_path(), b = random_path(), c = random_path();
        const double ab = std::sqrt(path_distance(a, b));
        const double bc = std::sqrt(path_distance(b, c));
        const double ac = std::sqrt(path_distance(a, c));
        CHECK(ac <= ab + bc + 1e-12);
    }
}

TEST_CASE("path_stats computes arc length and turning angle") {
    CHECK(path_stats(make_path({{0, 0}, {1, 0}})).arc_length == doctest::Approx(1.0));
    CHECK(path_stats(make_path({{0, 0}, {1, 0}, {2, 0}})).mean_abs_turn == doctest::Approx(0.0));
    CHECK(path_stats(make_path({{0, 0}, {1, 0}, {1, 1}})).mean_abs_turn ==
          doctest::Approx(3.141592653589793 / 2.0).epsilon(1e-12));
    CHECK_THROWS_AS(path_stats(make_path({{0, 0}})), InvalidArgumentError);
}

TEST_CASE("path_stats endpoint-to-key distances") {
    const KeyboardLayout layout = reference_qwerty();
    Path p = make_path({layout.key_center('g'), layout.key_center('o')}, "go");
    const PathStats s = path_stats(p, layout);
    CHECK(s.start_key_dist == doctest::Approx(0.0));
    CHECK(s.end_key_dist == doctest::Approx(0.0));

    p.points.back().x += 0.05;
    CHECK(path_stats(p, layout).end_key_dist == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("corpus round-trip is exact and byte-stable") {
    Corpus corpus;
    corpus.metadata.layout = "qwerty";
    corpus.metadata.seed = 42;
    corpus.metadata.generator = "spline";
    corpus.paths.push_back(make_path({{0.123456789012345, 0.2}, {0.3, 1.0 / 3.0}}, "go"));
    corpus.paths.push_back(make_path({{0.0, 0.0}, {1.0, 1.0}, {0.5, 0.25}}, "the",
                                     Source::USER_STYLE));

    std::ostringstream out1, out2;
    corpus_write(corpus, out1);
    corpus_write(corpus, out2);
    CHECK(out1.str() == out2.str());

    std::istringstream in(out1.str());
    const Corpus back = corpus_read(in);
    CHECK(back.metadata.layout == corpus.metadata.layout);
    CHECK(back.metadata.seed == corpus.metadata.seed);
    CHECK(back.metadata.generator == corpus.metadata.generator);
    REQUIRE(back.paths.size() == corpus.paths.size());
    for (std::size_t i = 0; i < corpus.paths.size(); ++i) {
        CHECK(back.paths[i].word == corpus.paths[i].word);
        CHECK(back.paths[i].source == corpus.paths[i].source);
        REQUIRE(back.paths[i].points.size() == corpus.paths[i].points.size());
        for (std::size_t t = 0; t < corpus.paths[i].points.size(); ++t) {
            CHECK(back.paths[i].points[t].x == corpus.paths[i].points[t].x);
            CHECK(back.paths[i].points[t].y == corpus.paths[i].points[t].y);
        }
    }
}

TEST_CASE("empty corpus round-trips through the metadata line alone") {
    Corpus corpus;
    corpus.metadata.generator = "spline";
    std::ostringstream out;
    corpus_write(corpus, out);
    std::istringstream in(out.str());
    const Corpus back = corpus_read(in);
    CHECK(back.paths.empty());
    CHECK(back.metadata.generator == "spline");
}

TEST_CASE("corpus parse errors carry line numbers") {
    const std::string text =
        "{\"layout\": \"qwerty\", \"seed\": 1, \"generator\": \"spline\"}\n"
        "{\"source\": \"synthetic\", \"points\": [[0,0],[1,1]]}\n";
    std::istringstream in(text);
    try {
        corpus_read(in);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("word") != std::string::npos);
    }
}

TEST_CASE("coordinates outside the overshoot margin are rejected") {
    Corpus corpus;
    corpus.paths.push_back(make_path({{0.0, 0.0}, {1.3, 0.0}}, "ab"));
    std::ostringstream out;
    CHECK_THROWS_AS(corpus_write(corpus, out), ParseError);
}
