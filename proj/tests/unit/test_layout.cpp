#include "doctest.h"
#include "swipegan/error.hpp"
#include "swipegan/layout.hpp"
#include "swipegan/rng.hpp"

using namespace swipegan;

TEST_CASE("reference qwerty key centers") {
    const KeyboardLayout layout = reference_qwerty();
    CHECK(layout.key_center('q').x == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(layout.key_center('q').y == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(layout.key_center('a').x == doctest::Approx(0.10).epsilon(1e-12));
    CHECK(layout.key_center('a').y == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(layout.key_center('m').x == doctest::Approx(0.80).epsilon(1e-12));
    CHECK(layout.key_center('m').y == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
    CHECK(layout.key_center('p').x == doctest::Approx(0.95).epsilon(1e-12));
    CHECK(layout.key_center('p').y == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("every alphabet character has a key inside the unit square") {
    const KeyboardLayout layout = reference_qwerty();
    CHECK(layout.alphabet().size() == 26);
    for (char c : layout.alphabet()) {
        const KeyBox& k = layout.key(c);
        CHECK(k.center.x > 0.0);
        CHECK(k.center.x < 1.0);
        CHECK(k.center.y > 0.0);
        CHECK(k.center.y < 1.0);
        CHECK(k.width > 0.0);
        CHECK(k.height > 0.0);
    }
}

TEST_CASE("unknown character is rejected") {
    const KeyboardLayout layout = reference_qwerty();
    CHECK_THROWS_AS(layout.key_center('!'), UnknownCharacterError);
}

TEST_CASE("word_to_via_points basics") {
    const KeyboardLayout layout = reference_qwerty();
    const auto go = word_to_via_points(layout, "go");
    REQUIRE(go.size() == 2);
    CHECK(go[0] == layout.key_center('g'));
    CHECK(go[1] == layout.key_center('o'));

    const auto hello = word_to_via_points(layout, "hello");
    REQUIRE(hello.size() == 4);
    CHECK(hello[0] == layout.key_center('h'));
    CHECK(hello[1] == layout.key_center('e'));
    CHECK(hello[2] == layout.key_center('l'));
    CHECK(hello[3] == layout.key_center('o'));

    const auto a = word_to_via_points(layout, "a");
    REQUIRE(a.size() == 1);
    CHECK(a[0] == layout.key_center('a'));
}

TEST_CASE("word_to_via_points rejects bad words") {
    const KeyboardLayout layout = reference_qwerty();
    CHECK_THROWS_AS(word_to_via_points(layout, ""), InvalidWordError);
    CHECK_THROWS_AS(word_to_via_points(layout, "ab!"), InvalidWordError);
}

TEST_CASE("via count accounts exactly for collapsed duplicate pairs") {
    const KeyboardLayout layout = reference_qwerty();
    Rng rng(101);
    const std::string& alphabet = layout.alphabet();
    for (int trial = 0; trial < 200; ++trial) {
        std::string word;
        const std::size_t len = 1 + rng.index(8);
        for (std::size_t i = 0; i < len; ++i) {
            // Bias toward repeats so the collapse rule is exercised.
            if (!word.empty() && rng.uniform() < 0.3)
                word += word.back();
            else
                word += alphabet[rng.index(alphabet.size())];
        }
        std::size_t dup_pairs = 0;
        for (std::size_t i = 1; i < word.size(); ++i)
            if (word[i] == word[i - 1]) ++dup_pairs;
        const auto via = word_to_via_points(layout, word);
        CHECK(via.size() == word.size() - dup_pairs);

        // Reversal reverses the via sequence.
        const auto rev = word_to_via_points(layout, std::string(word.rbegin(), word.rend()));
        REQUIRE(rev.size() == via.size());
        for (std::size_t i = 0; i < via.size(); ++i) CHECK(via[i] == rev[via.size() - 1 - i]);

        // Every via point is exactly some key center.
        for (const Point& p : via) {
            bool is_center = false;
            for (char c : alphabet)
                if (p == layout.key_center(c)) is_center = true;
            CHECK(is_center);
        }
    }
}

TEST_CASE("layout JSON round-trips bit-exactly") {
    const KeyboardLayout layout = reference_qwerty();
    const std::string text = layout.to_json();
    const KeyboardLayout back = KeyboardLayout::from_json(text);
    CHECK(back.to_json() == text);
    for (char c : layout.alphabet()) {
        CHECK(back.key_center(c).x == layout.key_center(c).x);
        CHECK(back.key_center(c).y == layout.key_center(c).y);
        CHECK(back.key(c).width == layout.key(c).width);
        CHECK(back.key(c).height == layout.key(c).height);
    }
}

TEST_CASE("layout invariants are enforced") {
    std::map<char, KeyBox> keys;
    keys['a'] = {{0.5, 0.5}, 0.1, 0.1};
    keys['b'] = {{0.5, 0.5}, 0.1, 0.1};  // duplicate center
    CHECK_THROWS_AS(KeyboardLayout("ab", keys), InvalidArgumentError);

    keys['b'] = {{1.5, 0.5}, 0.1, 0.1};  // outside the unit square
    CHECK_THROWS_AS(KeyboardLayout("ab", keys), InvalidArgumentError);

    keys.erase('b');
    CHECK_THROWS_AS(KeyboardLayout("ab", keys), InvalidArgumentError);  // missing key
}
