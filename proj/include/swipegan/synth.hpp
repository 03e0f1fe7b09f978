#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swipegan/corpus.hpp"
#include "swipegan/layout.hpp"
#include "swipegan/path.hpp"
#include "swipegan/spline.hpp"

namespace swipegan {

// Parametric user idiosyncrasies; stands in for an empirical user population.
struct StyleParams {
    double overshoot_scale = 0.0;       // >= 0, fraction of nominal key width
    double excursion_amplitude = 0.0;   // >= 0, normalized units
    double excursion_wavelength = 0.5;  // > 0, normalized arc-length units per cycle
    double corner_cut = 0.0;            // [0, 1), pull toward the local chord
    double speed_warp = 0.0;            // >= 0, monotone time reparameterization
    std::uint64_t rng_seed = 0;

    void validate() const;
    std::string to_json() const;
    static StyleParams from_json(const std::string& text);
};

// Magnitudes used as the canonical user-style distribution throughout the
// experiment harness and the CLI defaults.
StyleParams default_user_style(std::uint64_t seed = 0);

// Natural cubic spline through the word's via points, sampled at n uniform
// parameter values then resampled to n points uniform in arc length.
Path synthesize_spline(const KeyboardLayout& layout, const std::string& word, int n);

// The spline curve itself, for fidelity diagnostics.
CubicSpline2D word_spline(const KeyboardLayout& layout, const std::string& word);

// Deterministic style injection: corner cutting, lateral excursions, key
// overshoots, and a monotone speed warp. Zero magnitudes leave the points
// bit-identical; the output always has the input's length.
Path apply_user_style(const Path& path, const StyleParams& style);

enum class CorpusMode { SYNTHETIC, USER_STYLE };

// |lexicon| * per_word paths; each path's RNG stream is derived from
// (base_seed, word, index) so results do not depend on generation order.
// USER_STYLE mode perturbs style magnitudes per path by +/-30%.
Corpus generate_corpus(const KeyboardLayout& layout, const std::vector<std::string>& lexicon,
                       int per_word, CorpusMode mode, const StyleParams& style,
                       std::uint64_t base_seed, int points_per_path = 64);

std::vector<std::string> read_lexicon(const std::string& file);

}  // namespace swipegan
