#pragma once

#include <map>
#include <string>
#include <vector>

#include "swipegan/geometry.hpp"

namespace swipegan {

struct KeyBox {
    Point center;
    double width = 0.0;
    double height = 0.0;
};

// Normalized key geometry on the unit square. Immutable after construction;
// safe for concurrent reads.
class KeyboardLayout {
public:
    KeyboardLayout(std::string alphabet, std::map<char, KeyBox> keys);

    const std::string& alphabet() const { return alphabet_; }
    bool contains(char c) const { return keys_.count(c) != 0; }

    const KeyBox& key(char c) const;
    Point key_center(char c) const { return key(c).center; }

    // Identifier recorded in corpus metadata.
    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    std::string to_json() const;
    static KeyboardLayout from_json(const std::string& text);

private:
    std::string alphabet_;
    std::map<char, KeyBox> keys_;
    std::string name_ = "custom";
};

// Canonical three-row qwerty layout: key width 0.1, row heights 1/3,
// row x-offsets 0 / 0.05 / 0.15, row center ordinates 1/6, 1/2, 5/6.
KeyboardLayout reference_qwerty();

// One via point per letter after collapsing consecutive duplicates.
std::vector<Point> word_to_via_points(const KeyboardLayout& layout, const std::string& word);

// Letters of `word` with consecutive duplicates collapsed.
std::string collapse_duplicates(const std::string& word);

}  // namespace swipegan
