#include "swipegan/layout.hpp"

#include <cstdio>

#include "json.hpp"
#include "swipegan/error.hpp"

namespace swipegan {

KeyboardLayout::KeyboardLayout(std::string alphabet, std::map<char, KeyBox> keys)
    : alphabet_(std::move(alphabet)), keys_(std::move(keys)) {
    if (alphabet_.empty()) throw InvalidArgumentError("layout: empty alphabet");
    for (char c : alphabet_) {
        auto it = keys_.find(c);
        if (it == keys_.end())
            throw InvalidArgumentError(std::string("layout: alphabet character '") + c +
                                       "' has no key");
        const KeyBox& k = it->second;
        if (!(k.center.x > 0.0 && k.center.x < 1.0 && k.center.y > 0.0 && k.center.y < 1.0))
            throw InvalidArgumentError(std::string("layout: key center for '") + c +
                                       "' outside the unit square");
        if (!(k.width > 0.0 && k.width <= 1.0 && k.height > 0.0 && k.height <= 1.0))
            throw InvalidArgumentError(std::string("layout: key extent for '") + c +
                                       "' outside (0, 1]");
    }
    if (keys_.size() != alphabet_.size())
        throw InvalidArgumentError("layout: keys not covered by the alphabet");
    for (auto a = keys_.begin(); a != keys_.end(); ++a) {
        auto b = a;
        for (++b; b != keys_.end(); ++b) {
            if (a->second.center == b->second.center)
                throw InvalidArgumentError(std::string("layout: keys '") + a->first + "' and '" +
                                           b->first + "' share a center");
        }
    }
}

const KeyBox& KeyboardLayout::key(char c) const {
    auto it = keys_.find(c);
    if (it == keys_.end()) throw UnknownCharacterError(c);
    return it->second;
}

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

}  // namespace

std::string KeyboardLayout::to_json() const {
    // Hand-rolled so the reference layout round-trips bit-exactly and writing
    // twice yields identical bytes.
    std::string out = "{\"alphabet\": \"" + alphabet_ + "\", \"keys\": {";
    bool first = true;
    for (char c : alphabet_) {
        const KeyBox& k = keys_.at(c);
        if (!first) out += ", ";
        first = false;
        out += std::string("\"") + c + "\": {\"cx\":" + fmt(k.center.x) +
               ",\"cy\":" + fmt(k.center.y) + ",\"w\":" + fmt(k.width) +
               ",\"h\":" + fmt(k.height) + "}";
    }
    out += "}}";
    return out;
}

KeyboardLayout KeyboardLayout::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(1, std::string("layout: ") + e.what());
    }
    if (!j.contains("alphabet") || !j.contains("keys"))
        throw ParseError(1, "layout: missing \"alphabet\" or \"keys\"");
    std::string alphabet = j["alphabet"].get<std::string>();
    std::map<char, KeyBox> keys;
    for (auto& [name, kj] : j["keys"].items()) {
        if (name.size() != 1) throw ParseError(1, "layout: key name must be one character");
        KeyBox k;
        k.center = {kj.at("cx").get<double>(), kj.at("cy").get<double>()};
        k.width = kj.at("w").get<double>();
        k.height = kj.at("h").get<double>();
        keys[name[0]] = k;
    }
    return KeyboardLayout(std::move(alphabet), std::move(keys));
}

KeyboardLayout reference_qwerty() {
    static const char* rows[3] = {"qwertyuiop", "asdfghjkl", "zxcvbnm"};
    static const double offsets[3] = {0.0, 0.05, 0.15};
    const double key_w = 0.1;
    const double row_h = 1.0 / 3.0;
    std::map<char, KeyBox> keys;
    std::string alphabet = "abcdefghijklmnopqrstuvwxyz";
    for (int r = 0; r < 3; ++r) {
        const double cy = row_h * (static_cast<double>(r) + 0.5);
        const char* row = rows[r];
        for (int i = 0; row[i]; ++i) {
            KeyBox k;
            k.center = {offsets[r] + key_w * (static_cast<double>(i) + 0.5), cy};
            k.width = key_w;
            k.height = row_h;
            keys[row[i]] = k;
        }
    }
    KeyboardLayout layout(std::move(alphabet), std::move(keys));
    layout.set_name("qwerty");
    return layout;
}

std::string collapse_duplicates(const std::string& word) {
    std::string out;
    for (char c : word) {
        if (out.empty() || out.back() != c) out += c;
    }
    return out;
}

std::vector<Point> word_to_via_points(const KeyboardLayout& layout, const std::string& word) {
    if (word.empty()) throw InvalidWordError("empty word");
    for (char c : word) {
        if (!layout.contains(c))
            throw InvalidWordError(std::string("word '") + word + "' contains unknown character '" +
                                   c + "'");
    }
    std::vector<Point> via;
    const std::string collapsed = collapse_duplicates(word);
    via.reserve(collapsed.size());
    for (char c : collapsed) via.push_back(layout.key_center(c));
    return via;
}

}  // namespace swipegan
