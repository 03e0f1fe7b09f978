#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "swipegan/path.hpp"

namespace swipegan {

struct CorpusMetadata {
    std::string layout = "qwerty";
    std::uint64_t seed = 0;
    std::string generator;       // e.g. "spline", "user-style", "gan"
    std::string style_json;      // optional serialized StyleParams object
};

struct Corpus {
    CorpusMetadata metadata;
    std::vector<Path> paths;

    std::size_t size() const { return paths.size(); }
};

// JSONL: one metadata object line, then one object per path. Coordinates are
// written with 17 significant digits so round-trips are exact and files are
// byte-stable.
void corpus_write(const Corpus& corpus, std::ostream& out);
void corpus_write_file(const Corpus& corpus, const std::string& file);

Corpus corpus_read(std::istream& in);
Corpus corpus_read_file(const std::string& file);

// Writes via a temp file in the same directory, then renames.
void atomic_write_file(const std::string& file, const std::string& contents);

}  // namespace swipegan
