#include "swipegan/corpus.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "swipegan/error.hpp"

namespace swipegan {

namespace {

constexpr double kCoordMin = -0.25;
constexpr double kCoordMax = 1.25;

std::string fmt_coord(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", x);
    return buf;
}

void check_path(const Path& p, std::size_t line) {
    if (p.word.empty()) throw ParseError(line, "path has an empty word");
    if (p.points.size() < 2) throw ParseError(line, "path has fewer than 2 points");
    for (const Point& pt : p.points) {
        if (!std::isfinite(pt.x) || !std::isfinite(pt.y))
            throw ParseError(line, "non-finite coordinate");
        if (pt.x < kCoordMin || pt.x > kCoordMax || pt.y < kCoordMin || pt.y > kCoordMax)
            throw ParseError(line, "coordinate outside [-0.25, 1.25]");
    }
}

}  // namespace

void corpus_write(const Corpus& corpus, std::ostream& out) {
    out << "{\"layout\": \"" << corpus.metadata.layout << "\", \"seed\": " << corpus.metadata.seed
        << ", \"generator\": \"" << corpus.metadata.generator << "\"";
    if (!corpus.metadata.style_json.empty()) out << ", \"style\": " << corpus.metadata.style_json;
    out << "}\n";
    std::size_t line = 2;
    for (const Path& p : corpus.paths) {
        check_path(p, line++);
        out << "{\"word\": \"" << p.word << "\", \"source\": \"" << source_tag(p.source)
            << "\", \"points\": [";
        for (std::size_t i = 0; i < p.points.size(); ++i) {
            if (i) out << ",";
            out << "[" << fmt_coord(p.points[i].x) << "," << fmt_coord(p.points[i].y) << "]";
        }
        out << "]}\n";
    }
}

void corpus_write_file(const Corpus& corpus, const std::string& file) {
    std::ostringstream ss;
    corpus_write(corpus, ss);
    atomic_write_file(file, ss.str());
}

Corpus corpus_read(std::istream& in) {
    Corpus corpus;
    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line)) throw ParseError(1, "missing metadata line");
    ++lineno;
    try {
        auto j = nlohmann::json::parse(line);
        if (!j.is_object()) throw ParseError(lineno, "metadata is not an object");
        corpus.metadata.layout = j.value("layout", std::string("qwerty"));
        corpus.metadata.seed = j.value("seed", std::uint64_t{0});
        corpus.metadata.generator = j.value("generator", std::string());
        if (j.contains("style")) corpus.metadata.style_json = j["style"].dump();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(lineno, std::string("bad metadata: ") + e.what());
    }

    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(lineno, std::string("bad record: ") + e.what());
        }
        if (!j.contains("word")) throw ParseError(lineno, "record missing \"word\"");
        if (!j.contains("source")) throw ParseError(lineno, "record missing \"source\"");
        if (!j.contains("points")) throw ParseError(lineno, "record missing \"points\"");
        Path p;
        try {
            p.word = j["word"].get<std::string>();
            p.source = source_from_tag(j["source"].get<std::string>());
            for (const auto& pt : j["points"]) {
                if (!pt.is_array() || pt.size() != 2)
                    throw ParseError(lineno, "point is not an [x, y] pair");
                p.points.push_back({pt[0].get<double>(), pt[1].get<double>()});
            }
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(lineno, std::string("bad record: ") + e.what());
        }
        check_path(p, lineno);
        corpus.paths.push_back(std::move(p));
    }
    return corpus;
}

Corpus corpus_read_file(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw InvalidArgumentError("cannot open corpus file \"" + file + "\"");
    return corpus_read(in);
}

void atomic_write_file(const std::string& file, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(file);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write \"" + tmp.string() + "\"");
        out << contents;
        if (!out) throw Error("short write to \"" + tmp.string() + "\"");
    }
    fs::rename(tmp, target);
}

}  // namespace swipegan
