#include "swipegan/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "swipegan/adam.hpp"
#include "swipegan/error.hpp"

namespace swipegan {

namespace {

void shuffle_indices(std::vector<std::size_t>& idx, Rng& rng) {
    for (std::size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[rng.index(i)]);
}

bool same_path(const Path& a, const Path& b) {
    if (a.word != b.word || a.points.size() != b.points.size()) return false;
    for (std::size_t i = 0; i < a.points.size(); ++i)
        if (!(a.points[i] == b.points[i])) return false;
    return true;
}

}  // namespace

void RecognizerConfig::validate() const {
    if (seq_len < 2) throw InvalidArgumentError("recognizer config: seq_len must be >= 2");
    if (hidden < 1 || depth < 1)
        throw InvalidArgumentError("recognizer config: hidden/depth must be >= 1");
    if (lr < 0.0) throw InvalidArgumentError("recognizer config: negative learning rate");
    if (batch < 1) throw InvalidArgumentError("recognizer config: batch must be >= 1");
    if (epochs < 0) throw InvalidArgumentError("recognizer config: negative epochs");
}

Recognizer Recognizer::init(const RecognizerConfig& config, const std::string& characters) {
    config.validate();
    Recognizer r{config, CtcAlphabet(characters), {}};
    Rng rng(derive_seed(config.seed, "recognizer-init"));
    r.cls = Classifier::init(config.hidden, config.depth, r.alphabet.num_symbols(), rng);
    return r;
}

Matrix Recognizer::step_probs(const Path& path) const {
    if (static_cast<int>(path.points.size()) == config.seq_len)
        return classifier_forward(cls, path.points, nullptr);
    return classifier_forward(cls, resample_points(path.points, config.seq_len), nullptr);
}

std::string Recognizer::to_json() const {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["kind"] = "recognizer";
    j["alphabet"] = alphabet.chars;
    j["seq_len"] = config.seq_len;
    j["hidden"] = config.hidden;
    j["depth"] = config.depth;
    j["lr"] = config.lr;
    j["batch"] = config.batch;
    j["epochs"] = config.epochs;
    j["seed"] = config.seed;
    Recognizer& self = const_cast<Recognizer&>(*this);
    j["network"] = checkpoint_to_json(named_params(self.cls));
    return j.dump();
}

Recognizer Recognizer::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(1, std::string("recognizer checkpoint: ") + e.what());
    }
    RecognizerConfig config;
    config.seq_len = j.value("seq_len", config.seq_len);
    config.hidden = j.value("hidden", config.hidden);
    config.depth = j.value("depth", config.depth);
    config.lr = j.value("lr", config.lr);
    config.batch = j.value("batch", config.batch);
    config.epochs = j.value("epochs", config.epochs);
    config.seed = j.value("seed", config.seed);
    Recognizer r = init(config, j.value("alphabet", std::string("abcdefghijklmnopqrstuvwxyz")));
    if (!j.contains("network")) throw ShapeError("recognizer checkpoint: missing \"network\"");
    checkpoint_from_json(j["network"], named_params(r.cls));
    return r;
}

void Recognizer::save(const std::string& file) const { atomic_write_file(file, to_json() + "\n"); }

Recognizer Recognizer::load(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw InvalidArgumentError("cannot open checkpoint \"" + file + "\"");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

Recognizer train_recognizer(const Corpus& corpus, const std::vector<std::string>& lexicon,
                            const RecognizerConfig& config, int* skipped,
                            std::vector<double>* loss_curve) {
    config.validate();
    if (corpus.paths.empty()) throw InvalidArgumentError("train_recognizer: empty corpus");
    if (lexicon.empty()) throw InvalidArgumentError("train_recognizer: empty lexicon");
    const std::set<std::string> lex(lexicon.begin(), lexicon.end());
    for (const Path& p : corpus.paths)
        if (!lex.count(p.word))
            throw InvalidArgumentError("train_recognizer: path word \"" + p.word +
                                       "\" not in the lexicon");

    Recognizer r = Recognizer::init(config);
    if (skipped) *skipped = 0;

    // Resample once up front so every batch sees model-length inputs.
    std::vector<Path> resampled;
    resampled.reserve(corpus.paths.size());
    std::vector<const Path*> pool;
    pool.reserve(corpus.paths.size());
    for (const Path& p : corpus.paths) {
        if (static_cast<int>(p.points.size()) == config.seq_len) {
            pool.push_back(&p);
        } else {
            resampled.push_back(resample(p, config.seq_len));
            pool.push_back(&resampled.back());
        }
    }

    Rng rng(derive_seed(config.seed, "recognizer-shuffle"));
    AdamState state;
    std::vector<std::size_t> order(pool.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        shuffle_indices(order, rng);
        for (std::size_t start = 0; start < order.size(); start += config.batch) {
            std::vector<const Path*> batch;
            for (std::size_t i = start; i < std::min(order.size(), start + config.batch); ++i)
                batch.push_back(pool[order[i]]);
            Classifier grads = zeroed_copy(r.cls);
            int batch_skipped = 0;
            const double loss =
                classifier_ctc_batch(r.cls, batch, r.alphabet, 1.0, &grads, &batch_skipped);
            if (skipped) *skipped += batch_skipped;
            if (loss_curve) loss_curve->push_back(loss);
            adam_step(param_list(r.cls), param_list_const(grads), state, config.lr);
        }
    }
    return r;
}

double evaluate_top1(const std::function<Matrix(const Path&)>& step_probs, const Corpus& test,
                     const std::vector<std::string>& lexicon, const CtcAlphabet& alphabet) {
    if (test.paths.empty()) throw InvalidArgumentError("evaluate_top1: empty test corpus");
    if (lexicon.empty()) throw InvalidArgumentError("evaluate_top1: empty lexicon");
    std::vector<unsigned char> hit(test.paths.size(), 0);
    parallel_for(test.paths.size(), [&](std::size_t i) {
        const Matrix probs = step_probs(test.paths[i]);
        try {
            hit[i] = lexicon_top1(probs, lexicon, alphabet) == test.paths[i].word ? 1 : 0;
        } catch (const NoFeasibleWordError&) {
            hit[i] = 0;
        }
    });
    std::size_t correct = 0;
    for (unsigned char h : hit) correct += h;
    return static_cast<double>(correct) / static_cast<double>(test.paths.size());
}

double evaluate_top1(const Recognizer& recognizer, const Corpus& test,
                     const std::vector<std::string>& lexicon) {
    return evaluate_top1([&](const Path& p) { return recognizer.step_probs(p); }, test, lexicon,
                         recognizer.alphabet);
}

CompositionSpec parse_composition(const std::string& text) {
    CompositionSpec spec;
    std::string body = text;
    const auto eq = text.find('=');
    if (eq != std::string::npos) {
        spec.label = text.substr(0, eq);
        body = text.substr(eq + 1);
    } else {
        spec.label = text;
    }
    if (body.empty()) throw InvalidArgumentError("composition: empty spec");
    std::stringstream ss(body);
    std::string part;
    while (std::getline(ss, part, '+')) {
        const auto colon = part.find(':');
        if (colon == std::string::npos || colon + 1 >= part.size())
            throw InvalidArgumentError("composition: bad component \"" + part + "\" in \"" + text +
                                       "\" (expected U:<n>, S:<n> or G:<n>)");
        const std::string key = part.substr(0, colon);
        int count = 0;
        try {
            count = std::stoi(part.substr(colon + 1));
        } catch (const std::exception&) {
            throw InvalidArgumentError("composition: bad count in \"" + part + "\"");
        }
        if (count < 0) throw InvalidArgumentError("composition: negative count in \"" + part + "\"");
        if (key == "U" || key == "u") spec.n_user += count;
        else if (key == "S" || key == "s") spec.n_synth += count;
        else if (key == "G" || key == "g") spec.n_gan += count;
        else throw InvalidArgumentError("composition: unknown source \"" + key + "\"");
    }
    if (spec.n_user + spec.n_synth + spec.n_gan <= 0)
        throw InvalidArgumentError("composition \"" + text + "\" selects no paths");
    return spec;
}

std::string ExperimentReport::csv() const {
    std::string out = "label,n_user,n_synth,n_gan,top1\n";
    char buf[160];
    for (const CompositionRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%d,%d,%d,%.6f\n", r.spec.label.c_str(), r.spec.n_user,
                      r.spec.n_synth, r.spec.n_gan, r.top1);
        out += buf;
    }
    return out;
}

std::string ExperimentReport::table() const {
    std::size_t width = 5;
    for (const CompositionRow& r : rows) width = std::max(width, r.spec.label.size());
    std::string out;
    char buf[200];
    std::snprintf(buf, sizeof(buf), "%-*s %8s %8s %8s %8s\n", static_cast<int>(width), "label",
                  "user", "synth", "gan", "top1");
    out += buf;
    for (const CompositionRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%-*s %8d %8d %8d %7.1f%%\n", static_cast<int>(width),
                      r.spec.label.c_str(), r.spec.n_user, r.spec.n_synth, r.spec.n_gan,
                      100.0 * r.top1);
        out += buf;
    }
    return out;
}

ExperimentReport run_compositions(const std::vector<CompositionSpec>& specs, const Corpus& user,
                                  const Corpus& synth, const Corpus& gan, const Corpus& test,
                                  const std::vector<std::string>& lexicon,
                                  const RecognizerConfig& config) {
    if (specs.empty()) throw InvalidArgumentError("run_compositions: no specs");
    std::set<std::string> labels;
    for (const CompositionSpec& s : specs) {
        if (!labels.insert(s.label).second)
            throw InvalidArgumentError("run_compositions: duplicate label \"" + s.label + "\"");
        if (s.n_user > static_cast<int>(user.paths.size()) ||
            s.n_synth > static_cast<int>(synth.paths.size()) ||
            s.n_gan > static_cast<int>(gan.paths.size()))
            throw InvalidArgumentError("run_compositions: spec \"" + s.label +
                                       "\" asks for more paths than available");
    }

    ExperimentReport report;
    for (const CompositionSpec& s : specs) {
        Corpus train;
        train.metadata = user.metadata;
        train.metadata.generator = "composition:" + s.label;
        for (int i = 0; i < s.n_user; ++i) train.paths.push_back(user.paths[i]);
        for (int i = 0; i < s.n_synth; ++i) train.paths.push_back(synth.paths[i]);
        for (int i = 0; i < s.n_gan; ++i) train.paths.push_back(gan.paths[i]);

        for (const Path& tr : train.paths)
            for (const Path& te : test.paths)
                if (same_path(tr, te))
                    throw InvalidArgumentError(
                        "run_compositions: train and test corpora share a path for \"" + tr.word +
                        "\"");

        const auto start = std::chrono::steady_clock::now();
        const Recognizer r = train_recognizer(train, lexicon, config);
        CompositionRow row;
        row.spec = s;
        row.top1 = evaluate_top1(r, test, lexicon);
        row.seed = config.seed;
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report.rows.push_back(std::move(row));
    }
    return report;
}

double learning_curve_slope(const std::vector<std::pair<double, double>>& size_error) {
    if (size_error.size() < 2)
        throw InvalidArgumentError("learning_curve_slope: need at least 2 points");
    for (const auto& [size, error] : size_error)
        if (size <= 0.0 || error <= 0.0)
            throw InvalidArgumentError("learning_curve_slope: sizes and errors must be positive");
    double mx = 0.0, my = 0.0;
    for (const auto& [size, error] : size_error) {
        mx += std::log(size);
        my += std::log(error);
    }
    mx /= static_cast<double>(size_error.size());
    my /= static_cast<double>(size_error.size());
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [size, error] : size_error) {
        const double dx = std::log(size) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(error) - my);
    }
    if (sxx == 0.0) throw InvalidArgumentError("learning_curve_slope: all sizes identical");
    return sxy / sxx;
}

}  // namespace swipegan
