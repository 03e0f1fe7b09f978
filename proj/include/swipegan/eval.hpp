#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "swipegan/corpus.hpp"
#include "swipegan/ctc.hpp"
#include "swipegan/networks.hpp"

namespace swipegan {

struct RecognizerConfig {
    int seq_len = 64;
    int hidden = 64;
    int depth = 2;
    double lr = 1e-3;
    int batch = 16;
    int epochs = 20;
    std::uint64_t seed = 1;

    void validate() const;
};

// A standalone CTC word recognizer (same architecture as the GAN classifier).
struct Recognizer {
    RecognizerConfig config;
    CtcAlphabet alphabet;
    Classifier cls;

    static Recognizer init(const RecognizerConfig& config,
                           const std::string& characters = "abcdefghijklmnopqrstuvwxyz");

    // Step distributions for a path (resampled to seq_len when needed).
    Matrix step_probs(const Path& path) const;

    std::string to_json() const;
    static Recognizer from_json(const std::string& text);
    void save(const std::string& file) const;
    static Recognizer load(const std::string& file);
};

// Fixed epochs of Adam/CTC over seeded shuffled batches; infeasible targets
// are skipped and counted.
Recognizer train_recognizer(const Corpus& corpus, const std::vector<std::string>& lexicon,
                            const RecognizerConfig& config, int* skipped = nullptr,
                            std::vector<double>* loss_curve = nullptr);

// Fraction of test paths whose best-scoring lexicon word is the true label.
double evaluate_top1(const std::function<Matrix(const Path&)>& step_probs, const Corpus& test,
                     const std::vector<std::string>& lexicon, const CtcAlphabet& alphabet);
double evaluate_top1(const Recognizer& recognizer, const Corpus& test,
                     const std::vector<std::string>& lexicon);

struct CompositionSpec {
    std::string label;
    int n_user = 0;
    int n_synth = 0;
    int n_gan = 0;
};

// "U:300+G:1500" or "U:300" etc.; label defaults to the spec string.
CompositionSpec parse_composition(const std::string& text);

struct CompositionRow {
    CompositionSpec spec;
    double top1 = 0.0;
    std::uint64_t seed = 0;
    double seconds = 0.0;  // wall clock; never serialized into report files
};

struct ExperimentReport {
    std::vector<CompositionRow> rows;

    std::string csv() const;    // label,n_user,n_synth,n_gan,top1
    std::string table() const;  // aligned human-readable text
};

// One recognizer per composition, identical hyperparameters, shared held-out
// test corpus. Training paths are drawn from the front of each source corpus
// and asserted disjoint from the test corpus.
ExperimentReport run_compositions(const std::vector<CompositionSpec>& specs, const Corpus& user,
                                  const Corpus& synth, const Corpus& gan, const Corpus& test,
                                  const std::vector<std::string>& lexicon,
                                  const RecognizerConfig& config);

// Least-squares slope of log(error) against log(size).
double learning_curve_slope(const std::vector<std::pair<double, double>>& size_error);

}  // namespace swipegan
