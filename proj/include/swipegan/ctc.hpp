#pragma once

#include <string>
#include <vector>

#include "swipegan/matrix.hpp"

namespace swipegan {

// Ordered character set plus a reserved trailing blank index.
struct CtcAlphabet {
    std::string chars;

    explicit CtcAlphabet(std::string characters = "abcdefghijklmnopqrstuvwxyz");

    int blank() const { return static_cast<int>(chars.size()); }
    int num_symbols() const { return static_cast<int>(chars.size()) + 1; }
    int index(char c) const;  // throws UnknownCharacterError
};

// [blank, w1, blank, w2, ..., wn, blank]; length 2n+1.
std::vector<int> ctc_expand(const std::string& word, const CtcAlphabet& alphabet);

// Shortest input length that can emit the word (repeats need a separating blank).
int ctc_min_length(const std::string& word);

// Step distributions are rows of a K x (|chars|+1) matrix, each summing to 1.
// Loss is the negative log of the summed probability of every step-wise
// symbol string that collapses to the word; computed by a log-space forward
// recursion over the blank-expanded label sequence.
double ctc_loss(const Matrix& probs, const std::string& word, const CtcAlphabet& alphabet);

// Gradient of ctc_loss with respect to the pre-softmax logits that produced
// `probs`, via the forward-backward posterior. Rows sum to 0.
Matrix ctc_grad(const Matrix& probs, const std::string& word, const CtcAlphabet& alphabet);

// Exhaustive enumeration of all (|chars|+1)^K step strings; guarded to
// K <= 10 and |chars| <= 5. Independent oracle for ctc_loss.
double ctc_brute_force(const Matrix& probs, const std::string& word, const CtcAlphabet& alphabet);

// Per-step argmax (ties to the lowest index), collapse repeats, drop blanks.
std::string greedy_decode(const Matrix& probs, const CtcAlphabet& alphabet);

// argmin of ctc_loss over the lexicon; infeasible words are skipped and ties
// break to the lexicographically smaller word.
std::string lexicon_top1(const Matrix& probs, const std::vector<std::string>& lexicon,
                         const CtcAlphabet& alphabet);

}  // namespace swipegan
