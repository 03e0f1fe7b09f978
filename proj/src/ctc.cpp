#include "swipegan/ctc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "swipegan/error.hpp"

namespace swipegan {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(-(std::fabs(a - b))));
}

void check_probs(const Matrix& probs, const CtcAlphabet& alphabet, const char* what) {
    if (probs.rows < 1) throw ShapeError(std::string(what) + ": need K >= 1 steps");
    if (probs.cols != alphabet.num_symbols())
        throw ShapeError(std::string(what) + ": " + std::to_string(probs.cols) +
                         " columns, expected " + std::to_string(alphabet.num_symbols()));
}

void check_feasible(int steps, const std::string& word) {
    const int need = ctc_min_length(word);
    if (steps < need)
        throw InfeasibleTargetError("target \"" + word + "\" needs at least " +
                                    std::to_string(need) + " steps, got " +
                                    std::to_string(steps));
}

// log alpha over the expanded label lattice; alpha includes the emission at
// its own step.
std::vector<std::vector<double>> ctc_forward(const Matrix& probs, const std::vector<int>& labels) {
    const int K = probs.rows;
    const int S = static_cast<int>(labels.size());
    std::vector<std::vector<double>> alpha(K, std::vector<double>(S, kNegInf));

    alpha[0][0] = std::log(probs(0, labels[0]));
    if (S > 1) alpha[0][1] = std::log(probs(0, labels[1]));
    for (int t = 1; t < K; ++t) {
        for (int s = 0; s < S; ++s) {
            double acc = alpha[t - 1][s];
            if (s >= 1) acc = log_add(acc, alpha[t - 1][s - 1]);
            if (s >= 2 && labels[s] != labels[s - 2]) acc = log_add(acc, alpha[t - 1][s - 2]);
            if (acc == kNegInf) continue;
            alpha[t][s] = acc + std::log(probs(t, labels[s]));
        }
    }
    return alpha;
}

}  // namespace

CtcAlphabet::CtcAlphabet(std::string characters) : chars(std::move(characters)) {
    if (chars.empty()) throw InvalidArgumentError("ctc: empty alphabet");
    for (std::size_t i = 0; i < chars.size(); ++i)
        for (std::size_t j = i + 1; j < chars.size(); ++j)
            if (chars[i] == chars[j])
                throw InvalidArgumentError(std::string("ctc: duplicate character '") + chars[i] + "'");
}

int CtcAlphabet::index(char c) const {
    const auto pos = chars.find(c);
    if (pos == std::string::npos) throw UnknownCharacterError(c);
    return static_cast<int>(pos);
}

std::vector<int> ctc_expand(const std::string& word, const CtcAlphabet& alphabet) {
    std::vector<int> labels;
    labels.reserve(2 * word.size() + 1);
    labels.push_back(alphabet.blank());
    for (char c : word) {
        labels.push_back(alphabet.index(c));
        labels.push_back(alphabet.blank());
    }
    return labels;
}

int ctc_min_length(const std::string& word) {
    int need = static_cast<int>(word.size());
    for (std::size_t i = 1; i < word.size(); ++i)
        if (word[i] == word[i - 1]) ++need;
    return need;
}

double ctc_loss(const Matrix& probs, const std::string& word, const CtcAlphabet& alphabet) {
    check_probs(probs, alphabet, "ctc_loss");
    check_feasible(probs.rows, word);
    const std::vector<int> labels = ctc_expand(word, alphabet);
    const auto alpha = ctc_forward(probs, labels);
    const int K = probs.rows;
    const int S = static_cast<int>(labels.size());
    double logz = alpha[K - 1][S - 1];
    if (S > 1) logz = log_add(logz, alpha[K - 1][S - 2]);
    return -logz;
}

Matrix ctc_grad(const Matrix& probs, const std::string& word, const CtcAlphabet& alphabet) {
    check_probs(probs, alphabet, "ctc_grad");
    check_feasible(probs.rows, word);
    const std::vector<int> labels = ctc_expand(word, alphabet);
    const int K = probs.rows;
    const int S = static_cast<int>(labels.size());

    const auto alpha = ctc_forward(probs, labels);
    // beta excludes the emission at its own step, so alpha_t(s) * beta_t(s)
    // is the total probability of paths through (t, s).
    std::vector<std::vector<double>> beta(K, std::vector<double>(S, kNegInf));
    beta[K - 1][S - 1] = 0.0;
    if (S > 1) beta[K - 1][S - 2] = 0.0;
    for (int t = K - 2; t >= 0; --t) {
        for (int s = 0; s < S; ++s) {
            double acc = beta[t + 1][s] == kNegInf
                             ? kNegInf
                             : beta[t + 1][s] + std::log(probs(t + 1, labels[s]));
            if (s + 1 < S && beta[t + 1][s + 1] != kNegInf)
                acc = log_add(acc, beta[t + 1][s + 1] + std::log(probs(t + 1, labels[s + 1])));
            if (s + 2 < S && labels[s + 2] != labels[s] && beta[t + 1][s + 2] != kNegInf)
                acc = log_add(acc, beta[t + 1][s + 2] + std::log(probs(t + 1, labels[s + 2])));
            beta[t][s] = acc;
        }
    }

    double logz = alpha[K - 1][S - 1];
    if (S > 1) logz = log_add(logz, alpha[K - 1][S - 2]);
    if (logz == kNegInf)
        throw InvalidArgumentError("ctc_grad: target has zero probability");

    Matrix grad(K, probs.cols);
    for (int t = 0; t < K; ++t) {
        std::vector<double> posterior(probs.cols, 0.0);
        for (int s = 0; s < S; ++s) {
            if (alpha[t][s] == kNegInf || beta[t][s] == kNegInf) continue;
            posterior[labels[s]] += std::exp(alpha[t][s] + beta[t][s] - logz);
        }
        for (int k = 0; k < probs.cols; ++k) grad(t, k) = probs(t, k) - posterior[k];
    }
    return grad;
}

namespace {

// DFS over step strings; branches whose collapsed output already deviates
// from the target contribute exactly zero and are cut.
double brute_sum(const Matrix& probs, const std::string& word, const CtcAlphabet& alphabet, int t,
                 int last, std::size_t matched, double product) {
    if (t == probs.rows)
        return matched == word.size() ? product : 0.0;
    double sum = 0.0;
    for (int s = 0; s < probs.cols; ++s) {
        const double p = probs(t, s);
        std::size_t m = matched;
        if (s != alphabet.blank() && s != last) {
            if (m >= word.size() || alphabet.chars[s] != word[m]) continue;
            ++m;
        }
        sum += brute_sum(probs, word, alphabet, t + 1, s, m, product * p);
    }
    return sum;
}

}  // namespace

double ctc_brute_force(const Matrix& probs, const std::string& word, const CtcAlphabet& alphabet) {
    check_probs(probs, alphabet, "ctc_brute_force");
    if (probs.rows > 10 || static_cast<int>(alphabet.chars.size()) > 5)
        throw TooLargeError("ctc_brute_force: limited to K <= 10 and 5 characters");
    for (char c : word) alphabet.index(c);
    const double sum = brute_sum(probs, word, alphabet, 0, alphabet.blank(), 0, 1.0);
    return -std::log(sum);
}

std::string greedy_decode(const Matrix& probs, const CtcAlphabet& alphabet) {
    check_probs(probs, alphabet, "greedy_decode");
    std::string out;
    int last = alphabet.blank();
    for (int t = 0; t < probs.rows; ++t) {
        int best = 0;
        for (int k = 1; k < probs.cols; ++k)
            if (probs(t, k) > probs(t, best)) best = k;
        if (best != alphabet.blank() && best != last) out += alphabet.chars[best];
        last = best;
    }
    return out;
}

std::string lexicon_top1(const Matrix& probs, const std::vector<std::string>& lexicon,
                         const CtcAlphabet& alphabet) {
    check_probs(probs, alphabet, "lexicon_top1");
    if (lexicon.empty()) throw InvalidArgumentError("lexicon_top1: empty lexicon");
    bool found = false;
    double best_loss = 0.0;
    std::string best_word;
    for (const std::string& w : lexicon) {
        if (ctc_min_length(w) > probs.rows) continue;
        const double loss = ctc_loss(probs, w, alphabet);
        if (!found || loss < best_loss || (loss == best_loss && w < best_word)) {
            found = true;
            best_loss = loss;
            best_word = w;
        }
    }
    if (!found) throw NoFeasibleWordError("no lexicon word fits in " +
                                          std::to_string(probs.rows) + " steps");
    return best_word;
}

}  // namespace swipegan
