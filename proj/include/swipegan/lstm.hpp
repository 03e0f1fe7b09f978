#pragma once

#include <string>
#include <vector>

#include "swipegan/matrix.hpp"
#include "swipegan/rng.hpp"

namespace swipegan {

using Seq = std::vector<std::vector<double>>;

// One direction of an LSTM: gates i/f/o, candidate g, sigmoid gates and tanh
// squashing. Forget bias starts at 1.
struct LstmParams {
    int in = 0;
    int hidden = 0;
    Matrix Wi, Ui, bi;
    Matrix Wf, Uf, bf;
    Matrix Wg, Ug, bg;
    Matrix Wo, Uo, bo;

    static LstmParams zeros(int in, int hidden);
    static LstmParams init(int in, int hidden, Rng& rng);

    template <class F> void visit(F&& f) {
        f("Wi", Wi); f("Ui", Ui); f("bi", bi);
        f("Wf", Wf); f("Uf", Uf); f("bf", bf);
        f("Wg", Wg); f("Ug", Ug); f("bg", bg);
        f("Wo", Wo); f("Uo", Uo); f("bo", bo);
    }
    template <class F> void visit(F&& f) const {
        const_cast<LstmParams*>(this)->visit([&](const char* n, Matrix& m) {
            f(n, static_cast<const Matrix&>(m));
        });
    }
};

struct BiLstmParams {
    LstmParams fwd, bwd;

    int in() const { return fwd.in; }
    int hidden() const { return fwd.hidden; }

    static BiLstmParams zeros(int in, int hidden);
    static BiLstmParams init(int in, int hidden, Rng& rng);

    template <class F> void visit(F&& f) {
        fwd.visit([&](const char* n, Matrix& m) { f(std::string("fwd.") + n, m); });
        bwd.visit([&](const char* n, Matrix& m) { f(std::string("bwd.") + n, m); });
    }
};

// Cached activations for one direction, in processing order.
struct LstmTrace {
    Seq i, f, g, o, c, tc, h;
};

struct BiLstmTrace {
    LstmTrace fwd, bwd;
};

// Returns hidden states in processing order; `trace` may be null when no
// backward pass will follow.
Seq lstm_forward(const LstmParams& p, const Seq& input, LstmTrace* trace);

// Accumulates parameter gradients into `grads` and, when non-null, input
// gradients into `input_grads` (both processing order).
void lstm_backward(const LstmParams& p, const Seq& input, const LstmTrace& trace,
                   const Seq& upstream, LstmParams& grads, Seq* input_grads);

// Output t is [fwd_h_t | bwd_h_t], size 2*hidden, in input order.
Seq bilstm_forward(const BiLstmParams& p, const Seq& input, BiLstmTrace* trace);

void bilstm_backward(const BiLstmParams& p, const Seq& input, const BiLstmTrace& trace,
                     const Seq& upstream, BiLstmParams& grads, Seq* input_grads);

// Stack of bi-LSTM layers; layer k > 0 consumes the 2*hidden outputs of k-1.
struct BiLstmStack {
    std::vector<BiLstmParams> layers;

    int input_dim() const { return layers.empty() ? 0 : layers.front().in(); }
    int hidden() const { return layers.empty() ? 0 : layers.front().hidden(); }
    int output_dim() const { return 2 * hidden(); }

    static BiLstmStack zeros(int in, int hidden, int depth);
    static BiLstmStack init(int in, int hidden, int depth, Rng& rng);

    template <class F> void visit(F&& f) {
        for (std::size_t l = 0; l < layers.size(); ++l) {
            const std::string prefix = "layer" + std::to_string(l) + ".";
            layers[l].visit([&](const std::string& n, Matrix& m) { f(prefix + n, m); });
        }
    }
};

struct StackTrace {
    std::vector<BiLstmTrace> layers;
    std::vector<Seq> inputs;  // input of each layer
};

Seq stack_forward(const BiLstmStack& stack, const Seq& input, StackTrace* trace);

void stack_backward(const BiLstmStack& stack, const StackTrace& trace, const Seq& upstream,
                    BiLstmStack& grads, Seq* input_grads);

}  // namespace swipegan
