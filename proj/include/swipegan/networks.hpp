#pragma once

#include <functional>
#include <string>
#include <vector>

#include "swipegan/checkpoint.hpp"
#include "swipegan/ctc.hpp"
#include "swipegan/lstm.hpp"
#include "swipegan/matrix.hpp"
#include "swipegan/path.hpp"

namespace swipegan {

struct DenseParams {
    Matrix W;  // out x in
    Matrix b;  // out x 1

    static DenseParams zeros(int in, int out);
    static DenseParams init(int in, int out, Rng& rng);

    template <class F> void visit(F&& f) {
        f(std::string("W"), W);
        f(std::string("b"), b);
    }
};

Seq points_to_seq(const std::vector<Point>& pts);

// Path transformer: bi-LSTM stack plus a per-step 2-D displacement head in
// residual form, Y_t = X_t + head(z_t). The head starts at zero, so a fresh
// generator is the identity map.
struct Generator {
    BiLstmStack stack;
    DenseParams head;

    static Generator init(int hidden, int depth, Rng& rng);
    template <class F> void visit(F&& f) {
        stack.visit([&](const std::string& n, Matrix& m) { f("stack." + n, m); });
        head.visit([&](const std::string& n, Matrix& m) { f("head." + n, m); });
    }
};

struct GenCache {
    StackTrace trace;
    Seq stack_out;
};

std::vector<Point> generator_forward(const Generator& gen, const std::vector<Point>& x,
                                     GenCache* cache);
void generator_backward(const Generator& gen, const std::vector<Point>& x, const GenCache& cache,
                        const std::vector<Point>& d_out, Generator& grads);

// Real-vs-generated probability: bi-LSTM stack, mean pool, dense, sigmoid.
struct Discriminator {
    BiLstmStack stack;
    DenseParams head;

    static Discriminator init(int hidden, int depth, Rng& rng);
    template <class F> void visit(F&& f) {
        stack.visit([&](const std::string& n, Matrix& m) { f("stack." + n, m); });
        head.visit([&](const std::string& n, Matrix& m) { f("head." + n, m); });
    }
};

struct DiscCache {
    StackTrace trace;
    Seq stack_out;
    std::vector<double> pooled;
    double logit = 0.0;
    double prob = 0.0;
};

double discriminator_forward(const Discriminator& disc, const std::vector<Point>& pts,
                             DiscCache* cache);
void discriminator_backward(const Discriminator& disc, const DiscCache& cache, double d_logit,
                            Discriminator& grads, std::vector<Point>* input_grads);

// Word recognizer: bi-LSTM stack plus a per-step dense head; softmax rows
// feed the CTC loss.
struct Classifier {
    BiLstmStack stack;
    DenseParams head;

    static Classifier init(int hidden, int depth, int n_symbols, Rng& rng);
    int n_symbols() const { return head.W.rows; }
    template <class F> void visit(F&& f) {
        stack.visit([&](const std::string& n, Matrix& m) { f("stack." + n, m); });
        head.visit([&](const std::string& n, Matrix& m) { f("head." + n, m); });
    }
};

struct ClsCache {
    StackTrace trace;
    Seq stack_out;
};

// Returns the K x n_symbols step distributions.
Matrix classifier_forward(const Classifier& cls, const std::vector<Point>& pts, ClsCache* cache);
void classifier_backward(const Classifier& cls, const ClsCache& cache, const Matrix& d_logits,
                         Classifier& grads, std::vector<Point>* input_grads);

template <class Net> Net zeroed_copy(const Net& net) {
    Net z = net;
    z.visit([](const std::string&, Matrix& m) { m.fill(0.0); });
    return z;
}

template <class Net> std::vector<Matrix*> param_list(Net& net) {
    std::vector<Matrix*> out;
    net.visit([&](const std::string&, Matrix& m) { out.push_back(&m); });
    return out;
}

template <class Net> std::vector<const Matrix*> param_list_const(Net& net) {
    std::vector<const Matrix*> out;
    net.visit([&](const std::string&, Matrix& m) { out.push_back(&m); });
    return out;
}

template <class Net> ParamMap named_params(Net& net, const std::string& prefix = "") {
    ParamMap out;
    net.visit([&](const std::string& n, Matrix& m) { out.emplace_back(prefix + n, &m); });
    return out;
}

template <class Net> void accumulate(Net& dst, const Net& src) {
    std::vector<Matrix*> d = param_list(dst);
    std::vector<Matrix*> s = param_list(const_cast<Net&>(src));
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t k = 0; k < d[i]->size(); ++k) d[i]->v[k] += s[i]->v[k];
}

// One CTC training batch: accumulates classifier gradients scaled by
// grad_scale / n_feasible and returns the mean loss over feasible paths.
// Infeasible targets are skipped and counted.
double classifier_ctc_batch(const Classifier& cls, const std::vector<const Path*>& batch,
                            const CtcAlphabet& alphabet, double grad_scale, Classifier* grads,
                            int* skipped);

// Deterministic helper: runs fn(i) for i in [0, n) across worker threads.
// Callers must keep per-index outputs independent and reduce in index order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace swipegan
