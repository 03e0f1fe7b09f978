#include "swipegan/networks.hpp"

#include <cmath>
#include <functional>
#include <thread>

#include "swipegan/error.hpp"

namespace swipegan {

DenseParams DenseParams::zeros(int in, int out) { return {Matrix(out, in), Matrix(out, 1)}; }

DenseParams DenseParams::init(int in, int out, Rng& rng) {
    DenseParams p = zeros(in, out);
    fill_uniform(p.W, 1.0 / std::sqrt(static_cast<double>(in)), rng);
    return p;
}

Seq points_to_seq(const std::vector<Point>& pts) {
    Seq seq(pts.size(), std::vector<double>(2));
    for (std::size_t t = 0; t < pts.size(); ++t) {
        seq[t][0] = pts[t].x;
        seq[t][1] = pts[t].y;
    }
    return seq;
}

Generator Generator::init(int hidden, int depth, Rng& rng) {
    Generator g;
    g.stack = BiLstmStack::init(2, hidden, depth, rng);
    g.head = DenseParams::zeros(2 * hidden, 2);  // zero head: identity transfer
    return g;
}

std::vector<Point> generator_forward(const Generator& gen, const std::vector<Point>& x,
                                     GenCache* cache) {
    GenCache local;
    GenCache& c = cache ? *cache : local;
    c.stack_out = stack_forward(gen.stack, points_to_seq(x), cache ? &c.trace : nullptr);
    std::vector<Point> y(x.size());
    double d[2];
    for (std::size_t t = 0; t < x.size(); ++t) {
        dense_forward(gen.head.W, gen.head.b, c.stack_out[t].data(), d);
        y[t] = {x[t].x + d[0], x[t].y + d[1]};
    }
    return y;
}

void generator_backward(const Generator& gen, const std::vector<Point>& x, const GenCache& cache,
                        const std::vector<Point>& d_out, Generator& grads) {
    if (d_out.size() != x.size()) throw ShapeError("generator_backward: upstream length mismatch");
    const std::size_t T = x.size();
    Seq d_stack(T, std::vector<double>(gen.stack.output_dim(), 0.0));
    for (std::size_t t = 0; t < T; ++t) {
        const double dy[2] = {d_out[t].x, d_out[t].y};
        outer_add(grads.head.W, dy, cache.stack_out[t].data());
        grads.head.b.v[0] += dy[0];
        grads.head.b.v[1] += dy[1];
        matvec_transpose_add(gen.head.W, dy, d_stack[t].data());
    }
    stack_backward(gen.stack, cache.trace, d_stack, grads.stack, nullptr);
}

Discriminator Discriminator::init(int hidden, int depth, Rng& rng) {
    Discriminator d;
    d.stack = BiLstmStack::init(2, hidden, depth, rng);
    d.head = DenseParams::init(2 * hidden, 1, rng);
    return d;
}

double discriminator_forward(const Discriminator& disc, const std::vector<Point>& pts,
                             DiscCache* cache) {
    DiscCache local;
    DiscCache& c = cache ? *cache : local;
    c.stack_out = stack_forward(disc.stack, points_to_seq(pts), cache ? &c.trace : nullptr);
    c.pooled = mean_pool(c.stack_out);
    double logit;
    dense_forward(disc.head.W, disc.head.b, c.pooled.data(), &logit);
    c.logit = logit;
    c.prob = sigmoid(logit);
    return c.prob;
}

void discriminator_backward(const Discriminator& disc, const DiscCache& cache, double d_logit,
                            Discriminator& grads, std::vector<Point>* input_grads) {
    outer_add(grads.head.W, &d_logit, cache.pooled.data());
    grads.head.b.v[0] += d_logit;

    const std::size_t T = cache.stack_out.size();
    const int dim = disc.stack.output_dim();
    std::vector<double> d_pooled(dim, 0.0);
    matvec_transpose_add(disc.head.W, &d_logit, d_pooled.data());
    Seq d_stack(T, std::vector<double>(dim));
    const double inv = 1.0 / static_cast<double>(T);
    for (std::size_t t = 0; t < T; ++t)
        for (int k = 0; k < dim; ++k) d_stack[t][k] = d_pooled[k] * inv;

    if (!input_grads) {
        stack_backward(disc.stack, cache.trace, d_stack, grads.stack, nullptr);
        return;
    }
    Seq d_in;
    stack_backward(disc.stack, cache.trace, d_stack, grads.stack, &d_in);
    input_grads->resize(T);
    for (std::size_t t = 0; t < T; ++t) (*input_grads)[t] = {d_in[t][0], d_in[t][1]};
}

Classifier Classifier::init(int hidden, int depth, int n_symbols, Rng& rng) {
    Classifier c;
    c.stack = BiLstmStack::init(2, hidden, depth, rng);
    c.head = DenseParams::init(2 * hidden, n_symbols, rng);
    return c;
}

Matrix classifier_forward(const Classifier& cls, const std::vector<Point>& pts, ClsCache* cache) {
    ClsCache local;
    ClsCache& c = cache ? *cache : local;
    c.stack_out = stack_forward(cls.stack, points_to_seq(pts), cache ? &c.trace : nullptr);
    const int n = cls.n_symbols();
    Matrix probs(static_cast<int>(pts.size()), n);
    for (std::size_t t = 0; t < pts.size(); ++t) {
        dense_forward(cls.head.W, cls.head.b, c.stack_out[t].data(), probs.row(static_cast<int>(t)));
        softmax_inplace(probs.row(static_cast<int>(t)), n);
    }
    return probs;
}

void classifier_backward(const Classifier& cls, const ClsCache& cache, const Matrix& d_logits,
                         Classifier& grads, std::vector<Point>* input_grads) {
    const std::size_t T = cache.stack_out.size();
    if (static_cast<std::size_t>(d_logits.rows) != T || d_logits.cols != cls.n_symbols())
        throw ShapeError("classifier_backward: upstream shape mismatch");
    Seq d_stack(T, std::vector<double>(cls.stack.output_dim(), 0.0));
    for (std::size_t t = 0; t < T; ++t) {
        const double* dy = d_logits.row(static_cast<int>(t));
        outer_add(grads.head.W, dy, cache.stack_out[t].data());
        for (int k = 0; k < cls.n_symbols(); ++k) grads.head.b.v[k] += dy[k];
        matvec_transpose_add(cls.head.W, dy, d_stack[t].data());
    }
    if (!input_grads) {
        stack_backward(cls.stack, cache.trace, d_stack, grads.stack, nullptr);
        return;
    }
    Seq d_in;
    stack_backward(cls.stack, cache.trace, d_stack, grads.stack, &d_in);
    input_grads->resize(T);
    for (std::size_t t = 0; t < T; ++t) (*input_grads)[t] = {d_in[t][0], d_in[t][1]};
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min(hw, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : threads) t.join();
}

double classifier_ctc_batch(const Classifier& cls, const std::vector<const Path*>& batch,
                            const CtcAlphabet& alphabet, double grad_scale, Classifier* grads,
                            int* skipped) {
    if (batch.empty()) throw InvalidArgumentError("classifier_ctc_batch: empty batch");

    struct Item {
        bool feasible = false;
        double loss = 0.0;
        Classifier grad;
    };
    std::vector<Item> items(batch.size());

    parallel_for(batch.size(), [&](std::size_t i) {
        const Path& path = *batch[i];
        if (ctc_min_length(path.word) > static_cast<int>(path.points.size())) return;
        items[i].feasible = true;
        ClsCache cache;
        const Matrix probs = classifier_forward(cls, path.points, grads ? &cache : nullptr);
        items[i].loss = ctc_loss(probs, path.word, alphabet);
        if (grads) {
            const Matrix d_logits = ctc_grad(probs, path.word, alphabet);
            items[i].grad = zeroed_copy(cls);
            classifier_backward(cls, cache, d_logits, items[i].grad, nullptr);
        }
    });

    int feasible = 0;
    double loss_sum = 0.0;
    for (const Item& it : items) {
        if (!it.feasible) continue;
        ++feasible;
        loss_sum += it.loss;
    }
    if (skipped) *skipped += static_cast<int>(batch.size()) - feasible;
    if (feasible == 0) return 0.0;

    if (grads) {
        const double scale = grad_scale / static_cast<double>(feasible);
        std::vector<Matrix*> dst = param_list(*grads);
        for (const Item& it : items) {
            if (!it.feasible) continue;
            std::vector<Matrix*> src = param_list(const_cast<Classifier&>(it.grad));
            for (std::size_t m = 0; m < dst.size(); ++m)
                for (std::size_t k = 0; k < dst[m]->size(); ++k)
                    dst[m]->v[k] += scale * src[m]->v[k];
        }
    }
    return loss_sum / feasible;
}

}  // namespace swipegan
