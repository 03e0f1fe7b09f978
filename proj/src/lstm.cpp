#include "swipegan/lstm.hpp"

#include <algorithm>
#include <cmath>

#include "swipegan/error.hpp"

namespace swipegan {

namespace {

void check_input(const Seq& input, int dim, const char* what) {
    if (input.empty()) throw ShapeError(std::string(what) + ": empty sequence");
    for (const auto& x : input)
        if (static_cast<int>(x.size()) != dim)
            throw ShapeError(std::string(what) + ": input dim " + std::to_string(x.size()) +
                             ", expected " + std::to_string(dim));
}

Seq reversed(const Seq& s) { return Seq(s.rbegin(), s.rend()); }

}  // namespace

LstmParams LstmParams::zeros(int in, int hidden) {
    LstmParams p;
    p.in = in;
    p.hidden = hidden;
    for (Matrix* w : {&p.Wi, &p.Wf, &p.Wg, &p.Wo}) *w = Matrix(hidden, in);
    for (Matrix* u : {&p.Ui, &p.Uf, &p.Ug, &p.Uo}) *u = Matrix(hidden, hidden);
    for (Matrix* b : {&p.bi, &p.bf, &p.bg, &p.bo}) *b = Matrix(hidden, 1);
    return p;
}

LstmParams LstmParams::init(int in, int hidden, Rng& rng) {
    LstmParams p = zeros(in, hidden);
    const double rw = 1.0 / std::sqrt(static_cast<double>(in));
    const double ru = 1.0 / std::sqrt(static_cast<double>(hidden));
    for (Matrix* w : {&p.Wi, &p.Wf, &p.Wg, &p.Wo}) fill_uniform(*w, rw, rng);
    for (Matrix* u : {&p.Ui, &p.Uf, &p.Ug, &p.Uo}) fill_uniform(*u, ru, rng);
    p.bf.fill(1.0);
    return p;
}

BiLstmParams BiLstmParams::zeros(int in, int hidden) {
    return {LstmParams::zeros(in, hidden), LstmParams::zeros(in, hidden)};
}

BiLstmParams BiLstmParams::init(int in, int hidden, Rng& rng) {
    BiLstmParams p;
    p.fwd = LstmParams::init(in, hidden, rng);
    p.bwd = LstmParams::init(in, hidden, rng);
    return p;
}

Seq lstm_forward(const LstmParams& p, const Seq& input, LstmTrace* trace) {
    check_input(input, p.in, "lstm_forward");
    const std::size_t T = input.size();
    const int H = p.hidden;

    if (trace) {
        for (Seq* s : {&trace->i, &trace->f, &trace->g, &trace->o, &trace->c, &trace->tc, &trace->h})
            s->assign(T, std::vector<double>(H));
    }

    Seq hs(T, std::vector<double>(H));
    std::vector<double> h_prev(H, 0.0), c_prev(H, 0.0);
    std::vector<double> ai(H), af(H), ag(H), ao(H);
    for (std::size_t t = 0; t < T; ++t) {
        const double* x = input[t].data();
        matvec(p.Wi, x, ai.data());
        matvec_add(p.Ui, h_prev.data(), ai.data());
        matvec(p.Wf, x, af.data());
        matvec_add(p.Uf, h_prev.data(), af.data());
        matvec(p.Wg, x, ag.data());
        matvec_add(p.Ug, h_prev.data(), ag.data());
        matvec(p.Wo, x, ao.data());
        matvec_add(p.Uo, h_prev.data(), ao.data());

        auto& h = hs[t];
        for (int k = 0; k < H; ++k) {
            const double iv = sigmoid(ai[k] + p.bi.v[k]);
            const double fv = sigmoid(af[k] + p.bf.v[k]);
            const double gv = std::tanh(ag[k] + p.bg.v[k]);
            const double ov = sigmoid(ao[k] + p.bo.v[k]);
            const double cv = fv * c_prev[k] + iv * gv;
            const double tcv = std::tanh(cv);
            h[k] = ov * tcv;
            c_prev[k] = cv;
            if (trace) {
                trace->i[t][k] = iv;
                trace->f[t][k] = fv;
                trace->g[t][k] = gv;
                trace->o[t][k] = ov;
                trace->c[t][k] = cv;
                trace->tc[t][k] = tcv;
                trace->h[t][k] = h[k];
            }
        }
        h_prev = h;
    }
    return hs;
}

void lstm_backward(const LstmParams& p, const Seq& input, const LstmTrace& trace,
                   const Seq& upstream, LstmParams& grads, Seq* input_grads) {
    check_input(input, p.in, "lstm_backward");
    const std::size_t T = input.size();
    const int H = p.hidden;
    if (upstream.size() != T) throw ShapeError("lstm_backward: upstream length mismatch");
    for (const auto& u : upstream)
        if (static_cast<int>(u.size()) != H) throw ShapeError("lstm_backward: upstream dim mismatch");
    if (input_grads && input_grads->size() != T)
        throw ShapeError("lstm_backward: input_grads length mismatch");

    std::vector<double> dh_next(H, 0.0), dc_next(H, 0.0);
    std::vector<double> dai(H), daf(H), dag(H), dao(H);
    const std::vector<double> zeros(H, 0.0);
    for (std::size_t ti = T; ti-- > 0;) {
        const double* c_prev = ti > 0 ? trace.c[ti - 1].data() : zeros.data();
        const double* h_prev = ti > 0 ? trace.h[ti - 1].data() : zeros.data();
        for (int k = 0; k < H; ++k) {
            const double dh = upstream[ti][k] + dh_next[k];
            const double iv = trace.i[ti][k], fv = trace.f[ti][k], gv = trace.g[ti][k],
                         ov = trace.o[ti][k], tcv = trace.tc[ti][k];
            const double dov = dh * tcv;
            dao[k] = dov * ov * (1.0 - ov);
            const double dc = dc_next[k] + dh * ov * (1.0 - tcv * tcv);
            dai[k] = dc * gv * iv * (1.0 - iv);
            daf[k] = dc * c_prev[k] * fv * (1.0 - fv);
            dag[k] = dc * iv * (1.0 - gv * gv);
            dc_next[k] = dc * fv;
        }
        const double* x = input[ti].data();
        outer_add(grads.Wi, dai.data(), x);
        outer_add(grads.Wf, daf.data(), x);
        outer_add(grads.Wg, dag.data(), x);
        outer_add(grads.Wo, dao.data(), x);
        outer_add(grads.Ui, dai.data(), h_prev);
        outer_add(grads.Uf, daf.data(), h_prev);
        outer_add(grads.Ug, dag.data(), h_prev);
        outer_add(grads.Uo, dao.data(), h_prev);
        for (int k = 0; k < H; ++k) {
            grads.bi.v[k] += dai[k];
            grads.bf.v[k] += daf[k];
            grads.bg.v[k] += dag[k];
            grads.bo.v[k] += dao[k];
        }
        std::fill(dh_next.begin(), dh_next.end(), 0.0);
        matvec_transpose_add(p.Ui, dai.data(), dh_next.data());
        matvec_transpose_add(p.Uf, daf.data(), dh_next.data());
        matvec_transpose_add(p.Ug, dag.data(), dh_next.data());
        matvec_transpose_add(p.Uo, dao.data(), dh_next.data());
        if (input_grads) {
            double* dx = (*input_grads)[ti].data();
            matvec_transpose_add(p.Wi, dai.data(), dx);
            matvec_transpose_add(p.Wf, daf.data(), dx);
            matvec_transpose_add(p.Wg, dag.data(), dx);
            matvec_transpose_add(p.Wo, dao.data(), dx);
        }
    }
}

Seq bilstm_forward(const BiLstmParams& p, const Seq& input, BiLstmTrace* trace) {
    if (p.fwd.hidden != p.bwd.hidden) throw ShapeError("bilstm: direction hidden sizes differ");
    const std::size_t T = input.size();
    const int H = p.hidden();
    const Seq rev_input = reversed(input);
    const Seq hf = lstm_forward(p.fwd, input, trace ? &trace->fwd : nullptr);
    const Seq hb = lstm_forward(p.bwd, rev_input, trace ? &trace->bwd : nullptr);

    Seq out(T, std::vector<double>(2 * H));
    for (std::size_t t = 0; t < T; ++t) {
        std::copy(hf[t].begin(), hf[t].end(), out[t].begin());
        // hb is in processing order of the reversed input.
        std::copy(hb[T - 1 - t].begin(), hb[T - 1 - t].end(), out[t].begin() + H);
    }
    return out;
}

void bilstm_backward(const BiLstmParams& p, const Seq& input, const BiLstmTrace& trace,
                     const Seq& upstream, BiLstmParams& grads, Seq* input_grads) {
    const std::size_t T = input.size();
    const int H = p.hidden();
    if (upstream.size() != T) throw ShapeError("bilstm_backward: upstream length mismatch");
    for (const auto& u : upstream)
        if (static_cast<int>(u.size()) != 2 * H)
            throw ShapeError("bilstm_backward: upstream dim mismatch");

    Seq up_f(T, std::vector<double>(H)), up_b(T, std::vector<double>(H));
    for (std::size_t t = 0; t < T; ++t) {
        std::copy(upstream[t].begin(), upstream[t].begin() + H, up_f[t].begin());
        // Reverse to the backward direction's processing order.
        std::copy(upstream[t].begin() + H, upstream[t].end(), up_b[T - 1 - t].begin());
    }

    lstm_backward(p.fwd, input, trace.fwd, up_f, grads.fwd, input_grads);
    const Seq rev_input = reversed(input);
    if (!input_grads) {
        lstm_backward(p.bwd, rev_input, trace.bwd, up_b, grads.bwd, nullptr);
        return;
    }
    Seq rev_in_grads(T, std::vector<double>(p.in(), 0.0));
    lstm_backward(p.bwd, rev_input, trace.bwd, up_b, grads.bwd, &rev_in_grads);
    for (std::size_t t = 0; t < T; ++t) {
        double* dst = (*input_grads)[t].data();
        const double* src = rev_in_grads[T - 1 - t].data();
        for (int k = 0; k < p.in(); ++k) dst[k] += src[k];
    }
}

BiLstmStack BiLstmStack::zeros(int in, int hidden, int depth) {
    BiLstmStack s;
    for (int l = 0; l < depth; ++l)
        s.layers.push_back(BiLstmParams::zeros(l == 0 ? in : 2 * hidden, hidden));
    return s;
}

BiLstmStack BiLstmStack::init(int in, int hidden, int depth, Rng& rng) {
    BiLstmStack s;
    for (int l = 0; l < depth; ++l)
        s.layers.push_back(BiLstmParams::init(l == 0 ? in : 2 * hidden, hidden, rng));
    return s;
}

Seq stack_forward(const BiLstmStack& stack, const Seq& input, StackTrace* trace) {
    if (stack.layers.empty()) throw ShapeError("stack_forward: empty stack");
    Seq cur = input;
    if (trace) {
        trace->layers.assign(stack.layers.size(), BiLstmTrace{});
        trace->inputs.clear();
    }
    for (std::size_t l = 0; l < stack.layers.size(); ++l) {
        if (trace) trace->inputs.push_back(cur);
        cur = bilstm_forward(stack.layers[l], cur, trace ? &trace->layers[l] : nullptr);
    }
    return cur;
}

void stack_backward(const BiLstmStack& stack, const StackTrace& trace, const Seq& upstream,
                    BiLstmStack& grads, Seq* input_grads) {
    if (grads.layers.size() != stack.layers.size())
        throw ShapeError("stack_backward: grads shape mismatch");
    Seq up = upstream;
    for (std::size_t l = stack.layers.size(); l-- > 0;) {
        const bool want_input = l > 0 || input_grads != nullptr;
        Seq down;
        if (want_input)
            down.assign(trace.inputs[l].size(),
                        std::vector<double>(stack.layers[l].in(), 0.0));
        bilstm_backward(stack.layers[l], trace.inputs[l], trace.layers[l], up, grads.layers[l],
                        want_input ? &down : nullptr);
        if (l == 0) {
            if (input_grads) *input_grads = std::move(down);
        } else {
            up = std::move(down);
        }
    }
}

}  // namespace swipegan
