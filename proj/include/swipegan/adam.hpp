#pragma once

#include <cmath>
#include <vector>

#include "swipegan/matrix.hpp"

namespace swipegan {

// First/second moment accumulators, aligned with a fixed parameter list.
struct AdamState {
    std::vector<std::vector<double>> m, v;
    long t = 0;
};

struct AdamConfig {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

// One Adam update over a parameter list; lr = 0 leaves parameters unchanged.
inline void adam_step(const std::vector<Matrix*>& params, const std::vector<const Matrix*>& grads,
                      AdamState& state, double lr, const AdamConfig& cfg = {}) {
    if (params.size() != grads.size()) throw ShapeError("adam_step: parameter/gradient count mismatch");
    if (state.m.empty()) {
        state.m.resize(params.size());
        state.v.resize(params.size());
        for (std::size_t i = 0; i < params.size(); ++i) {
            state.m[i].assign(params[i]->size(), 0.0);
            state.v[i].assign(params[i]->size(), 0.0);
        }
    }
    if (state.m.size() != params.size()) throw ShapeError("adam_step: state size mismatch");

    ++state.t;
    const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.t));
    for (std::size_t i = 0; i < params.size(); ++i) {
        Matrix& p = *params[i];
        const Matrix& g = *grads[i];
        if (!p.same_shape(g)) throw ShapeError("adam_step: gradient shape mismatch");
        if (state.m[i].size() != p.size()) throw ShapeError("adam_step: state shape mismatch");
        auto& m = state.m[i];
        auto& v = state.v[i];
        for (std::size_t k = 0; k < p.size(); ++k) {
            m[k] = cfg.beta1 * m[k] + (1.0 - cfg.beta1) * g.v[k];
            v[k] = cfg.beta2 * v[k] + (1.0 - cfg.beta2) * g.v[k] * g.v[k];
            const double mhat = m[k] / bc1;
            const double vhat = v[k] / bc2;
            p.v[k] -= lr * mhat / (std::sqrt(vhat) + cfg.eps);
        }
    }
}

inline void adam_step(Matrix& param, const Matrix& grad, AdamState& state, double lr,
                      const AdamConfig& cfg = {}) {
    adam_step(std::vector<Matrix*>{&param}, std::vector<const Matrix*>{&grad}, state, lr, cfg);
}

}  // namespace swipegan
