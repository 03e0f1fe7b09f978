#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "swipegan/error.hpp"
#include "swipegan/rng.hpp"

namespace swipegan {

// Row-major dense matrix of doubles. Biases are stored as n x 1 matrices so
// every trainable parameter goes through the same update/serialization path.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> v;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, 0.0) {}

    double& operator()(int r, int c) { return v[static_cast<std::size_t>(r) * cols + c]; }
    double operator()(int r, int c) const { return v[static_cast<std::size_t>(r) * cols + c]; }

    double* row(int r) { return v.data() + static_cast<std::size_t>(r) * cols; }
    const double* row(int r) const { return v.data() + static_cast<std::size_t>(r) * cols; }

    std::size_t size() const { return v.size(); }
    void fill(double x) { std::fill(v.begin(), v.end(), x); }

    bool same_shape(const Matrix& o) const { return rows == o.rows && cols == o.cols; }
};

inline void require_shape(const Matrix& m, int rows, int cols, const char* what) {
    if (m.rows != rows || m.cols != cols)
        throw ShapeError(std::string(what) + ": expected " + std::to_string(rows) + "x" +
                         std::to_string(cols) + ", got " + std::to_string(m.rows) + "x" +
                         std::to_string(m.cols));
}

// y = W x
inline void matvec(const Matrix& W, const double* x, double* y) {
    for (int r = 0; r < W.rows; ++r) {
        const double* w = W.row(r);
        double acc = 0.0;
        for (int c = 0; c < W.cols; ++c) acc += w[c] * x[c];
        y[r] = acc;
    }
}

// y += W x
inline void matvec_add(const Matrix& W, const double* x, double* y) {
    for (int r = 0; r < W.rows; ++r) {
        const double* w = W.row(r);
        double acc = 0.0;
        for (int c = 0; c < W.cols; ++c) acc += w[c] * x[c];
        y[r] += acc;
    }
}

// dx += W^T dy
inline void matvec_transpose_add(const Matrix& W, const double* dy, double* dx) {
    for (int r = 0; r < W.rows; ++r) {
        const double* w = W.row(r);
        const double g = dy[r];
        if (g == 0.0) continue;
        for (int c = 0; c < W.cols; ++c) dx[c] += w[c] * g;
    }
}

// dW += dy x^T
inline void outer_add(Matrix& dW, const double* dy, const double* x) {
    for (int r = 0; r < dW.rows; ++r) {
        double* w = dW.row(r);
        const double g = dy[r];
        if (g == 0.0) continue;
        for (int c = 0; c < dW.cols; ++c) w[c] += g * x[c];
    }
}

inline void fill_uniform(Matrix& m, double radius, Rng& rng) {
    for (double& x : m.v) x = rng.uniform(-radius, radius);
}

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// In-place softmax with max subtraction; entries end up > 0 and sum to 1.
inline void softmax_inplace(double* x, int n) {
    double mx = x[0];
    for (int i = 1; i < n; ++i) mx = std::max(mx, x[i]);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        x[i] = std::exp(x[i] - mx);
        sum += x[i];
    }
    for (int i = 0; i < n; ++i) x[i] /= sum;
}

inline std::vector<double> softmax(const std::vector<double>& x) {
    if (x.empty()) throw ShapeError("softmax: empty input");
    std::vector<double> y = x;
    softmax_inplace(y.data(), static_cast<int>(y.size()));
    return y;
}

// y = W x + b with b stored as a column.
inline void dense_forward(const Matrix& W, const Matrix& b, const double* x, double* y) {
    matvec(W, x, y);
    for (int r = 0; r < W.rows; ++r) y[r] += b.v[r];
}

inline std::vector<double> mean_pool(const std::vector<std::vector<double>>& seq) {
    if (seq.empty()) throw ShapeError("mean_pool: empty sequence");
    std::vector<double> out(seq[0].size(), 0.0);
    for (const auto& h : seq) {
        if (h.size() != out.size()) throw ShapeError("mean_pool: ragged sequence");
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += h[i];
    }
    const double inv = 1.0 / static_cast<double>(seq.size());
    for (double& x : out) x *= inv;
    return out;
}

}  // namespace swipegan
