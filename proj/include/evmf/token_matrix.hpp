#ifndef EVMF_TOKEN_MATRIX_HPP_
#define EVMF_TOKEN_MATRIX_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "evmf/errors.hpp"

namespace evmf {

// A set of n embedding vectors of dimension d, stored row-major in f32,
// plus one weight per row. Weights are merge multiplicities: a raw token
// carries weight 1; a merged token carries the summed weight of everything
// averaged into it. Values are stored in f32; all accumulation (means,
// norms, dot products) runs in f64.
class TokenMatrix {
public:
    TokenMatrix() = default;

    // n x d zeros, all weights 1.
    TokenMatrix(std::size_t n, std::size_t d)
        : n_(n), d_(d), values_(n * d, 0.0f), weights_(n, 1.0) {}

    TokenMatrix(std::size_t n, std::size_t d, std::vector<float> values)
        : n_(n), d_(d), values_(std::move(values)), weights_(n, 1.0) {
        if (values_.size() != n * d)
            throw ShapeMismatch("value buffer does not match n*d");
    }

    TokenMatrix(std::size_t n, std::size_t d, std::vector<float> values,
                std::vector<double> weights)
        : n_(n), d_(d), values_(std::move(values)), weights_(std::move(weights)) {
        if (values_.size() != n_ * d_ || weights_.size() != n_)
            throw ShapeMismatch("value/weight buffers do not match n*d");
    }

    std::size_t rows() const { return n_; }
    std::size_t dim() const { return d_; }
    bool empty() const { return n_ == 0; }

    std::span<const float> row(std::size_t i) const {
        return {values_.data() + i * d_, d_};
    }
    std::span<float> row(std::size_t i) {
        return {values_.data() + i * d_, d_};
    }

    double weight(std::size_t i) const { return weights_[i]; }
    void set_weight(std::size_t i, double w) { weights_[i] = w; }

    double total_weight() const {
        double s = 0.0;
        for (double w : weights_) s += w;
        return s;
    }

    const std::vector<float>& values() const { return values_; }
    const std::vector<double>& weights() const { return weights_; }

    void append_row(std::span<const float> v, double w) {
        if (d_ == 0) d_ = v.size();
        if (v.size() != d_) throw ShapeMismatch("appended row has wrong dim");
        values_.insert(values_.end(), v.begin(), v.end());
        weights_.push_back(w);
        ++n_;
    }

    // Appends all rows of `other` (same d), keeping weights.
    void append(const TokenMatrix& other);

private:
    std::size_t n_ = 0;
    std::size_t d_ = 0;
    std::vector<float> values_;
    std::vector<double> weights_;
};

namespace detail {

// Canonical f64 dot product over f32 rows: eight independent lane
// accumulators (lane = index mod 8), combined left to right. Every cosine
// in the engine and in the reference oracles goes through this definition,
// so the two routes agree bit for bit.
double dot_f64(const float* a, const float* b, std::size_t d);

// sqrt of the canonical self dot.
double row_norm(const float* a, std::size_t d);

}  // namespace detail

// Row norm below which a token counts as degenerate.
inline constexpr double kZeroNormEps = 1e-12;

// Pairwise cosine similarity, row-major n_a x n_b, entries in [-1, 1].
// Throws ZeroNormToken if any row of either side has norm < kZeroNormEps.
std::vector<double> cosine_similarity_matrix(const TokenMatrix& a,
                                             const TokenMatrix& b);

// Unweighted mean of all rows, f64.
std::vector<double> mean_token(const TokenMatrix& m);

struct GridShape {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t count() const { return rows * cols; }
};

// (sqrt(n), sqrt(n)) when n is a perfect square, else (1, n).
GridShape infer_grid(std::size_t n);

// Most-square factorization with rows <= cols: rows is the largest divisor
// of n not exceeding floor(sqrt(n)).  128 -> 8x16.
GridShape factor_most_square(std::size_t n);

// Adaptive average pooling over a row-major grid. Cell boundaries are
// near-uniform (band i covers rows [i*R/OR, (i+1)*R/OR)), so cell sizes
// differ by at most one row/column. Each output token is the unweighted
// mean of its cell; its weight is the summed input weight of the cell, so
// total weight is conserved.
TokenMatrix pool_tokens(const TokenMatrix& frame, GridShape in_grid,
                        GridShape out_grid);

// Same, factoring out_n via factor_most_square. Falls back to flat 1 x n
// pooling when the factored grid does not fit inside in_grid.
TokenMatrix pool_tokens(const TokenMatrix& frame, GridShape in_grid,
                        std::size_t out_n);

}  // namespace evmf

#endif  // EVMF_TOKEN_MATRIX_HPP_
