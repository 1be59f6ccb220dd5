#include "evmf/token_matrix.hpp"

#include <cmath>

namespace evmf {

void TokenMatrix::append(const TokenMatrix& other) {
    if (d_ == 0) d_ = other.dim();
    if (other.dim() != d_)
        throw ShapeMismatch("appended matrix has wrong dim");
    values_.insert(values_.end(), other.values_.begin(), other.values_.end());
    weights_.insert(weights_.end(), other.weights_.begin(), other.weights_.end());
    n_ += other.n_;
}

namespace detail {

double dot_f64(const float* a, const float* b, std::size_t d) {
    double acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    std::size_t i = 0;
    for (; i + 8 <= d; i += 8) {
        for (std::size_t j = 0; j < 8; ++j)
            acc[j] += static_cast<double>(a[i + j]) * static_cast<double>(b[i + j]);
    }
    for (; i < d; ++i)
        acc[i % 8] += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    double s = 0.0;
    for (std::size_t j = 0; j < 8; ++j) s += acc[j];
    return s;
}

double row_norm(const float* a, std::size_t d) {
    return std::sqrt(dot_f64(a, a, d));
}

}  // namespace detail

namespace {

std::vector<double> row_norms_checked(const TokenMatrix& m, const char* side) {
    std::vector<double> norms(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        norms[i] = detail::row_norm(m.row(i).data(), m.dim());
        if (norms[i] < kZeroNormEps)
            throw ZeroNormToken(std::string("row ") + std::to_string(i) +
                                " of " + side + " has (near) zero norm");
    }
    return norms;
}

}  // namespace

std::vector<double> cosine_similarity_matrix(const TokenMatrix& a,
                                             const TokenMatrix& b) {
    if (a.dim() != b.dim())
        throw ShapeMismatch("cosine: dimension mismatch");
    const std::vector<double> na = row_norms_checked(a, "a");
    const std::vector<double> nb = row_norms_checked(b, "b");
    std::vector<double> out(a.rows() * b.rows());
    for (std::size_t p = 0; p < a.rows(); ++p) {
        const float* ap = a.row(p).data();
        double* out_row = out.data() + p * b.rows();
        for (std::size_t q = 0; q < b.rows(); ++q)
            out_row[q] = detail::dot_f64(ap, b.row(q).data(), a.dim()) / (na[p] * nb[q]);
    }
    return out;
}

std::vector<double> mean_token(const TokenMatrix& m) {
    std::vector<double> mean(m.dim(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const float* r = m.row(i).data();
        for (std::size_t k = 0; k < m.dim(); ++k) mean[k] += r[k];
    }
    const double inv = 1.0 / static_cast<double>(m.rows());
    for (double& v : mean) v *= inv;
    return mean;
}

GridShape infer_grid(std::size_t n) {
    std::size_t r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    if (r * r == n) return {r, r};
    return {1, n};
}

GridShape factor_most_square(std::size_t n) {
    std::size_t best = 1;
    for (std::size_t r = 1; r * r <= n; ++r)
        if (n % r == 0) best = r;
    return {best, n / best};
}

TokenMatrix pool_tokens(const TokenMatrix& frame, GridShape in_grid,
                        GridShape out_grid) {
    if (in_grid.count() != frame.rows())
        throw InvalidGrid("input grid does not tile the frame");
    if (out_grid.rows < 1 || out_grid.cols < 1)
        throw InvalidGrid("output grid is empty");
    if (out_grid.rows > in_grid.rows || out_grid.cols > in_grid.cols)
        throw InvalidGrid("output grid exceeds input grid");

    const std::size_t d = frame.dim();
    const std::size_t out_n = out_grid.count();
    std::vector<float> values(out_n * d);
    std::vector<double> weights(out_n);
    std::vector<double> acc(d);

    for (std::size_t oi = 0; oi < out_grid.rows; ++oi) {
        const std::size_t r0 = oi * in_grid.rows / out_grid.rows;
        const std::size_t r1 = (oi + 1) * in_grid.rows / out_grid.rows;
        for (std::size_t oj = 0; oj < out_grid.cols; ++oj) {
            const std::size_t c0 = oj * in_grid.cols / out_grid.cols;
            const std::size_t c1 = (oj + 1) * in_grid.cols / out_grid.cols;
            std::fill(acc.begin(), acc.end(), 0.0);
            double cell_weight = 0.0;
            std::size_t cell_size = 0;
            for (std::size_t r = r0; r < r1; ++r) {
                for (std::size_t c = c0; c < c1; ++c) {
                    const std::size_t idx = r * in_grid.cols + c;
                    const float* src = frame.row(idx).data();
                    for (std::size_t k = 0; k < d; ++k) acc[k] += src[k];
                    cell_weight += frame.weight(idx);
                    ++cell_size;
                }
            }
            const std::size_t out_idx = oi * out_grid.cols + oj;
            const double inv = 1.0 / static_cast<double>(cell_size);
            float* dst = values.data() + out_idx * d;
            for (std::size_t k = 0; k < d; ++k)
                dst[k] = static_cast<float>(acc[k] * inv);
            weights[out_idx] = cell_weight;
        }
    }
    return TokenMatrix(out_n, d, std::move(values), std::move(weights));
}

TokenMatrix pool_tokens(const TokenMatrix& frame, GridShape in_grid,
                        std::size_t out_n) {
    if (out_n < 1) throw InvalidGrid("out_n must be >= 1");
    if (out_n > frame.rows()) throw InvalidGrid("out_n exceeds frame size");
    GridShape out = factor_most_square(out_n);
    if (out.rows > in_grid.rows || out.cols > in_grid.cols) {
        in_grid = {1, frame.rows()};
        out = {1, out_n};
    }
    return pool_tokens(frame, in_grid, out);
}

}  // namespace evmf
