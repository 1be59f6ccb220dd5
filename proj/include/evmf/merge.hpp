#ifndef EVMF_MERGE_HPP_
#define EVMF_MERGE_HPP_

#include <cstddef>

#include "evmf/token_matrix.hpp"

namespace evmf {

// Bipartite soft-matching token merge. The larger of the two sets is A
// (ties go to `a`); every A token proposes its single best cosine match in
// B, and the r highest-similarity proposals are merged into their B
// centers, many-to-one allowed. A merged token is the weight-weighted mean
// of its group and carries the group's summed weight; unmatched tokens
// pass through unchanged. One pass can reach any target down to
// min(a.n, b.n); below that the partial result is split into even/odd
// index halves and the pass repeats, so any target >= 1 is reachable.
//
// Output has exactly `target` rows and conserves total weight. Throws
// InvalidTarget unless 1 <= target < a.n + b.n.
TokenMatrix tome_merge(const TokenMatrix& a, const TokenMatrix& b,
                       std::size_t target);

// Token-count-weighted timestamp of a merged pair:
//   (t_i * n_i + t_j * n_j) / (n_i + n_j).
// Always lies in [min(t_i, t_j), max(t_i, t_j)].
double merged_timestamp(double t_i, std::size_t n_i, double t_j,
                        std::size_t n_j);

}  // namespace evmf

#endif  // EVMF_MERGE_HPP_
