#pragma once

// Inner loops behind the coefficients and the permutation null. All fast
// kernels take ranks already laid out in ascending X order (position p holds
// the Y-rank of the p-th smallest x), which is also the layout of a null
// replicate. The `reference` namespace holds direct transcriptions of the
// definitions; they are slow and exist so tests and the benchmark can check
// the fast kernels against them.

#include <cstddef>
#include <cstdint>
#include <span>

#include "xicor/ranks.hpp"

namespace xicor::kernels {

struct RightSums {
    /// sum_p sum_{m<=M} min(rs[p], rs[g_m(p)])
    std::int64_t min_sum = 0;
    /// Same neighbor pairs with max; self pairs contribute rs[p].
    std::int64_t max_sum = 0;
};

/// Min/max sums over the M right neighbors g_m(p) = p + m (self when p + m
/// runs past the end). O(nM) with a vectorized inner loop; max_sum costs O(M)
/// extra through prefix sums.
RightSums right_neighbor_sums(std::span<const Rank> rs, std::size_t M);

/// Min-sum of the reflected ranks n + 1 - rs[p], read off the max-sum.
constexpr std::int64_t reflected_min_sum(const RightSums& sums, std::size_t n, std::size_t M) {
    return static_cast<std::int64_t>(n * M * (n + 1)) - sums.max_sum;
}

/// Exact value of -2 + 6 S / ((n+1)(nM + M(M+1)/4)) with one rounding step.
double xi_from_min_sum(std::int64_t min_sum, std::size_t n, std::size_t M);

/// sum_p sum_{q in N_M(p)} min(rs[p], rs[q]) where N_M(p) are the M positions
/// closest to p, ties in distance going right.
std::int64_t symmetric_min_sum(std::span<const Rank> rs, std::size_t M);

/// Hoeffding's D for X ranks 1..n (implicit) and Y ranks rs. Fenwick-tree
/// quadrant counts, O(n log n). Requires n >= 5.
double hoeffding_d(std::span<const Rank> rs);

/// sum_p |rs[p+1] - rs[p]|, the numerator of Chatterjee's coefficient.
std::int64_t adjacent_abs_diff_sum(std::span<const Rank> rs);

namespace reference {

/// sum_i sum_m min(R_i, R_{j_m(i)}) with every j_m(i) resolved through
/// right_neighbor.
std::int64_t right_min_sum(const RankVector& r, const XOrder& ord, std::size_t M);

/// Neighbor sets built by sorting every other point by X-rank distance,
/// right before left at equal distance, and taking the first M.
std::int64_t symmetric_min_sum(const RankVector& r, const XOrder& ord, std::size_t M);

/// O(n^2) quadrant counts; same formula as the fast path.
double hoeffding_d(const RankVector& rx, const RankVector& ry);

} // namespace reference

} // namespace xicor::kernels
