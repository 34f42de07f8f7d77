#pragma once

// Rank substrate shared by every statistic: coordinate ranks, the ascending
// X order, right-nearest-neighbor lookup and null permutation sampling.
//
// Indices in this API are 0-based. The m-th right neighbor j_m(i) of the
// mathematical (1-based) definition maps to right_neighbor(ord, i - 1, m) + 1.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "xicor/random.hpp"

namespace xicor {

using Rank = std::int32_t;

/// Paired observations (x_i, y_i).
struct Sample {
    std::vector<double> x;
    std::vector<double> y;

    std::size_t size() const noexcept { return x.size(); }
};

/// Checks equal lengths, n >= 2 and finiteness. Ties are checked later, when
/// a coordinate is ranked.
Sample make_sample(std::vector<double> x, std::vector<double> y);

/// Adds seeded uniform noise of half-width 1e-9 * range to each coordinate so
/// that tied values become distinct. Only used when the caller opts in.
Sample jitter_ties(const Sample& s, std::uint64_t seed);

/// Number of right neighbors M. Validated against n by each consumer.
struct NeighborCount {
    std::size_t value;
};

void check_neighbor_count(std::size_t n, NeighborCount M);

/// Ranks 1..n of one coordinate. Always a permutation of {1..n}.
class RankVector {
public:
    RankVector() = default;

    /// Validates that `ranks` is a permutation of 1..n.
    static RankVector from_permutation(std::vector<Rank> ranks);

    std::size_t size() const noexcept { return r_.size(); }
    Rank operator[](std::size_t i) const noexcept { return r_[i]; }
    std::span<const Rank> values() const noexcept { return r_; }

    friend bool operator==(const RankVector&, const RankVector&) = default;

private:
    explicit RankVector(std::vector<Rank> r) : r_(std::move(r)) {}

    friend RankVector compute_ranks(std::span<const double>);
    friend RankVector reflect_ranks(const RankVector&);
    friend RankVector random_rank_permutation(Rng&, std::size_t);

    std::vector<Rank> r_;
};

/// Ascending order of X. x[order[p]] is strictly increasing in p and pos is
/// the inverse permutation.
struct XOrder {
    std::vector<std::uint32_t> order;
    std::vector<std::uint32_t> pos;

    std::size_t size() const noexcept { return order.size(); }

    /// order = pos = (0, 1, ..., n-1); the layout of null replicates.
    static XOrder identity(std::size_t n);
};

/// r_i = #{j : values_j <= values_i}. Throws TieError for the first tied pair
/// in sorted order, NonFiniteError for NaN or infinity.
RankVector compute_ranks(std::span<const double> values);

XOrder x_order(std::span<const double> x);

/// Index of the m-th right neighbor of i in X order, or i itself when fewer
/// than m larger values exist.
std::size_t right_neighbor(const XOrder& ord, std::size_t i, std::size_t m);

/// r_i -> n + 1 - r_i.
RankVector reflect_ranks(const RankVector& r);

/// Uniform permutation of 1..n by Fisher-Yates.
RankVector random_rank_permutation(Rng& rng, std::size_t n);

/// In-place Fisher-Yates over an existing permutation buffer. Used by the
/// replicate loops to avoid reallocating.
void shuffle_ranks(Rng& rng, std::span<Rank> ranks);

/// Ranks re-laid out in X order: out[p] = r[order[p]].
std::vector<Rank> ranks_in_x_order(const RankVector& r, const XOrder& ord);

} // namespace xicor
