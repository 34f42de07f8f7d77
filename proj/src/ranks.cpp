#include "xicor/ranks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "xicor/errors.hpp"

namespace xicor {

TieError::TieError(std::size_t first, std::size_t second, double value)
    : Error("tied values " + std::to_string(value) + " at rows " + std::to_string(first + 1) +
            " and " + std::to_string(second + 1) +
            " (ties are not allowed; enable jitter to break them)"),
      first_(first), second_(second), value_(value) {}

NonFiniteError::NonFiniteError(std::size_t index)
    : Error("non-finite value at row " + std::to_string(index + 1)), index_(index) {}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : Error("line " + std::to_string(line) +
            (column ? ", column " + std::to_string(column) : std::string()) + ": " + what),
      line_(line), column_(column) {}

std::pair<double, double> Rng::normal_pair() noexcept {
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    return {u * f, v * f};
}

namespace {

void check_finite(std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) throw NonFiniteError(i);
    }
}

// (value, index) pairs sorted ascending; throws on the first adjacent tie.
std::vector<std::pair<double, std::uint32_t>> sorted_with_index(std::span<const double> values) {
    check_finite(values);
    std::vector<std::pair<double, std::uint32_t>> keyed(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        keyed[i] = {values[i], static_cast<std::uint32_t>(i)};
    }
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t p = 1; p < keyed.size(); ++p) {
        if (keyed[p].first == keyed[p - 1].first) {
            throw TieError(keyed[p - 1].second, keyed[p].second, keyed[p].first);
        }
    }
    return keyed;
}

std::vector<double> jitter_one(std::span<const double> v, Rng rng) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    double range = *hi - *lo;
    if (range == 0.0) range = std::max(std::abs(*lo), 1.0);
    const double width = 1e-9 * range;
    std::vector<double> out(v.begin(), v.end());
    for (auto& value : out) value += width * (2.0 * rng.uniform() - 1.0);
    return out;
}

} // namespace

Sample make_sample(std::vector<double> x, std::vector<double> y) {
    if (x.size() != y.size()) {
        throw SizeError("x and y lengths differ (" + std::to_string(x.size()) + " vs " +
                        std::to_string(y.size()) + ")");
    }
    if (x.size() < 2) throw SizeError("need at least 2 observations");
    check_finite(x);
    check_finite(y);
    return Sample{std::move(x), std::move(y)};
}

Sample jitter_ties(const Sample& s, std::uint64_t seed) {
    return Sample{jitter_one(s.x, Rng::for_stream(seed, 0, 0)),
                  jitter_one(s.y, Rng::for_stream(seed, 0, 1))};
}

void check_neighbor_count(std::size_t n, NeighborCount M) {
    if (M.value < 1 || M.value + 1 > n) {
        throw MRangeError("M must satisfy 1 <= M <= n-1 (M=" + std::to_string(M.value) +
                          ", n=" + std::to_string(n) + ")");
    }
}

RankVector RankVector::from_permutation(std::vector<Rank> ranks) {
    std::vector<bool> seen(ranks.size() + 1, false);
    for (Rank r : ranks) {
        if (r < 1 || static_cast<std::size_t>(r) > ranks.size() || seen[r]) {
            throw Error("rank vector is not a permutation of 1..n");
        }
        seen[r] = true;
    }
    return RankVector(std::move(ranks));
}

XOrder XOrder::identity(std::size_t n) {
    XOrder ord;
    ord.order.resize(n);
    std::iota(ord.order.begin(), ord.order.end(), 0u);
    ord.pos = ord.order;
    return ord;
}

RankVector compute_ranks(std::span<const double> values) {
    const auto keyed = sorted_with_index(values);
    std::vector<Rank> r(values.size());
    for (std::size_t p = 0; p < keyed.size(); ++p) {
        r[keyed[p].second] = static_cast<Rank>(p + 1);
    }
    return RankVector(std::move(r));
}

XOrder x_order(std::span<const double> x) {
    const auto keyed = sorted_with_index(x);
    XOrder ord;
    ord.order.resize(x.size());
    ord.pos.resize(x.size());
    for (std::size_t p = 0; p < keyed.size(); ++p) {
        ord.order[p] = keyed[p].second;
        ord.pos[keyed[p].second] = static_cast<std::uint32_t>(p);
    }
    return ord;
}

std::size_t right_neighbor(const XOrder& ord, std::size_t i, std::size_t m) {
    if (i >= ord.size()) {
        throw IndexError("index " + std::to_string(i) + " out of range for n=" +
                         std::to_string(ord.size()));
    }
    const std::size_t p = ord.pos[i] + m;
    return p < ord.size() ? ord.order[p] : i;
}

RankVector reflect_ranks(const RankVector& r) {
    const auto top = static_cast<Rank>(r.size() + 1);
    std::vector<Rank> out(r.size());
    std::transform(r.r_.begin(), r.r_.end(), out.begin(), [top](Rank v) { return top - v; });
    return RankVector(std::move(out));
}

void shuffle_ranks(Rng& rng, std::span<Rank> ranks) {
    for (std::size_t i = ranks.size(); i > 1; --i) {
        const std::size_t j = rng.below(i);
        std::swap(ranks[i - 1], ranks[j]);
    }
}

RankVector random_rank_permutation(Rng& rng, std::size_t n) {
    std::vector<Rank> r(n);
    std::iota(r.begin(), r.end(), Rank{1});
    shuffle_ranks(rng, r);
    return RankVector(std::move(r));
}

std::vector<Rank> ranks_in_x_order(const RankVector& r, const XOrder& ord) {
    std::vector<Rank> out(ord.size());
    for (std::size_t p = 0; p < ord.size(); ++p) out[p] = r[ord.order[p]];
    return out;
}

} // namespace xicor
