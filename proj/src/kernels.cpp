#include "xicor/kernels.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <utility>
#include <vector>

namespace xicor::kernels {

namespace {

using Wide = Int128;

constexpr Wide kExactDoubleLimit = Wide{1} << 53;

// num / den rounded once. Both sides are exact integers; when they fit in a
// double mantissa the IEEE quotient is the correctly rounded rational.
double exact_ratio(Wide num, Wide den) {
    const Wide a = num < 0 ? -num : num;
    if (a < kExactDoubleLimit && den < kExactDoubleLimit) {
        return static_cast<double>(static_cast<std::int64_t>(num)) /
               static_cast<double>(static_cast<std::int64_t>(den));
    }
    return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
}

} // namespace

RightSums right_neighbor_sums(std::span<const Rank> rs, std::size_t M) {
    const std::size_t n = rs.size();
    const Rank* r = rs.data();
    RightSums out;
    const std::int64_t total = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n + 1) / 2;
    std::int64_t prefix = 0; // sum of r[0..m)
    std::int64_t suffix = 0; // sum of r[n-m..n)
    std::int64_t self = 0;
    for (std::size_t m = 1; m <= M && m <= n; ++m) {
        prefix += r[m - 1];
        suffix += r[n - m];
        self += suffix;
        std::int64_t acc = 0;
        const std::size_t len = n - m;
#pragma omp simd reduction(+ : acc)
        for (std::size_t p = 0; p < len; ++p) {
            acc += std::min(r[p], r[p + m]);
        }
        out.min_sum += acc;
        // min + max over the pairs equals the sum of both endpoints.
        out.max_sum += (total - suffix) + (total - prefix) - acc;
    }
    // g_m(p) = p for the last m positions; M >= n only arises in the
    // reference tests and is handled by the same rule.
    for (std::size_t m = n + 1; m <= M; ++m) self += total;
    out.min_sum += self;
    out.max_sum += self;
    return out;
}

double xi_from_min_sum(std::int64_t min_sum, std::size_t n, std::size_t M) {
    // -2 + 24 S / D with D = (n+1)(4nM + M(M+1)).
    const Wide wn = static_cast<Wide>(n);
    const Wide wm = static_cast<Wide>(M);
    const Wide den = (wn + 1) * (4 * wn * wm + wm * (wm + 1));
    const Wide num = 24 * static_cast<Wide>(min_sum) - 2 * den;
    return exact_ratio(num, den);
}

std::int64_t symmetric_min_sum(std::span<const Rank> rs, std::size_t M) {
    const std::size_t n = rs.size();
    const Rank* r = rs.data();
    const std::size_t want_right = (M + 1) / 2;
    const std::size_t want_left = M / 2;
    std::int64_t total = 0;
    for (std::size_t p = 0; p < n; ++p) {
        const std::size_t avail_right = n - 1 - p;
        const std::size_t avail_left = p;
        std::size_t right = want_right;
        std::size_t left = want_left;
        if (avail_right < right) {
            right = avail_right;
            left = M - right;
        } else if (avail_left < left) {
            left = avail_left;
            right = M - left;
        }
        const Rank rp = r[p];
        std::int64_t acc = 0;
#pragma omp simd reduction(+ : acc)
        for (std::size_t q = p - left; q < p; ++q) acc += std::min(rp, r[q]);
#pragma omp simd reduction(+ : acc)
        for (std::size_t q = p + 1; q <= p + right; ++q) acc += std::min(rp, r[q]);
        total += acc;
    }
    return total;
}

namespace {

double hoeffding_from_counts(std::span<const Rank> rx, std::span<const Rank> ry,
                             std::span<const std::int64_t> below) {
    const Wide n = static_cast<Wide>(rx.size());
    Wide a = 0, b = 0, c = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        const Wide R = rx[i], S = ry[i], q = below[i];
        a += (R - 1) * (R - 2) * (S - 1) * (S - 2);
        b += (R - 2) * (S - 2) * q;
        c += q * (q - 1);
    }
    const Wide num = a - 2 * (n - 2) * b + (n - 2) * (n - 3) * c;
    const Wide den = n * (n - 1) * (n - 2) * (n - 3) * (n - 4);
    return exact_ratio(num, den);
}

} // namespace

double hoeffding_d(std::span<const Rank> rs) {
    const std::size_t n = rs.size();
    std::vector<std::int64_t> tree(n + 1, 0);
    std::vector<std::int64_t> below(n);
    std::vector<Rank> rx(n);
    for (std::size_t p = 0; p < n; ++p) {
        std::int64_t count = 0;
        for (std::size_t k = static_cast<std::size_t>(rs[p]) - 1; k > 0; k &= k - 1) {
            count += tree[k];
        }
        below[p] = count;
        for (std::size_t k = static_cast<std::size_t>(rs[p]); k <= n; k += k & (~k + 1)) {
            ++tree[k];
        }
        rx[p] = static_cast<Rank>(p + 1);
    }
    return hoeffding_from_counts(rx, rs, below);
}

std::int64_t adjacent_abs_diff_sum(std::span<const Rank> rs) {
    std::int64_t acc = 0;
    for (std::size_t p = 1; p < rs.size(); ++p) acc += std::abs(rs[p] - rs[p - 1]);
    return acc;
}

namespace reference {

std::int64_t right_min_sum(const RankVector& r, const XOrder& ord, std::size_t M) {
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        for (std::size_t m = 1; m <= M; ++m) {
            acc += std::min(r[i], r[right_neighbor(ord, i, m)]);
        }
    }
    return acc;
}

std::int64_t symmetric_min_sum(const RankVector& r, const XOrder& ord, std::size_t M) {
    const std::size_t n = r.size();
    std::int64_t acc = 0;
    std::vector<std::pair<std::size_t, int>> keys;
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t p = ord.pos[i];
        candidates.clear();
        for (std::size_t q = 0; q < n; ++q) {
            if (q != p) candidates.push_back(q);
        }
        // Sort by distance; at equal distance the right-hand point comes first.
        auto key = [p](std::size_t q) {
            const std::size_t dist = q > p ? q - p : p - q;
            return std::pair<std::size_t, int>{dist, q > p ? 0 : 1};
        };
        std::sort(candidates.begin(), candidates.end(),
                  [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
        for (std::size_t k = 0; k < M && k < candidates.size(); ++k) {
            acc += std::min(r[i], r[ord.order[candidates[k]]]);
        }
    }
    return acc;
}

double hoeffding_d(const RankVector& rx, const RankVector& ry) {
    const std::size_t n = rx.size();
    std::vector<std::int64_t> below(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (rx[j] < rx[i] && ry[j] < ry[i]) ++below[i];
        }
    }
    return hoeffding_from_counts(rx.values(), ry.values(), below);
}

} // namespace reference

} // namespace xicor::kernels
