#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "xicor/errors.hpp"
#include "xicor/random.hpp"
#include "xicor/ranks.hpp"

using namespace xicor;

namespace {

std::vector<Rank> as_vec(const RankVector& r) { return {r.values().begin(), r.values().end()}; }

std::vector<std::uint32_t> u32(std::initializer_list<std::uint32_t> v) { return v; }

} // namespace

TEST_CASE("ranks of distinct values") {
    const std::vector<double> v{3.1, 1.2, 2.7};
    CHECK(as_vec(compute_ranks(v)) == std::vector<Rank>{3, 1, 2});
    const std::vector<double> one{5.0};
    CHECK(as_vec(compute_ranks(one)) == std::vector<Rank>{1});
}

TEST_CASE("tie is reported with both indices") {
    const std::vector<double> v{1.0, 1.0, 2.0};
    try {
        (void)compute_ranks(v);
        FAIL("expected TieError");
    } catch (const TieError& e) {
        CHECK(e.first() == 0);
        CHECK(e.second() == 1);
        CHECK(e.value() == 1.0);
    }
    const std::vector<double> w{4.0, 2.0, 7.0, 2.0};
    try {
        (void)compute_ranks(w);
        FAIL("expected TieError");
    } catch (const TieError& e) {
        CHECK(e.first() == 1);
        CHECK(e.second() == 3);
    }
}

TEST_CASE("non-finite values are rejected") {
    const std::vector<double> v{1.0, std::numeric_limits<double>::quiet_NaN()};
    CHECK_THROWS_AS((void)compute_ranks(v), NonFiniteError);
    CHECK_THROWS_AS(make_sample({1.0, 2.0}, {0.0, INFINITY}), NonFiniteError);
    CHECK_THROWS_AS(make_sample({1.0, 2.0}, {0.0}), SizeError);
    CHECK_THROWS_AS(make_sample({1.0}, {0.0}), SizeError);
}

TEST_CASE("x order and inverse") {
    const std::vector<double> x{2.0, 0.5, 1.5};
    const XOrder ord = x_order(x);
    CHECK(ord.order == u32({1, 2, 0}));
    CHECK(ord.pos == u32({2, 0, 1}));
    const std::vector<double> inc{1, 2, 3};
    CHECK(x_order(inc).order == u32({0, 1, 2}));
    const std::vector<double> one{9.9};
    CHECK(x_order(one).order == u32({0}));
    CHECK(XOrder::identity(4).order == u32({0, 1, 2, 3}));
    CHECK(XOrder::identity(4).pos == u32({0, 1, 2, 3}));
}

TEST_CASE("right neighbors") {
    const std::vector<double> x{2.0, 0.5, 1.5};
    const XOrder ord = x_order(x);
    CHECK(right_neighbor(ord, 1, 1) == 2);
    CHECK(right_neighbor(ord, 0, 1) == 0);
    CHECK(right_neighbor(ord, 1, 2) == 0);
    const std::vector<double> inc{1, 2, 3};
    CHECK(right_neighbor(x_order(inc), 0, 2) == 2);
    CHECK_THROWS_AS((void)right_neighbor(ord, 3, 1), IndexError);
}

TEST_CASE("exactly m points fall back to themselves") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.below(40);
        std::vector<double> x(n);
        for (auto& v : x) v = rng.normal();
        const XOrder ord = x_order(x);
        for (std::size_t m = 1; m < n; ++m) {
            std::size_t selfs = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t j = right_neighbor(ord, i, m);
                if (j == i) {
                    ++selfs;
                } else {
                    CHECK(x[j] > x[i]);
                    std::size_t between = 0;
                    for (std::size_t k = 0; k < n; ++k) between += (x[k] > x[i] && x[k] < x[j]);
                    CHECK(between == m - 1);
                }
            }
            CHECK(selfs == m);
        }
    }
}

TEST_CASE("reflection") {
    CHECK(as_vec(reflect_ranks(RankVector::from_permutation({1, 2, 3}))) ==
          std::vector<Rank>{3, 2, 1});
    CHECK(as_vec(reflect_ranks(RankVector::from_permutation({2, 1}))) == std::vector<Rank>{1, 2});
    Rng rng(5);
    for (int t = 0; t < 100; ++t) {
        const auto r = random_rank_permutation(rng, 1 + rng.below(30));
        CHECK(reflect_ranks(reflect_ranks(r)) == r);
    }
}

TEST_CASE("from_permutation validates") {
    CHECK_THROWS_AS(RankVector::from_permutation({1, 1, 3}), Error);
    CHECK_THROWS_AS(RankVector::from_permutation({0, 1}), Error);
    CHECK_NOTHROW(RankVector::from_permutation({2, 3, 1}));
}

TEST_CASE("random permutations are seeded and valid") {
    Rng a(99), b(99);
    CHECK(as_vec(random_rank_permutation(a, 1)) == std::vector<Rank>{1});
    const auto pa = random_rank_permutation(a, 50);
    const auto pb = random_rank_permutation(b, 1);
    const auto pb2 = random_rank_permutation(b, 50);
    (void)pb;
    CHECK(pa == pb2);
    auto sorted = as_vec(pa);
    std::sort(sorted.begin(), sorted.end());
    std::vector<Rank> expect(50);
    std::iota(expect.begin(), expect.end(), 1);
    CHECK(sorted == expect);
}

TEST_CASE("permutations of three are uniform") {
    Rng rng(2024);
    std::map<std::vector<Rank>, int> counts;
    const int draws = 60000;
    for (int i = 0; i < draws; ++i) ++counts[as_vec(random_rank_permutation(rng, 3))];
    REQUIRE(counts.size() == 6);
    double chi2 = 0;
    for (const auto& [perm, c] : counts) {
        const double f = static_cast<double>(c) / draws;
        CHECK(f >= 0.15);
        CHECK(f <= 0.185);
        const double e = draws / 6.0;
        chi2 += (c - e) * (c - e) / e;
    }
    // 5 degrees of freedom, 0.999 quantile.
    CHECK(chi2 < 20.52);
}

TEST_CASE("ranks are invariant under monotone maps") {
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        std::vector<double> v(30), w(30);
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = rng.normal();
            w[i] = std::exp(3.0 * v[i]) + 1.0;
        }
        CHECK(compute_ranks(v) == compute_ranks(w));
    }
}

TEST_CASE("ranks_in_x_order") {
    const std::vector<double> x{2.0, 0.5, 1.5};
    const std::vector<double> y{10.0, 30.0, 20.0};
    const auto out = ranks_in_x_order(compute_ranks(y), x_order(x));
    CHECK(out == std::vector<Rank>{3, 2, 1});
}

TEST_CASE("jitter breaks ties deterministically") {
    const Sample s = make_sample({1.0, 1.0, 2.0, 3.0}, {5.0, 6.0, 6.0, 7.0});
    const Sample a = jitter_ties(s, 7);
    const Sample b = jitter_ties(s, 7);
    CHECK(a.x == b.x);
    CHECK(a.y == b.y);
    CHECK_NOTHROW((void)compute_ranks(a.x));
    CHECK_NOTHROW((void)compute_ranks(a.y));
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(std::abs(a.x[i] - s.x[i]) <= 2e-9 * 2.0);
        CHECK(std::abs(a.y[i] - s.y[i]) <= 2e-9 * 2.0);
    }
}

TEST_CASE("neighbor count range") {
    CHECK_NOTHROW(check_neighbor_count(5, NeighborCount{4}));
    CHECK_THROWS_AS(check_neighbor_count(5, NeighborCount{5}), MRangeError);
    CHECK_THROWS_AS(check_neighbor_count(5, NeighborCount{0}), MRangeError);
}

TEST_CASE("derive_seed is injective on a grid") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t c = 0; c < 64; ++c)
        for (std::uint64_t r = 0; r < 256; ++r) seen.insert(derive_seed(42, c, r));
    CHECK(seen.size() == 64 * 256);
}

TEST_CASE("bounded integers and normals") {
    Rng rng(8);
    std::array<int, 7> hist{};
    for (int i = 0; i < 70000; ++i) ++hist[rng.below(7)];
    for (int h : hist) CHECK(std::abs(h - 10000) < 500);
    double s = 0, s2 = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        s += z;
        s2 += z * z;
    }
    CHECK(std::abs(s / n) < 0.01);
    CHECK(std::abs(s2 / n - 1.0) < 0.02);
}
