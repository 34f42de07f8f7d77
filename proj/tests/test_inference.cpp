#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "xicor/errors.hpp"
#include "xicor/inference.hpp"
#include "xicor/power.hpp"
#include "xicor/random.hpp"

using namespace xicor;

namespace {

Sample independent(Rng& rng, std::size_t n) { return sample_rotation(rng, n, 0.0); }

} // namespace

TEST_CASE("p-value formula") {
    const std::vector<double> reps{1, 2, 3, 4, 5, 6, 7, 8, 9};
    const double p = permutation_p_value(10.0, reps);
    CHECK(p == 0.1);
    CHECK(p <= 0.2);
    CHECK_FALSE(p <= 0.05);
    CHECK(permutation_p_value(5.0, reps) == 6.0 / 10.0);
    CHECK(permutation_p_value(0.0, reps) == 1.0);
}

TEST_CASE("perfect dependence is rejected") {
    std::vector<double> x(200);
    std::iota(x.begin(), x.end(), 1.0);
    PermutationTestConfig cfg;
    cfg.B = 999;
    cfg.M = NeighborCount{20};
    cfg.seed = 42;
    const auto r = permutation_test(make_sample(x, x), cfg);
    CHECK(r.reject);
    CHECK(r.p_value == 1.0 / 1000.0);
    CHECK(r.statistic == extremal_bounds(200, NeighborCount{20}).upper);
    CHECK(r.method == "xi-pm");
    CHECK(r.M == 20u);
    CHECK(r.B == 999u);
    CHECK(r.seed == 42u);
}

TEST_CASE("permutation test is deterministic and worker independent") {
    Rng rng(1);
    const Sample s = sample_rotation(rng, 300, 0.2);
    for (auto method : {PermutationMethod::XiPM, PermutationMethod::SymmetricNN,
                        PermutationMethod::HoeffdingD}) {
        PermutationTestConfig cfg;
        cfg.B = 199;
        cfg.M = NeighborCount{5};
        cfg.seed = 9;
        cfg.method = method;
        const auto a = permutation_test(s, cfg);
        cfg.workers = 4;
        const auto b = permutation_test(s, cfg);
        CHECK(a == b);
        CHECK(null_replicates(300, cfg) == null_replicates(300, [&] {
                  auto c = cfg;
                  c.workers = 1;
                  return c;
              }()));
    }
}

TEST_CASE("size does not exceed alpha") {
    Rng rng(2);
    PermutationTestConfig cfg;
    cfg.B = 19;
    cfg.alpha = 0.1;
    cfg.M = NeighborCount{2};
    const int trials = 3000;
    int rejections = 0;
    for (int t = 0; t < trials; ++t) {
        cfg.seed = static_cast<std::uint64_t>(t) + 1000;
        rejections += permutation_test(independent(rng, 6), cfg).reject;
    }
    const double rate = static_cast<double>(rejections) / trials;
    CHECK(rate <= 0.1 + 3 * std::sqrt(0.09 / trials));
}

TEST_CASE("statistics of the identity replicate") {
    const std::vector<Rank> inc{1, 2, 3};
    CHECK(permutation_statistic(PermutationMethod::XiPM, inc, 1) == 4.0 / 7.0);
    const std::vector<Rank> dec{3, 2, 1};
    CHECK(permutation_statistic(PermutationMethod::XiPM, dec, 1) == 4.0 / 7.0);
}

TEST_CASE("asymptotic test") {
    Rng rng(3);
    const Sample s = independent(rng, 100);
    CHECK_THROWS_AS(asymptotic_test(s, NeighborCount{10}, 0.05), RegimeError);
    CHECK_NOTHROW(asymptotic_test(s, NeighborCount{10}, 0.05, true));
    const auto r = asymptotic_test(independent(rng, 10000), NeighborCount{5}, 0.05);
    CHECK(r.method == "xi-asymptotic");
    CHECK(r.M == 5u);
    CHECK(!r.B);
    const double z = std::sqrt(50000.0) * r.statistic / std::sqrt(0.4);
    CHECK(r.p_value == doctest::Approx(0.5 * std::erfc(z / std::sqrt(2.0))));
}

TEST_CASE("asymptotic p-value at the documented point") {
    const double z = std::sqrt(50000.0) * 0.01 / std::sqrt(0.4);
    CHECK(z == doctest::Approx(3.5355).epsilon(1e-4));
    CHECK(0.5 * std::erfc(z / std::sqrt(2.0)) == doctest::Approx(2.0e-4).epsilon(0.05));
}

TEST_CASE("asymptotic p-value is one half at zero") {
    // At n = 5, M = 1 a min-sum of 11 gives exactly zero.
    Rng rng(4);
    for (int t = 0; t < 100000; ++t) {
        const Sample s = independent(rng, 5);
        if (xi_nm(s, NeighborCount{1}).value == 0.0) {
            CHECK(asymptotic_test(s, NeighborCount{1}, 0.05).p_value == 0.5);
            return;
        }
    }
    FAIL("no zero found");
}

TEST_CASE("Pearson test") {
    const auto perfect = pearson_test(make_sample({1, 2, 3, 4}, {2, 4, 6, 8}), 0.05);
    CHECK(perfect.p_value == 0.0);
    CHECK(perfect.reject);
    const auto r = pearson_test(make_sample({1, 2, 3}, {1, 3, 2}), 0.05);
    // r = 0.5, t = 0.5 sqrt(1/0.75), one degree of freedom: p = 1 - 2 atan(t)/pi.
    const double t = 0.5 * std::sqrt(1.0 / 0.75);
    CHECK(r.p_value == doctest::Approx(1.0 - 2.0 * std::atan(t) / M_PI));
    CHECK_FALSE(r.reject);
}

TEST_CASE("asymptotic null variance") {
    CHECK(null_variance_asymptotic(1000, NeighborCount{20}) ==
          doctest::Approx(3.0667e-5).epsilon(1e-4));
    CHECK(null_variance_asymptotic(1000, NeighborCount{1}) ==
          doctest::Approx(4.005e-4).epsilon(1e-3));
    for (std::size_t n : {100u, 1000u, 10000u, 100000u}) {
        std::size_t best = 1;
        for (std::size_t M = 1; M < n; ++M) {
            if (null_variance_asymptotic(n, NeighborCount{M}) <
                null_variance_asymptotic(n, NeighborCount{best}))
                best = M;
        }
        CHECK(static_cast<double>(best) / std::sqrt(static_cast<double>(n)) ==
              doctest::Approx(std::sqrt(0.75)).epsilon(0.1));
    }
}

TEST_CASE("exact null moments") {
    const auto m = null_moments_enumerate(3, NeighborCount{1});
    CHECK(m.mean_is_zero);
    CHECK(m.mean == 0.0);
    REQUIRE(m.variance_exact);
    CHECK(*m.variance_exact == doctest::Approx(5.0 / 49.0).epsilon(1e-14));
    CHECK(null_moments_enumerate(4, NeighborCount{2}).mean_is_zero);
    for (std::size_t n = 2; n <= 7; ++n)
        for (std::size_t M = 1; M < n; ++M)
            CHECK(null_moments_enumerate(n, NeighborCount{M}).mean_is_zero);
    CHECK_THROWS_AS(null_moments_enumerate(9, NeighborCount{1}), SizeError);
}

TEST_CASE("fast path equivalence") {
    const auto a = permutation_test_fast_path_equivalence(RankVector::from_permutation({1, 2, 3}),
                                                          NeighborCount{1});
    CHECK(a.fast == 4.0 / 7.0);
    CHECK(a.reference == 4.0 / 7.0);
    const auto b = permutation_test_fast_path_equivalence(RankVector::from_permutation({3, 1, 2}),
                                                          NeighborCount{2});
    CHECK(b.fast == b.reference);
    Rng rng(5);
    for (int t = 0; t < 500; ++t) {
        const std::size_t n = 2 + rng.below(300);
        const auto r = random_rank_permutation(rng, n);
        const auto pair = permutation_test_fast_path_equivalence(r, NeighborCount{1 + rng.below(n - 1)});
        CHECK(pair.fast == pair.reference);
    }
}

TEST_CASE("configuration checks") {
    PermutationTestConfig cfg;
    cfg.B = 0;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg.B = 10;
    cfg.alpha = 1.5;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg.alpha = 0.05;
    cfg.M = NeighborCount{10};
    Rng rng(6);
    CHECK_THROWS_AS(permutation_test(independent(rng, 10), cfg), MRangeError);
    cfg.method = PermutationMethod::HoeffdingD;
    CHECK_THROWS_AS(permutation_test(independent(rng, 4), cfg), SizeError);
}
