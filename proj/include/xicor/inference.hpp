#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xicor/coefficients.hpp"
#include "xicor/ranks.hpp"

namespace xicor {

enum class PermutationMethod { XiPM, SymmetricNN, HoeffdingD };

std::string_view permutation_method_name(PermutationMethod m);

struct PermutationTestConfig {
    std::size_t B = 10000;
    double alpha = 0.05;
    NeighborCount M{1};
    std::uint64_t seed = 0;
    PermutationMethod method = PermutationMethod::XiPM;
    /// Threads for the replicate loop. Results do not depend on it.
    std::size_t workers = 1;
};

void validate(const PermutationTestConfig& cfg);

struct TestResult {
    std::string method;
    double statistic = 0.0;
    double p_value = 1.0;
    bool reject = false;
    std::size_t n = 0;
    std::optional<std::size_t> M;
    std::optional<std::size_t> B;
    double alpha = 0.05;
    std::optional<std::uint64_t> seed;

    friend bool operator==(const TestResult&, const TestResult&) = default;
};

/// (1 + #{b : replicate_b >= observed}) / (1 + B).
double permutation_p_value(double observed, std::span<const double> replicates);

/// Test statistic of `method` on ranks laid out in X order. For XiPM this is
/// max(xi_nm, xi_nm on reflected ranks); SymmetricNN likewise takes the max of
/// the raw min-sum and its reflection; HoeffdingD is right-tailed D.
double permutation_statistic(PermutationMethod method, std::span<const Rank> rs, std::size_t M);

/// The B null statistics. Replicate b shuffles 1..n with the generator
/// Rng::for_stream(cfg.seed, 0, b) and evaluates the statistic on the identity
/// X order. Runs on cfg.workers threads; the output is identical for any
/// worker count. Cost O(B n M).
std::vector<double> null_replicates(std::size_t n, const PermutationTestConfig& cfg);

/// Simulation-based independence test. Deterministic given cfg.seed.
TestResult permutation_test(const Sample& s, const PermutationTestConfig& cfg);

/// Same test from precomputed coordinate ranks.
TestResult permutation_test(const RankVector& y_ranks, const XOrder& ord,
                            const PermutationTestConfig& cfg);

/// One-sided test from the null CLT sqrt(nM) xi_nm -> N(0, 2/5). Throws
/// RegimeError when M^4 > n unless `allow_outside_regime`.
TestResult asymptotic_test(const Sample& s, NeighborCount M, double alpha,
                           bool allow_outside_regime = false);

/// Two-sided Student-t test of zero Pearson correlation.
TestResult pearson_test(const Sample& s, double alpha);

/// (2/5)/(nM) + (8/15) M/n^2.
double null_variance_asymptotic(std::size_t n, NeighborCount M);

struct NullMoments {
    std::size_t n = 0;
    std::size_t M = 0;
    double mean = 0.0;
    double variance_asymptotic = 0.0;
    std::optional<double> variance_exact;
    /// Exact rational mean and variance: sum over permutations of
    /// 24 S - 2 D (numerator of xi_nm) is exactly zero when mean_is_zero.
    bool mean_is_zero = false;
};

/// Exact null moments of xi_nm with x = 1..n by enumerating all n! rank
/// permutations. n <= 8.
NullMoments null_moments_enumerate(std::size_t n, NeighborCount M);

struct FastPathPair {
    double fast;      // replicate statistic through g_m arithmetic
    double reference; // xi_nm on the sample (i, r_i)
};

FastPathPair permutation_test_fast_path_equivalence(const RankVector& r, NeighborCount M);

} // namespace xicor
