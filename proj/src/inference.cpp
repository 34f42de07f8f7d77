#include "xicor/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "xicor/errors.hpp"
#include "xicor/kernels.hpp"

namespace xicor {

namespace {

constexpr double kCltVariance = 2.0 / 5.0;

std::vector<Rank> reflected(std::span<const Rank> rs) {
    const auto top = static_cast<Rank>(rs.size() + 1);
    std::vector<Rank> out(rs.size());
    std::transform(rs.begin(), rs.end(), out.begin(), [top](Rank v) { return top - v; });
    return out;
}

bool uses_neighbors(PermutationMethod m) { return m != PermutationMethod::HoeffdingD; }

} // namespace

std::string_view permutation_method_name(PermutationMethod m) {
    switch (m) {
    case PermutationMethod::XiPM: return "xi-pm";
    case PermutationMethod::SymmetricNN: return "symmetric-nn";
    case PermutationMethod::HoeffdingD: return "hoeffding";
    }
    return "unknown";
}

void validate(const PermutationTestConfig& cfg) {
    if (cfg.B < 1) throw ConfigError("B must be at least 1");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
    if (cfg.workers < 1) throw ConfigError("workers must be at least 1");
}

double permutation_p_value(double observed, std::span<const double> replicates) {
    const auto exceed = std::count_if(replicates.begin(), replicates.end(),
                                      [observed](double v) { return v >= observed; });
    return static_cast<double>(1 + exceed) / static_cast<double>(1 + replicates.size());
}

double permutation_statistic(PermutationMethod method, std::span<const Rank> rs, std::size_t M) {
    const std::size_t n = rs.size();
    switch (method) {
    case PermutationMethod::XiPM: {
        const auto sums = kernels::right_neighbor_sums(rs, M);
        return std::max(kernels::xi_from_min_sum(sums.min_sum, n, M),
                        kernels::xi_from_min_sum(kernels::reflected_min_sum(sums, n, M), n, M));
    }
    case PermutationMethod::SymmetricNN: {
        const auto plain = kernels::symmetric_min_sum(rs, M);
        const auto flipped = kernels::symmetric_min_sum(reflected(rs), M);
        return static_cast<double>(std::max(plain, flipped));
    }
    case PermutationMethod::HoeffdingD: return kernels::hoeffding_d(rs);
    }
    return 0.0;
}

std::vector<double> null_replicates(std::size_t n, const PermutationTestConfig& cfg) {
    validate(cfg);
    if (uses_neighbors(cfg.method)) check_neighbor_count(n, cfg.M);
    std::vector<double> out(cfg.B);
    const auto B = static_cast<std::int64_t>(cfg.B);
#pragma omp parallel num_threads(static_cast<int>(cfg.workers))
    {
        std::vector<Rank> perm(n);
#pragma omp for schedule(static)
        for (std::int64_t b = 0; b < B; ++b) {
            Rng rng = Rng::for_stream(cfg.seed, 0, static_cast<std::uint64_t>(b));
            std::iota(perm.begin(), perm.end(), Rank{1});
            shuffle_ranks(rng, perm);
            out[static_cast<std::size_t>(b)] = permutation_statistic(cfg.method, perm, cfg.M.value);
        }
    }
    return out;
}

TestResult permutation_test(const RankVector& y_ranks, const XOrder& ord,
                            const PermutationTestConfig& cfg) {
    validate(cfg);
    const std::size_t n = y_ranks.size();
    if (n != ord.size()) throw SizeError("rank vector and X order sizes differ");
    if (cfg.method == PermutationMethod::HoeffdingD && n < 5) {
        throw SizeError("Hoeffding's D needs n >= 5");
    }
    if (n < 2) throw SizeError("need at least 2 observations");
    if (uses_neighbors(cfg.method)) check_neighbor_count(n, cfg.M);

    const auto rs = ranks_in_x_order(y_ranks, ord);
    const double observed = permutation_statistic(cfg.method, rs, cfg.M.value);
    const auto null = null_replicates(n, cfg);

    TestResult result;
    result.method = std::string(permutation_method_name(cfg.method));
    result.statistic = observed;
    result.p_value = permutation_p_value(observed, null);
    result.reject = result.p_value <= cfg.alpha;
    result.n = n;
    if (uses_neighbors(cfg.method)) result.M = cfg.M.value;
    result.B = cfg.B;
    result.alpha = cfg.alpha;
    result.seed = cfg.seed;
    return result;
}

TestResult permutation_test(const Sample& s, const PermutationTestConfig& cfg) {
    if (s.x.size() != s.y.size()) throw SizeError("x and y lengths differ");
    validate(cfg);
    return permutation_test(compute_ranks(s.y), x_order(s.x), cfg);
}

TestResult asymptotic_test(const Sample& s, NeighborCount M, double alpha,
                           bool allow_outside_regime) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
    const std::size_t n = s.size();
    check_neighbor_count(n, M);
    const double m4 = std::pow(static_cast<double>(M.value), 4);
    if (!allow_outside_regime && m4 > static_cast<double>(n)) {
        throw RegimeError("asymptotic test needs M^4 <= n (M=" + std::to_string(M.value) +
                          ", n=" + std::to_string(n) + "); use the permutation test");
    }
    const double xi = xi_nm(s, M).value;
    const double z = std::sqrt(static_cast<double>(n * M.value)) * xi / std::sqrt(kCltVariance);
    const boost::math::normal standard;
    TestResult result;
    result.method = "xi-asymptotic";
    result.statistic = xi;
    result.p_value = boost::math::cdf(boost::math::complement(standard, z));
    result.reject = result.p_value <= alpha;
    result.n = n;
    result.M = M.value;
    result.alpha = alpha;
    return result;
}

TestResult pearson_test(const Sample& s, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
    const double r = pearson_r(s).value;
    const double dof = static_cast<double>(s.size() - 2);
    TestResult result;
    result.method = "pearson";
    result.statistic = r;
    if (std::abs(r) >= 1.0) {
        result.p_value = 0.0;
    } else {
        const double t = r * std::sqrt(dof / (1.0 - r * r));
        const boost::math::students_t dist(dof);
        result.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
    }
    result.reject = result.p_value <= alpha;
    result.n = s.size();
    result.alpha = alpha;
    return result;
}

double null_variance_asymptotic(std::size_t n, NeighborCount M) {
    check_neighbor_count(n, M);
    const double nd = static_cast<double>(n), md = static_cast<double>(M.value);
    return (2.0 / 5.0) / (nd * md) + (8.0 / 15.0) * md / (nd * nd);
}

NullMoments null_moments_enumerate(std::size_t n, NeighborCount M) {
    if (n > 8) throw SizeError("enumeration is limited to n <= 8");
    if (n < 2) throw SizeError("need at least 2 observations");
    check_neighbor_count(n, M);
    using Wide = Int128;
    const Wide wn = static_cast<Wide>(n), wm = static_cast<Wide>(M.value);
    const Wide den = (wn + 1) * (4 * wn * wm + wm * (wm + 1));

    std::vector<Rank> perm(n);
    std::iota(perm.begin(), perm.end(), Rank{1});
    Wide first = 0, second = 0, count = 0;
    do {
        const auto sums = kernels::right_neighbor_sums(perm, M.value);
        const Wide num = 24 * static_cast<Wide>(sums.min_sum) - 2 * den;
        first += num;
        second += num * num;
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));

    NullMoments out;
    out.n = n;
    out.M = M.value;
    out.mean_is_zero = first == 0;
    const long double d = static_cast<long double>(den);
    const long double c = static_cast<long double>(count);
    const long double mean = static_cast<long double>(first) / c / d;
    out.mean = static_cast<double>(mean);
    out.variance_exact =
        static_cast<double>(static_cast<long double>(second) / c / (d * d) - mean * mean);
    out.variance_asymptotic = null_variance_asymptotic(n, M);
    return out;
}

FastPathPair permutation_test_fast_path_equivalence(const RankVector& r, NeighborCount M) {
    check_neighbor_count(r.size(), M);
    const std::size_t n = r.size();
    const auto sums = kernels::right_neighbor_sums(r.values(), M.value);
    const double fast = kernels::xi_from_min_sum(sums.min_sum, n, M.value);

    Sample s;
    s.x.resize(n);
    s.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        s.x[i] = static_cast<double>(i + 1);
        s.y[i] = static_cast<double>(r[i]);
    }
    return {fast, xi_nm(s, M).value};
}

} // namespace xicor
