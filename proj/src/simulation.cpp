#include "xicor/simulation.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "xicor/coefficients.hpp"
#include "xicor/errors.hpp"
#include "xicor/inference.hpp"
#include "xicor/kernels.hpp"
#include "xicor/parallel.hpp"
#include "xicor/power.hpp"
#include "xicor/random.hpp"

namespace xicor {

namespace {

constexpr std::array<std::pair<StudyMethod, std::string_view>, 5> kStudyMethods{{
    {StudyMethod::XiPM, "xi-pm"},
    {StudyMethod::SymmetricNN, "symmetric-nn"},
    {StudyMethod::HoeffdingD, "hoeffding"},
    {StudyMethod::Pearson, "pearson"},
    {StudyMethod::XiAsymptotic, "xi-asymptotic"},
}};

std::string cell_label(std::string_view method, std::size_t n, std::optional<std::size_t> M,
                       double rho) {
    std::string out = "cell (method=" + std::string(method) + ", n=" + std::to_string(n);
    if (M) out += ", M=" + std::to_string(*M);
    return out + ", rho=" + std::to_string(rho) + ")";
}

// Linear interpolation between order statistics (R type 7).
double quantile(const std::vector<double>& sorted, double q) {
    const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

Moments moments(const std::vector<double>& v) {
    Moments m;
    m.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - m.mean) * (x - m.mean);
        m.variance = ss / static_cast<double>(v.size() - 1);
    }
    return m;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Kolmogorov-Smirnov distance between the empirical law of `draws` and
// N(0, variance).
double ks_distance_normal(std::vector<double> draws, double variance) {
    std::sort(draws.begin(), draws.end());
    const double sd = std::sqrt(variance);
    const double count = static_cast<double>(draws.size());
    double d = 0.0;
    for (std::size_t i = 0; i < draws.size(); ++i) {
        const double f = normal_cdf(draws[i] / sd);
        d = std::max({d, static_cast<double>(i + 1) / count - f, f - static_cast<double>(i) / count});
    }
    return d;
}

struct TestCell {
    StudyMethod method;
    std::optional<std::size_t> M;
};

} // namespace

std::string_view study_method_name(StudyMethod m) {
    for (const auto& [method, name] : kStudyMethods) {
        if (method == m) return name;
    }
    return "unknown";
}

std::optional<StudyMethod> parse_study_method(std::string_view name) {
    for (const auto& [method, label] : kStudyMethods) {
        if (label == name) return method;
    }
    return std::nullopt;
}

bool study_method_uses_m(StudyMethod m) {
    return m != StudyMethod::HoeffdingD && m != StudyMethod::Pearson;
}

std::optional<double> StudyRow::metric(std::string_view name) const {
    for (const auto& [key, value] : metrics) {
        if (key == name) return value;
    }
    return std::nullopt;
}

const StudyRow* StudyReport::find(std::string_view method, std::size_t n,
                                  std::optional<std::size_t> M, double rho) const {
    for (const auto& row : rows) {
        if (row.method == method && row.n == n && row.M == M && row.rho == rho) return &row;
    }
    return nullptr;
}

void validate(const PowerStudyConfig& cfg) {
    if (cfg.n_values.empty() || cfg.rho0_values.empty() || cfg.methods.empty()) {
        throw ConfigError("n, rho0 and method lists must be nonempty");
    }
    const bool needs_m = std::any_of(cfg.methods.begin(), cfg.methods.end(), study_method_uses_m);
    if (needs_m && cfg.M_values.empty()) throw ConfigError("M list must be nonempty");
    if (cfg.replicates < 1) throw ConfigError("replicates must be at least 1");
    if (cfg.B < 1) throw ConfigError("B must be at least 1");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
    if (cfg.workers < 1) throw ConfigError("workers must be at least 1");
    for (std::size_t n : cfg.n_values) {
        if (n < 5) throw ConfigError("every n must be at least 5");
        for (double rho0 : cfg.rho0_values) {
            if (!(std::abs(rho0 / std::sqrt(static_cast<double>(n))) < 1.0)) {
                throw ConfigError("rho0 / sqrt(n) must lie in (-1, 1) for n=" + std::to_string(n));
            }
        }
        if (needs_m) {
            for (std::size_t M : cfg.M_values) check_neighbor_count(n, NeighborCount{M});
        }
    }
}

StudyReport power_study(const PowerStudyConfig& cfg) {
    validate(cfg);

    std::vector<TestCell> tests;
    for (StudyMethod method : cfg.methods) {
        if (study_method_uses_m(method)) {
            for (std::size_t M : cfg.M_values) tests.push_back({method, M});
        } else {
            tests.push_back({method, std::nullopt});
        }
    }

    const std::size_t rho_count = cfg.rho0_values.size();
    const std::size_t data_cells = cfg.n_values.size() * rho_count;
    const std::size_t reps = cfg.replicates;
    // reject[(test * data_cells + cell) * reps + r]
    std::vector<std::uint8_t> reject(tests.size() * data_cells * reps, 0);

    WorkerPool pool(cfg.workers);
    pool.for_each(data_cells * reps, [&](std::size_t item) {
        const std::size_t cell = item / reps;
        const std::size_t r = item % reps;
        const std::size_t n = cfg.n_values[cell / rho_count];
        const double rho0 = cfg.rho0_values[cell % rho_count];
        const double rho = rho0 / std::sqrt(static_cast<double>(n));

        Rng rng = Rng::for_stream(cfg.master_seed, cell, r);
        const Sample s = sample_rotation(rng, n, rho);
        const std::uint64_t test_seed = rng();
        const RankVector ranks = compute_ranks(s.y);
        const XOrder order = x_order(s.x);

        for (std::size_t t = 0; t < tests.size(); ++t) {
            const TestCell& test = tests[t];
            bool rejected = false;
            try {
                switch (test.method) {
                case StudyMethod::XiPM:
                case StudyMethod::SymmetricNN:
                case StudyMethod::HoeffdingD: {
                    PermutationTestConfig pc;
                    pc.B = cfg.B;
                    pc.alpha = cfg.alpha;
                    pc.M = NeighborCount{test.M.value_or(1)};
                    pc.seed = test_seed;
                    pc.method = test.method == StudyMethod::XiPM ? PermutationMethod::XiPM
                                : test.method == StudyMethod::SymmetricNN
                                    ? PermutationMethod::SymmetricNN
                                    : PermutationMethod::HoeffdingD;
                    rejected = permutation_test(ranks, order, pc).reject;
                    break;
                }
                case StudyMethod::Pearson: rejected = pearson_test(s, cfg.alpha).reject; break;
                case StudyMethod::XiAsymptotic:
                    rejected = asymptotic_test(s, NeighborCount{*test.M}, cfg.alpha, true).reject;
                    break;
                }
            } catch (const Error& e) {
                throw Error(cell_label(study_method_name(test.method), n, test.M, rho0) + ": " +
                            e.what());
            }
            reject[(t * data_cells + cell) * reps + r] = rejected ? 1 : 0;
        }
    });

    StudyReport report;
    report.study = "power";
    report.master_seed = cfg.master_seed;
    for (std::size_t t = 0; t < tests.size(); ++t) {
        for (std::size_t ni = 0; ni < cfg.n_values.size(); ++ni) {
            for (std::size_t ri = 0; ri < rho_count; ++ri) {
                const std::size_t cell = ni * rho_count + ri;
                const auto begin = reject.begin() + static_cast<std::ptrdiff_t>((t * data_cells + cell) * reps);
                const auto count = std::accumulate(begin, begin + static_cast<std::ptrdiff_t>(reps), std::size_t{0});
                StudyRow row;
                row.method = std::string(study_method_name(tests[t].method));
                row.n = cfg.n_values[ni];
                row.M = tests[t].M;
                row.rho = cfg.rho0_values[ri];
                row.replicates = reps;
                row.seed = cfg.master_seed;
                row.metrics = {
                    {"rejection_frequency", static_cast<double>(count) / static_cast<double>(reps)},
                    {"rejections", static_cast<double>(count)},
                };
                report.rows.push_back(std::move(row));
            }
        }
    }
    return report;
}

StudyReport null_calibration_study(std::size_t n, std::size_t M, std::size_t replicates,
                                   std::uint64_t seed, std::size_t workers) {
    check_neighbor_count(n, NeighborCount{M});
    if (replicates < 2) throw ConfigError("replicates must be at least 2");

    std::vector<double> draws(replicates);
    WorkerPool pool(workers);
    pool.for_each(replicates, [&](std::size_t r) {
        Rng rng = Rng::for_stream(seed, 0, r);
        std::vector<Rank> perm(n);
        std::iota(perm.begin(), perm.end(), Rank{1});
        shuffle_ranks(rng, perm);
        const auto sums = kernels::right_neighbor_sums(perm, M);
        draws[r] = kernels::xi_from_min_sum(sums.min_sum, n, M);
    });

    const Moments mom = moments(draws);
    const double asymptotic = null_variance_asymptotic(n, NeighborCount{M});
    const double nm = static_cast<double>(n) * static_cast<double>(M);

    StudyRow row;
    row.method = "xi-nm";
    row.n = n;
    row.M = M;
    row.rho = 0.0;
    row.replicates = replicates;
    row.seed = seed;
    row.metrics = {
        {"mean", mom.mean},
        {"variance", mom.variance},
        {"variance_asymptotic", asymptotic},
        {"variance_ratio", mom.variance / asymptotic},
        {"scaled_variance", nm * mom.variance},
    };
    if (std::pow(static_cast<double>(M), 4) <= static_cast<double>(n)) {
        std::vector<double> scaled(draws.size());
        std::transform(draws.begin(), draws.end(), scaled.begin(),
                       [nm](double v) { return std::sqrt(nm) * v; });
        row.metrics.emplace_back("ks_distance", ks_distance_normal(std::move(scaled), 0.4));
    }

    StudyReport report;
    report.study = "null-calibration";
    report.master_seed = seed;
    report.rows.push_back(std::move(row));
    return report;
}

StudyReport consistency_study(const std::vector<double>& rho_values,
                              const std::vector<std::size_t>& n_values,
                              const std::vector<std::size_t>& M_values, std::size_t replicates,
                              std::uint64_t seed, std::size_t workers) {
    if (rho_values.empty() || n_values.empty() || M_values.empty()) {
        throw ConfigError("rho, n and M lists must be nonempty");
    }
    if (replicates < 1) throw ConfigError("replicates must be at least 1");
    for (double rho : rho_values) {
        if (!(std::abs(rho) < 1.0)) throw RhoRangeError("rho must lie in (-1, 1)");
    }
    for (std::size_t n : n_values) {
        for (std::size_t M : M_values) check_neighbor_count(n, NeighborCount{M});
    }

    const std::size_t cells = rho_values.size() * n_values.size();
    const std::size_t Ms = M_values.size();
    // values[((cell * Ms) + k) * replicates + r]
    std::vector<double> values(cells * Ms * replicates);

    WorkerPool pool(workers);
    pool.for_each(cells * replicates, [&](std::size_t item) {
        const std::size_t cell = item / replicates;
        const std::size_t r = item % replicates;
        const double rho = rho_values[cell / n_values.size()];
        const std::size_t n = n_values[cell % n_values.size()];
        Rng rng = Rng::for_stream(seed, cell, r);
        const Sample s = sample_rotation(rng, n, rho);
        const RankVector ranks = compute_ranks(s.y);
        const XOrder order = x_order(s.x);
        for (std::size_t k = 0; k < Ms; ++k) {
            values[(cell * Ms + k) * replicates + r] =
                xi_nm_from_ranks(ranks, order, NeighborCount{M_values[k]}).value;
        }
    });

    StudyReport report;
    report.study = "consistency";
    report.master_seed = seed;
    for (std::size_t cell = 0; cell < cells; ++cell) {
        const double rho = rho_values[cell / n_values.size()];
        const std::size_t n = n_values[cell % n_values.size()];
        const double population = gaussian_population_xi(rho).xi;
        for (std::size_t k = 0; k < Ms; ++k) {
            const auto begin = values.begin() + static_cast<std::ptrdiff_t>((cell * Ms + k) * replicates);
            std::vector<double> v(begin, begin + static_cast<std::ptrdiff_t>(replicates));
            const Moments mom = moments(v);
            std::sort(v.begin(), v.end());
            StudyRow row;
            row.method = "xi-nm";
            row.n = n;
            row.M = M_values[k];
            row.rho = rho;
            row.replicates = replicates;
            row.seed = seed;
            row.metrics = {
                {"mean", mom.mean},
                {"sd", std::sqrt(mom.variance)},
                {"q25", quantile(v, 0.25)},
                {"median", quantile(v, 0.5)},
                {"q75", quantile(v, 0.75)},
                {"population_xi", population},
            };
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

StudyReport timing_study(const TimingConfig& cfg) {
    if (cfg.n_values.empty() || cfg.methods.empty()) throw ConfigError("n and method lists must be nonempty");
    if (cfg.repetitions < 1) throw ConfigError("repetitions must be at least 1");

    StudyReport report;
    report.study = "timing";
    report.master_seed = cfg.seed;
    using clock = std::chrono::steady_clock;

    for (StudyMethod method : cfg.methods) {
        const bool uses_m = study_method_uses_m(method);
        if (uses_m && cfg.M_values.empty()) throw ConfigError("M list must be nonempty");
        for (std::size_t ni = 0; ni < cfg.n_values.size(); ++ni) {
            const std::size_t n = cfg.n_values[ni];
            Rng rng = Rng::for_stream(cfg.seed, ni, 0);
            const Sample s = sample_rotation(rng, n, 0.0);
            const std::vector<std::optional<std::size_t>> Ms =
                uses_m ? std::vector<std::optional<std::size_t>>(cfg.M_values.begin(), cfg.M_values.end())
                       : std::vector<std::optional<std::size_t>>{std::nullopt};
            for (const auto& M : Ms) {
                if (M) check_neighbor_count(n, NeighborCount{*M});
                volatile double sink = 0.0;
                auto evaluate = [&] {
                    switch (method) {
                    case StudyMethod::XiPM: sink = xi_pm(s, NeighborCount{*M}).value; break;
                    case StudyMethod::XiAsymptotic: sink = xi_nm(s, NeighborCount{*M}).value; break;
                    case StudyMethod::SymmetricNN: sink = symmetric_nn_sum(s, NeighborCount{*M}).value; break;
                    case StudyMethod::HoeffdingD: sink = hoeffding_d(s).value; break;
                    case StudyMethod::Pearson: sink = pearson_r(s).value; break;
                    }
                };
                for (std::size_t w = 0; w < cfg.warmups; ++w) evaluate();
                std::vector<double> ms(cfg.repetitions);
                for (auto& t : ms) {
                    const auto start = clock::now();
                    evaluate();
                    t = std::chrono::duration<double, std::milli>(clock::now() - start).count();
                }
                std::sort(ms.begin(), ms.end());
                StudyRow row;
                row.method = std::string(study_method_name(method));
                row.n = n;
                row.M = M;
                row.rho = 0.0;
                row.replicates = cfg.repetitions;
                row.seed = cfg.seed;
                row.metrics = {
                    {"median_ms", quantile(ms, 0.5)},
                    {"min_ms", ms.front()},
                    {"mean_ms", std::accumulate(ms.begin(), ms.end(), 0.0) / static_cast<double>(ms.size())},
                };
                report.rows.push_back(std::move(row));
            }
        }
    }
    return report;
}

} // namespace xicor
