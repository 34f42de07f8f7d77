#pragma once

// Seeded Monte Carlo studies: rejection frequencies under local Gaussian
// alternatives, null calibration of xi_nm, consistency trajectories and
// timing. Every replicate draws its randomness from
// Rng::for_stream(master_seed, cell, replicate), so a report depends only on
// its configuration and never on the worker count.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace xicor {

enum class StudyMethod { XiPM, SymmetricNN, HoeffdingD, Pearson, XiAsymptotic };

std::string_view study_method_name(StudyMethod m);
std::optional<StudyMethod> parse_study_method(std::string_view name);
bool study_method_uses_m(StudyMethod m);

struct StudyRow {
    std::string method;
    std::size_t n = 0;
    std::optional<std::size_t> M;
    /// rho_0 for power studies (rho_n = rho_0 / sqrt(n)); rho otherwise.
    double rho = 0.0;
    std::size_t replicates = 0;
    std::uint64_t seed = 0;
    /// Ordered name/value pairs; the set of names is fixed per study kind.
    std::vector<std::pair<std::string, double>> metrics;

    std::optional<double> metric(std::string_view name) const;

    friend bool operator==(const StudyRow&, const StudyRow&) = default;
};

struct StudyReport {
    static constexpr int kSchemaVersion = 1;

    int schema_version = kSchemaVersion;
    std::string study; // "power", "null-calibration", "consistency", "timing"
    std::uint64_t master_seed = 0;
    std::vector<StudyRow> rows;

    /// First row matching (method, n, M, rho), if any.
    const StudyRow* find(std::string_view method, std::size_t n, std::optional<std::size_t> M,
                         double rho) const;

    friend bool operator==(const StudyReport&, const StudyReport&) = default;
};

struct PowerStudyConfig {
    std::vector<std::size_t> n_values{1000};
    std::vector<std::size_t> M_values{1, 20, 100, 200};
    std::vector<double> rho0_values{0.0, 1.0, 2.0, 5.0};
    std::vector<StudyMethod> methods{StudyMethod::XiPM};
    std::size_t replicates = 500;
    std::size_t B = 999;
    double alpha = 0.05;
    std::uint64_t master_seed = 0;
    std::size_t workers = 1;
};

void validate(const PowerStudyConfig& cfg);

/// Rejection frequency per (method, n, M, rho0). Samples are shared across
/// methods and M within an (n, rho0) cell so that comparisons are paired.
/// Rows carry metrics rejection_frequency and rejections.
StudyReport power_study(const PowerStudyConfig& cfg);

/// Null draws of xi_nm through the identity-order fast path. Metrics: mean,
/// variance, variance_asymptotic, variance_ratio, scaled_variance (nM times
/// the variance) and, when M^4 <= n, ks_distance of sqrt(nM) xi to N(0, 2/5).
StudyReport null_calibration_study(std::size_t n, std::size_t M, std::size_t replicates,
                                   std::uint64_t seed, std::size_t workers = 1);

/// Mean and quartiles of xi_nm per (rho, n, M) with the population value as
/// reference column population_xi.
StudyReport consistency_study(const std::vector<double>& rho_values,
                              const std::vector<std::size_t>& n_values,
                              const std::vector<std::size_t>& M_values, std::size_t replicates,
                              std::uint64_t seed, std::size_t workers = 1);

struct TimingConfig {
    std::vector<std::size_t> n_values{1000, 2000, 5000};
    std::vector<std::size_t> M_values{1, 20, 100, 200};
    std::vector<StudyMethod> methods{StudyMethod::XiPM};
    std::size_t repetitions = 30;
    std::size_t warmups = 5;
    std::uint64_t seed = 0;
};

/// Median wall time (milliseconds) of one coefficient evaluation per cell on
/// a standard bivariate Gaussian sample, after warm-up calls. Serial.
StudyReport timing_study(const TimingConfig& cfg);

} // namespace xicor
