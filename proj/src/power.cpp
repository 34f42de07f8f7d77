#include "xicor/power.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "xicor/errors.hpp"

namespace xicor {

GaussianRotation::GaussianRotation(double rho) : rho_(rho) {
    if (!(std::abs(rho) < 1.0)) {
        throw RhoRangeError("rho must lie in (-1, 1), got " + std::to_string(rho));
    }
    residual_scale_ = std::sqrt(1.0 - rho * rho);
}

Sample GaussianRotation::sample(Rng& rng, std::size_t n) const {
    Sample s;
    s.x.resize(n);
    s.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto [x, z] = rng.normal_pair();
        s.x[i] = x;
        s.y[i] = rho_ * x + residual_scale_ * z;
    }
    return s;
}

Sample sample_rotation(Rng& rng, std::size_t n, double rho) {
    return GaussianRotation(rho).sample(rng, n);
}

double zeta_log_exponent(double n, double M) {
    const double a = std::log(n);
    const double b = std::log(M);
    const double left = std::max(0.5 * a - 1.5 * b, -0.5 * b);
    const double right = std::max(-0.25 * (a + b), -0.5 * a + 0.25 * b);
    return std::min(left, right) / a;
}

double zeta(std::size_t n, NeighborCount M) {
    check_neighbor_count(n, M);
    const double nd = static_cast<double>(n);
    return std::exp(zeta_log_exponent(nd, static_cast<double>(M.value)) * std::log(nd));
}

double beta_of_gamma(double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw GammaRangeError("gamma must lie in (0, 1), got " + std::to_string(gamma));
    }
    const double low = std::min(1.5 * gamma - 0.5, 0.5 * gamma);
    const double high = std::min(0.25 + 0.25 * gamma, 0.5 - 0.25 * gamma);
    return std::max(low, high);
}

bool regime_ok(std::size_t n, NeighborCount M, double margin) {
    check_neighbor_count(n, M);
    const double log_n = std::log(static_cast<double>(n));
    const double m = static_cast<double>(M.value);
    return m >= margin * log_n && m * std::pow(log_n, 1.5) * margin <= static_cast<double>(n);
}

} // namespace xicor
