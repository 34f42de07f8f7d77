#pragma once

// Local alternatives under the Gaussian rotation model and the detection
// boundary of the xi_nm test.

#include <cstddef>

#include "xicor/random.hpp"
#include "xicor/ranks.hpp"

namespace xicor {

/// Standard bivariate normal with correlation rho, |rho| < 1.
class GaussianRotation {
public:
    explicit GaussianRotation(double rho);

    double rho() const noexcept { return rho_; }

    /// n pairs X ~ N(0,1), Y = rho X + sqrt(1 - rho^2) Z.
    Sample sample(Rng& rng, std::size_t n) const;

private:
    double rho_;
    double residual_scale_;
};

Sample sample_rotation(Rng& rng, std::size_t n, double rho);

/// zeta_{n,M} = [(n^{1/2} M^{-3/2}) v M^{-1/2}] ^ [(nM)^{-1/4} v (n^{-1/2} M^{1/4})],
/// with v = max and ^ = min. Evaluated in log space.
double zeta(std::size_t n, NeighborCount M);

/// log zeta / log n, the empirical boundary exponent (negated beta).
double zeta_log_exponent(double n, double M);

/// beta(gamma) = [(3/2 gamma - 1/2) ^ gamma/2] v [(1/4 + gamma/4) ^ (1/2 - gamma/4)]
/// for 0 < gamma < 1. Piecewise linear with kinks at 1/4, 1/2, 2/3.
double beta_of_gamma(double gamma);

/// Side conditions of the local power theorem, read at finite n:
/// M / log n large and M (log n)^{3/2} / n small. Advisory only.
bool regime_ok(std::size_t n, NeighborCount M, double margin = 1.0);

} // namespace xicor
