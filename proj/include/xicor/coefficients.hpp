#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "xicor/ranks.hpp"

namespace xicor {

enum class Method {
    XiClassic,     // Chatterjee's 1-NN coefficient
    XiNM,          // M right nearest neighbors
    XiNMReflected, // XiNM on (x, -y)
    XiPM,          // max(XiNM, XiNMReflected)
    SymmetricNN,   // raw min-sum over M two-sided neighbors
    Pearson,
    HoeffdingD,
};

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);

struct CoefficientValue {
    double value = 0.0;
    Method method = Method::XiNM;
    std::size_t n = 0;
    std::optional<std::size_t> M;
};

/// Chatterjee's xi_n = 1 - 3 sum |R_{j_1(i)} - R_i| / (n^2 - 1).
CoefficientValue chatterjee_xi(const Sample& s);

/// The M-right-neighbor coefficient
///   xi_{n,M} = -2 + 6 sum_i sum_{m<=M} min(R_i, R_{j_m(i)}) / ((n+1)[nM + M(M+1)/4]).
/// Its null mean is exactly zero for every M. The min-sum is accumulated in
/// integers and divided once, so the value is bit-identical across platforms.
/// Cost O(n log n + nM).
CoefficientValue xi_nm(const Sample& s, NeighborCount M);

/// xi_nm from precomputed Y ranks and X order. With XOrder::identity(n) this
/// is the null replicate formula with g_m(i) = i + m.
CoefficientValue xi_nm_from_ranks(const RankVector& r, const XOrder& ord, NeighborCount M);

/// xi_nm on (x, -y), via reflected ranks.
CoefficientValue xi_nm_reflected(const Sample& s, NeighborCount M);

/// max(xi_nm, xi_nm_reflected). Invariant under y -> -y.
CoefficientValue xi_pm(const Sample& s, NeighborCount M);

/// Raw min-sum over the M nearest neighbors in X-rank distance, ties toward
/// the right. No centering; only meaningful under permutation calibration.
CoefficientValue symmetric_nn_sum(const Sample& s, NeighborCount M);

/// Sample correlation. Throws DegenerateError on zero variance, SizeError for n < 3.
CoefficientValue pearson_r(const Sample& s);

/// Hoeffding's D (unscaled 1948 form), n >= 5.
CoefficientValue hoeffding_d(const Sample& s);

struct ExtremalBounds {
    double upper; // attained when y is a strictly increasing function of x
    double lower;
};

/// Finite-sample range of xi_nm. Both ends are evaluated as exact rationals
/// rounded once, so y = x reproduces `upper` bit for bit.
ExtremalBounds extremal_bounds(std::size_t n, NeighborCount M);

/// xi_nm when y is a strictly decreasing function of x.
double xi_nm_decreasing_value(std::size_t n, NeighborCount M);

/// Population dependence measure under the bivariate Gaussian with unit
/// variances and correlation rho.
struct PopulationXi {
    double rho = 0.0;
    double xi = 0.0;
    double quadrature_tolerance = 0.0; // estimated absolute error
};

/// Evaluates xi = int Var(E[1(Y>=y)|X]) dF_Y / int Var(1(Y>=y)) dF_Y by
/// adaptive Gauss-Kronrod quadrature. The denominator is 1/6 and the
/// numerator reduces to a one-dimensional integral over the standardized
/// residual W = (Y - rho X) / sqrt(1 - rho^2) taken under independent X, Y.
PopulationXi gaussian_population_xi(double rho);

/// d xi / d rho by quadrature of the differentiated integrand.
double gaussian_population_xi_derivative(double rho);

} // namespace xicor
