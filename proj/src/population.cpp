#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "xicor/coefficients.hpp"
#include "xicor/errors.hpp"

namespace xicor {

namespace {

constexpr double kTolerance = 1e-12;

double phi(double t) { return std::exp(-0.5 * t * t) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2); }
double Phi(double t) { return 0.5 * std::erfc(-t / std::numbers::sqrt2); }

void check_rho(double rho) {
    if (!(std::abs(rho) < 1.0)) {
        throw RhoRangeError("rho must lie in (-1, 1), got " + std::to_string(rho));
    }
}

// sd of W = (Y - rho X) / sqrt(1 - rho^2) for independent standard X, Y.
double residual_sd(double rho) { return std::sqrt((1.0 + rho * rho) / (1.0 - rho * rho)); }

template <class F>
double integrate_real_line(F f, double* error) {
    using boost::math::quadrature::gauss_kronrod;
    constexpr double inf = std::numeric_limits<double>::infinity();
    double e1 = 0.0, e2 = 0.0;
    // Split at 0: the integrand sharpens into a step there as |rho| -> 1.
    const double left = gauss_kronrod<double, 61>::integrate(f, -inf, 0.0, 20, kTolerance, &e1);
    const double right = gauss_kronrod<double, 61>::integrate(f, 0.0, inf, 20, kTolerance, &e2);
    if (error) *error = e1 + e2;
    return left + right;
}

} // namespace

PopulationXi gaussian_population_xi(double rho) {
    check_rho(rho);
    const double sigma = residual_sd(rho);
    double error = 0.0;
    // E[Phi(sigma T)^2] for T ~ N(0,1); its value at rho = 0 is 1/3.
    const double second_moment = integrate_real_line(
        [sigma](double t) {
            const double c = Phi(sigma * t);
            return c * c * phi(t);
        },
        &error);
    const double xi = 6.0 * (second_moment - 1.0 / 3.0);
    return {rho, std::max(0.0, xi), 6.0 * error};
}

double gaussian_population_xi_derivative(double rho) {
    check_rho(rho);
    const double sigma = residual_sd(rho);
    const double one_minus = 1.0 - rho * rho;
    const double dsigma = 2.0 * rho / (sigma * one_minus * one_minus);
    const double inner = integrate_real_line(
        [sigma](double t) { return 2.0 * Phi(sigma * t) * phi(sigma * t) * t * phi(t); }, nullptr);
    return 6.0 * inner * dsigma;
}

} // namespace xicor
