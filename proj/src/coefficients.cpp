#include "xicor/coefficients.hpp"

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "xicor/errors.hpp"
#include "xicor/kernels.hpp"

namespace xicor {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 7> kMethodNames{{
    {Method::XiClassic, "xi"},
    {Method::XiNM, "xi-nm"},
    {Method::XiNMReflected, "xi-nm-reflected"},
    {Method::XiPM, "xi-pm"},
    {Method::SymmetricNN, "symmetric-nn"},
    {Method::Pearson, "pearson"},
    {Method::HoeffdingD, "hoeffding"},
}};

struct Prepared {
    RankVector ranks;
    XOrder order;
};

Prepared prepare(const Sample& s) {
    if (s.x.size() != s.y.size()) throw SizeError("x and y lengths differ");
    if (s.size() < 2) throw SizeError("need at least 2 observations");
    return {compute_ranks(s.y), x_order(s.x)};
}

double exact_fraction(std::int64_t num, std::int64_t den) {
    return static_cast<double>(num) / static_cast<double>(den);
}

} // namespace

std::string_view method_name(Method m) {
    for (const auto& [method, name] : kMethodNames) {
        if (method == m) return name;
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
    for (const auto& [method, label] : kMethodNames) {
        if (label == name) return method;
    }
    return std::nullopt;
}

CoefficientValue chatterjee_xi(const Sample& s) {
    const auto [ranks, order] = prepare(s);
    const auto rs = ranks_in_x_order(ranks, order);
    const auto n = static_cast<std::int64_t>(s.size());
    // 1 - 3 A / (n^2 - 1) as a single rational.
    const std::int64_t a = kernels::adjacent_abs_diff_sum(rs);
    const double value = exact_fraction(n * n - 1 - 3 * a, n * n - 1);
    return {value, Method::XiClassic, s.size(), std::nullopt};
}

CoefficientValue xi_nm_from_ranks(const RankVector& r, const XOrder& ord, NeighborCount M) {
    if (r.size() != ord.size()) throw SizeError("rank vector and X order sizes differ");
    if (r.size() < 2) throw SizeError("need at least 2 observations");
    check_neighbor_count(r.size(), M);
    const auto rs = ranks_in_x_order(r, ord);
    const auto sums = kernels::right_neighbor_sums(rs, M.value);
    return {kernels::xi_from_min_sum(sums.min_sum, r.size(), M.value), Method::XiNM, r.size(),
            M.value};
}

CoefficientValue xi_nm(const Sample& s, NeighborCount M) {
    const auto p = prepare(s);
    return xi_nm_from_ranks(p.ranks, p.order, M);
}

CoefficientValue xi_nm_reflected(const Sample& s, NeighborCount M) {
    const auto p = prepare(s);
    auto v = xi_nm_from_ranks(reflect_ranks(p.ranks), p.order, M);
    v.method = Method::XiNMReflected;
    return v;
}

CoefficientValue xi_pm(const Sample& s, NeighborCount M) {
    const auto p = prepare(s);
    const double plain = xi_nm_from_ranks(p.ranks, p.order, M).value;
    const double reflected = xi_nm_from_ranks(reflect_ranks(p.ranks), p.order, M).value;
    return {std::max(plain, reflected), Method::XiPM, s.size(), M.value};
}

CoefficientValue symmetric_nn_sum(const Sample& s, NeighborCount M) {
    const auto p = prepare(s);
    check_neighbor_count(s.size(), M);
    const auto rs = ranks_in_x_order(p.ranks, p.order);
    const auto sum = kernels::symmetric_min_sum(rs, M.value);
    return {static_cast<double>(sum), Method::SymmetricNN, s.size(), M.value};
}

CoefficientValue pearson_r(const Sample& s) {
    if (s.x.size() != s.y.size()) throw SizeError("x and y lengths differ");
    const std::size_t n = s.size();
    if (n < 3) throw SizeError("Pearson correlation needs n >= 3");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += s.x[i];
        my += s.y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = s.x[i] - mx, dy = s.y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw DegenerateError("zero variance in a coordinate");
    const double r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    return {r, Method::Pearson, n, std::nullopt};
}

CoefficientValue hoeffding_d(const Sample& s) {
    if (s.size() < 5) throw SizeError("Hoeffding's D needs n >= 5");
    const auto p = prepare(s);
    const auto rs = ranks_in_x_order(p.ranks, p.order);
    return {kernels::hoeffding_d(rs), Method::HoeffdingD, s.size(), std::nullopt};
}

ExtremalBounds extremal_bounds(std::size_t n, NeighborCount M) {
    check_neighbor_count(n, M);
    const auto N = static_cast<std::int64_t>(n);
    const auto m = static_cast<std::int64_t>(M.value);
    // upper = 1 - 3(M+1)/(4n+M+1)
    const std::int64_t base = 4 * N + m + 1;
    const double upper = exact_fraction(4 * N - 2 * m - 2, base);
    // lower = -1/2 + 3[4n - (n+1)(M+1)] / (2(n+1)(4n+M+1))
    const std::int64_t lower_den = 2 * (N + 1) * base;
    const std::int64_t lower_num = -(N + 1) * base + 3 * (4 * N - (N + 1) * (m + 1));
    return {upper, exact_fraction(lower_num, lower_den)};
}

double xi_nm_decreasing_value(std::size_t n, NeighborCount M) {
    check_neighbor_count(n, M);
    const auto N = static_cast<std::int64_t>(n);
    const auto m = static_cast<std::int64_t>(M.value);
    // 1 - (M+1)(15n - 8M - 1) / ((n+1)(4n+M+1))
    const std::int64_t den = (N + 1) * (4 * N + m + 1);
    return exact_fraction(den - (m + 1) * (15 * N - 8 * m - 1), den);
}

} // namespace xicor
