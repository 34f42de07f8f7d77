#include <benchmark/benchmark.h>

#include <thread>
#include <vector>

#include "xicor/coefficients.hpp"
#include "xicor/inference.hpp"
#include "xicor/kernels.hpp"
#include "xicor/power.hpp"
#include "xicor/random.hpp"
#include "xicor/ranks.hpp"

using namespace xicor;

namespace {

struct Fixture {
    RankVector r;
    XOrder ord;
    std::vector<Rank> laid_out;
    RankVector identity_x;
};

Fixture make_fixture(std::size_t n) {
    Rng rng(1);
    const Sample s = sample_rotation(rng, n, 0.3);
    Fixture f{compute_ranks(s.y), x_order(s.x), {}, {}};
    f.laid_out = ranks_in_x_order(f.r, f.ord);
    std::vector<Rank> id(n);
    for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<Rank>(i + 1);
    f.identity_x = RankVector::from_permutation(id);
    return f;
}

void right_sums_fast(benchmark::State& st) {
    const auto f = make_fixture(static_cast<std::size_t>(st.range(0)));
    const auto M = static_cast<std::size_t>(st.range(1));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::right_neighbor_sums(f.laid_out, M));
}

void right_sums_reference(benchmark::State& st) {
    const auto f = make_fixture(static_cast<std::size_t>(st.range(0)));
    const auto M = static_cast<std::size_t>(st.range(1));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::reference::right_min_sum(f.r, f.ord, M));
}

void symmetric_fast(benchmark::State& st) {
    const auto f = make_fixture(static_cast<std::size_t>(st.range(0)));
    const auto M = static_cast<std::size_t>(st.range(1));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::symmetric_min_sum(f.laid_out, M));
}

void symmetric_reference(benchmark::State& st) {
    const auto f = make_fixture(static_cast<std::size_t>(st.range(0)));
    const auto M = static_cast<std::size_t>(st.range(1));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::reference::symmetric_min_sum(f.r, f.ord, M));
}

void hoeffding_fast(benchmark::State& st) {
    const auto f = make_fixture(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::hoeffding_d(f.laid_out));
}

void hoeffding_reference(benchmark::State& st) {
    const auto f = make_fixture(static_cast<std::size_t>(st.range(0)));
    const RankVector ry = RankVector::from_permutation(f.laid_out);
    for (auto _ : st) benchmark::DoNotOptimize(kernels::reference::hoeffding_d(f.identity_x, ry));
}

void coefficient_xi_pm(benchmark::State& st) {
    Rng rng(2);
    const Sample s = sample_rotation(rng, static_cast<std::size_t>(st.range(0)), 0.0);
    const NeighborCount M{static_cast<std::size_t>(st.range(1))};
    for (auto _ : st) benchmark::DoNotOptimize(xi_pm(s, M).value);
}

void null_replicates_workers(benchmark::State& st) {
    PermutationTestConfig cfg;
    cfg.B = 999;
    cfg.M = NeighborCount{20};
    cfg.seed = 3;
    cfg.workers = st.range(0) == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                   : static_cast<std::size_t>(st.range(0));
    st.counters["workers"] = static_cast<double>(cfg.workers);
    for (auto _ : st) benchmark::DoNotOptimize(null_replicates(1000, cfg));
}

} // namespace

BENCHMARK(right_sums_fast)->ArgsProduct({{1000, 5000}, {1, 20, 200}});
BENCHMARK(right_sums_reference)->ArgsProduct({{1000, 5000}, {1, 20, 200}});
BENCHMARK(symmetric_fast)->ArgsProduct({{1000}, {1, 20, 200}});
BENCHMARK(symmetric_reference)->ArgsProduct({{1000}, {1, 20}});
BENCHMARK(hoeffding_fast)->Arg(1000)->Arg(5000);
BENCHMARK(hoeffding_reference)->Arg(1000)->Arg(5000);
BENCHMARK(coefficient_xi_pm)->ArgsProduct({{1000, 2000, 5000}, {1, 20, 100, 200}});
// 1 = serial, 0 = all hardware threads.
BENCHMARK(null_replicates_workers)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
