#include <benchmark/benchmark.h>

#include <vector>

#include "prodmat/ensemble.hpp"
#include "prodmat/experiment.hpp"
#include "prodmat/hermitization.hpp"
#include "prodmat/limitlaw.hpp"
#include "prodmat/moments.hpp"

using namespace prodmat;

static void BM_sample_chain(benchmark::State& state) {
    const auto profile = make_profile({state.range(0), state.range(0), state.range(0)});
    const auto law = parse_law("gaussian");
    std::uint64_t seed = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(sample_chain(profile, law, seed++));
}
BENCHMARK(BM_sample_chain)->Arg(100)->Arg(400);

static void BM_product_and_svd(benchmark::State& state) {
    const auto profile = make_profile({state.range(0), state.range(0), state.range(0)});
    const auto set = sample_chain(profile, parse_law("gaussian"), 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(singular_values(build_product(set)));
}
BENCHMARK(BM_product_and_svd)->Arg(100)->Arg(400);

static void BM_truncation_level(benchmark::State& state) {
    const auto set =
        sample_chain(make_profile({state.range(0), state.range(0)}), parse_law("threepoint"), 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(select_truncation_level(set));
}
BENCHMARK(BM_truncation_level)->Arg(200)->Arg(400);

static void BM_branch_descent(benchmark::State& state) {
    const auto spec = make_limit_spec(std::vector<double>(std::size_t(state.range(0)), 1.0));
    const auto path = make_v_path(1e-6);
    for (auto _ : state)
        benchmark::DoNotOptimize(track_branch(spec, 1.0, path, Variant::squares));
}
BENCHMARK(BM_branch_descent)->Arg(1)->Arg(2)->Arg(4);

static void BM_density_curve(benchmark::State& state) {
    const auto spec = make_limit_spec({0.5, 0.8});
    const auto edges = support_edge(spec);
    const auto grid = graded_x_grid(edges.first, edges.second, state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(density(spec, grid, 1e-4, true));
}
BENCHMARK(BM_density_curve)->Arg(201)->Arg(1001);

static void BM_exact_moments(benchmark::State& state) {
    const std::vector<BigRat> y = {BigRat(1, 2), BigRat(4, 5)};
    for (auto _ : state)
        benchmark::DoNotOptimize(moments_general_y(2, y, int(state.range(0))));
}
BENCHMARK(BM_exact_moments)->Arg(10)->Arg(30);

static void BM_moment_recurrence(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(fuss_catalan_by_recurrence(int(state.range(0)), 30));
}
BENCHMARK(BM_moment_recurrence)->Arg(1)->Arg(5);

BENCHMARK_MAIN();
