#include "drmst/baselines.hpp"
#include "drmst/experiments.hpp"
#include "drmst/solvers.hpp"

#include <benchmark/benchmark.h>

using namespace drmst;

namespace {

UncertainGraph instance(int n, double p) { return gen_erdos_renyi(n, p, 42); }

void BM_Prim(benchmark::State& state) {
    const UncertainGraph g = instance(static_cast<int>(state.range(0)), 0.1);
    const WeightVector w = g.mean_weights();
    for (auto _ : state) benchmark::DoNotOptimize(prim(g.graph(), w));
    state.SetItemsProcessed(state.iterations() * g.edge_count());
}
BENCHMARK(BM_Prim)->Arg(100)->Arg(300);

void BM_CeWeights(benchmark::State& state) {
    const UncertainGraph g = instance(static_cast<int>(state.range(0)), 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(g.ce_weights(1.7));
    state.SetItemsProcessed(state.iterations() * g.edge_count());
}
BENCHMARK(BM_CeWeights)->Arg(100)->Arg(300);

void BM_RepeatedPrim(benchmark::State& state) {
    const UncertainGraph g = instance(static_cast<int>(state.range(0)), 0.1);
    const double tau = compute_target(g, 0.2);
    for (auto _ : state) benchmark::DoNotOptimize(solve_rp(g, tau));
}
BENCHMARK(BM_RepeatedPrim)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_Bisection(benchmark::State& state) {
    const UncertainGraph g = instance(static_cast<int>(state.range(0)), 0.1);
    const double tau = compute_target(g, 0.2);
    for (auto _ : state) benchmark::DoNotOptimize(solve_bisection(g, tau));
}
BENCHMARK(BM_Bisection)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_Benders(benchmark::State& state) {
    const UncertainGraph g = instance(static_cast<int>(state.range(0)), 0.8);
    const double tau = compute_target(g, 0.2);
    for (auto _ : state) benchmark::DoNotOptimize(solve_benders(g, tau));
}
BENCHMARK(BM_Benders)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_SampleWeights(benchmark::State& state) {
    const UncertainGraph g = instance(30, 0.3);
    const PiecewiseUniformSampler sampler(g);
    for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(10000, 7));
    state.SetItemsProcessed(state.iterations() * 10000 * g.edge_count());
}
BENCHMARK(BM_SampleWeights);

} // namespace

BENCHMARK_MAIN();
