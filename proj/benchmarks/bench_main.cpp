#include <benchmark/benchmark.h>

#include "genprob/asymptotics.hpp"
#include "genprob/expectation.hpp"
#include "genprob/harness.hpp"
#include "genprob/partitions.hpp"
#include "genprob/recognition.hpp"

using namespace genprob;

static void BM_SampleWithCycleType(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto t = build_cycle_type(n, 1, 0.5).type;
    Rng rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(sample_with_cycle_type(t, rng));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SampleWithCycleType)->RangeMultiplier(4)->Range(100, 6400);

static void BM_OrbitsOfPair(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto t = build_cycle_type(n, 1, 0.5).type;
    Rng rng(2);
    const std::vector<Permutation> gens{sample_with_cycle_type(t, rng), sample_with_cycle_type(t, rng)};
    for (auto _ : state) benchmark::DoNotOptimize(orbits(gens, n));
}
BENCHMARK(BM_OrbitsOfPair)->RangeMultiplier(4)->Range(100, 6400);

static void BM_ContainsAlternatingRandomPair(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const bool fast_path = state.range(1) != 0;
    const CycleType t{{n, 1}};
    Rng rng(3);
    std::vector<std::vector<Permutation>> pairs;
    for (int i = 0; i < 16; ++i) pairs.push_back({sample_with_cycle_type(t, rng), sample_with_cycle_type(t, rng)});
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(contains_alternating(pairs[i++ % pairs.size()], n, fast_path));
}
BENCHMARK(BM_ContainsAlternatingRandomPair)->ArgsProduct({{64, 128, 256}, {0, 1}})->Unit(benchmark::kMillisecond);

static void BM_UniformPartition(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(4);
    for (auto _ : state) benchmark::DoNotOptimize(sample_uniform_partition(n, rng));
}
BENCHMARK(BM_UniformPartition)->RangeMultiplier(10)->Range(100, 10000)->Unit(benchmark::kMicrosecond);

static void BM_ExpectedOrbitTotal(benchmark::State& state) {
    const auto kmax = static_cast<std::size_t>(state.range(0));
    const auto t = build_cycle_type(400, 1, 0.5).type;
    for (auto _ : state) benchmark::DoNotOptimize(expected_orbit_total(400, t, t, kmax));
}
BENCHMARK(BM_ExpectedOrbitTotal)->DenseRange(3, 9, 3)->Unit(benchmark::kMillisecond);

static void BM_ApplicationConstant(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(application_constant());
}
BENCHMARK(BM_ApplicationConstant)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
