#include <benchmark/benchmark.h>

#include "qprep/angles.hpp"
#include "qprep/circuit.hpp"
#include "qprep/forking.hpp"

using namespace qprep;

static void PeriodicSumGaussian(benchmark::State& state) {
    const auto spec = DistributionSpec::gaussian(0.0, 1.0);
    const double period = 12.0 / static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(periodic_sum(spec, -6.0, period));
    }
}
BENCHMARK(PeriodicSumGaussian)->RangeMultiplier(4)->Range(8, 8 << 8);

static void PeriodicSumCauchy(benchmark::State& state) {
    const auto spec = DistributionSpec::cauchy(0.0, 1.0);
    const double period = 40.0 / static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(periodic_sum(spec, -20.0, period));
    }
}
BENCHMARK(PeriodicSumCauchy)->RangeMultiplier(4)->Range(8, 8 << 8);

static void AngleTableGaussian(benchmark::State& state) {
    const auto spec = DistributionSpec::gaussian(0.0, 1.0);
    const int n = static_cast<int>(state.range(0));
    const SamplingGrid grid(n, 12.0, 0.0, 0.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_angle_table(spec, grid));
    }
    state.SetComplexityN(1 << n);
}
BENCHMARK(AngleTableGaussian)->DenseRange(6, 12, 2)->Complexity();

static void ForkTransform(benchmark::State& state) {
    const auto spec = DistributionSpec::gaussian(0.0, 1.0);
    const int n = static_cast<int>(state.range(0));
    const auto table = build_angle_table(spec, SamplingGrid(n, 12.0, 0.0, 0.0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fork_transform(table));
    }
}
BENCHMARK(ForkTransform)->DenseRange(4, 12, 2);

static void LowerToBasis(benchmark::State& state) {
    const auto spec = DistributionSpec::gaussian(0.0, 1.0);
    const int n = static_cast<int>(state.range(0));
    const auto circuit =
        build_upsampling_circuit(build_angle_table(spec, SamplingGrid(n, 12.0, 0.0, 0.0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lower_to_basis(circuit));
    }
}
BENCHMARK(LowerToBasis)->DenseRange(4, 10, 2);

BENCHMARK_MAIN();
