#include <benchmark/benchmark.h>

#include "qprep/angles.hpp"
#include "qprep/circuit.hpp"
#include "qprep/forking.hpp"
#include "qprep/simulator.hpp"

using namespace qprep;

static void SimulateSequential(benchmark::State& state) {
    const auto spec = DistributionSpec::gaussian(0.0, 1.0);
    const int n = static_cast<int>(state.range(0));
    const auto circuit =
        build_upsampling_circuit(build_angle_table(spec, SamplingGrid(n, 12.0, 0.0, 0.0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate(circuit));
    }
    state.SetComplexityN(1 << n);
}
BENCHMARK(SimulateSequential)->DenseRange(6, 14, 2)->Complexity();

static void SimulateForked(benchmark::State& state) {
    const auto spec = DistributionSpec::gaussian(0.0, 1.0);
    const int n = static_cast<int>(state.range(0));
    const auto table = build_angle_table(spec, SamplingGrid(n, 12.0, 0.0, 0.0));
    const auto [circuit, layout] = fork_transform(table);
    for (auto _ : state) {
        const StateVector sv = simulate(circuit);
        benchmark::DoNotOptimize(marginal(sv, layout.output_register));
    }
}
BENCHMARK(SimulateForked)->DenseRange(2, 4, 1);

static void OracleAmplitudes(benchmark::State& state) {
    const auto spec = DistributionSpec::gaussian(0.0, 1.0);
    const int n = static_cast<int>(state.range(0));
    const auto table = build_angle_table(spec, SamplingGrid(n, 12.0, 0.0, 0.0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle_amplitudes(table));
    }
    state.SetComplexityN(1 << n);
}
BENCHMARK(OracleAmplitudes)->DenseRange(6, 14, 2)->Complexity();

static void PostselectDiscrete(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto probs =
        DiscreteSpec(std::vector<double>(std::size_t{1} << (n - 1),
                                         1.0 / static_cast<double>(std::size_t{1} << (n - 1))));
    const StateVector sv = simulate(build_discrete_circuit(discrete_theta(probs), n));
    for (auto _ : state) {
        benchmark::DoNotOptimize(postselect(sv, n - 1, 0));
    }
}
BENCHMARK(PostselectDiscrete)->DenseRange(4, 12, 4);

BENCHMARK_MAIN();
