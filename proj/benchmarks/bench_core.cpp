#include <benchmark/benchmark.h>

#include <random>

#include "potkit/definiteness.hpp"
#include "potkit/domains.hpp"
#include "potkit/kernels.hpp"
#include "potkit/linalg.hpp"
#include "potkit/spectral.hpp"
#include "potkit/stolarsky.hpp"

using namespace potkit;

namespace {

Matrix random_symmetric(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = gauss(rng);
    return m;
}

void BM_JacobiEigen(benchmark::State& state) {
    const Matrix m = random_symmetric(static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(jacobi_eigensystem(m));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_JacobiEigen)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_GramEnergy(benchmark::State& state) {
    const auto space = std::make_shared<DiscreteSpace>(
        DiscreteSpace::sphere_fibonacci(3, static_cast<std::size_t>(state.range(0))));
    const auto mu = WeightedMeasure::uniform(space);
    for (auto _ : state) {
        // fresh spec each round so the Gram memo does not short-circuit
        const KernelSpec kernel = KernelSpec::neg_euclidean_distance();
        benchmark::DoNotOptimize(energy(kernel, mu));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GramEnergy)->RangeMultiplier(2)->Range(32, 512)->Complexity();

void BM_GramEnergyCached(benchmark::State& state) {
    const auto space = std::make_shared<DiscreteSpace>(
        DiscreteSpace::sphere_fibonacci(3, static_cast<std::size_t>(state.range(0))));
    const auto mu = WeightedMeasure::uniform(space);
    const KernelSpec kernel = KernelSpec::neg_euclidean_distance();
    energy(kernel, mu); // warm the memo
    for (auto _ : state) {
        benchmark::DoNotOptimize(energy(kernel, mu));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GramEnergyCached)->RangeMultiplier(2)->Range(32, 512)->Complexity();

void BM_MercerDecompose(benchmark::State& state) {
    const auto space = std::make_shared<DiscreteSpace>(
        DiscreteSpace::sphere_fibonacci(3, static_cast<std::size_t>(state.range(0))));
    const auto mu = WeightedMeasure::uniform(space);
    const KernelSpec kernel = KernelSpec::neg_euclidean_distance().with_shift(2.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mercer_decompose(kernel, mu));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MercerDecompose)->RangeMultiplier(2)->Range(16, 128)->Complexity();

void BM_Classify(benchmark::State& state) {
    const auto space = std::make_shared<DiscreteSpace>(
        DiscreteSpace::sphere_random(3, static_cast<std::size_t>(state.range(0)), 11));
    const Matrix g = random_symmetric(static_cast<std::size_t>(state.range(0)), 13);
    for (auto _ : state) {
        const KernelSpec kernel = KernelSpec::gram_table(g, *space);
        benchmark::DoNotOptimize(classify(kernel, space));
    }
}
BENCHMARK(BM_Classify)->Arg(10)->Arg(20)->Arg(40);

void BM_CapDiscrepancy(benchmark::State& state) {
    const DiscreteSpace points = DiscreteSpace::sphere_fibonacci(3, 12);
    CapDiscrepancyOptions opts;
    opts.center_nodes = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(cap_discrepancy(points, opts));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CapDiscrepancy)->RangeMultiplier(4)->Range(1024, 16384)->Complexity();

void BM_GaussGegenbauer(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(gauss_gegenbauer(static_cast<std::size_t>(state.range(0)), 0.5));
    }
}
BENCHMARK(BM_GaussGegenbauer)->Arg(16)->Arg(64)->Arg(128);

} // namespace

BENCHMARK_MAIN();
