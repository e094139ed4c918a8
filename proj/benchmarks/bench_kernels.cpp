// SPDX-License-Identifier: Apache-2.0
#include "pair_workload.hpp"

#include "angproj/lalg.hpp"
#include "angproj/spectrum.hpp"

#include <benchmark/benchmark.h>

using namespace angproj;

static void BM_PairKernels_Cramer(benchmark::State& state)
{
    const auto w = fixtures::make_pair_workload(0.7);
    for (auto _ : state) benchmark::DoNotOptimize(fixtures::pair_kernels_cramer(w));
    state.counters["kernels"] = static_cast<double>(w.quads.size());
}
BENCHMARK(BM_PairKernels_Cramer)->Unit(benchmark::kMicrosecond);

static void BM_PairKernels_Direct(benchmark::State& state)
{
    const auto w = fixtures::make_pair_workload(0.7);
    const auto s = manybody::transformation_kernel(w.phi, w.u);
    for (auto _ : state) benchmark::DoNotOptimize(fixtures::pair_kernels_direct(w, s));
    state.counters["kernels"] = static_cast<double>(w.quads.size());
}
BENCHMARK(BM_PairKernels_Direct)->Unit(benchmark::kMicrosecond);

static void BM_ReplacedDeterminant(benchmark::State& state)
{
    fixtures::Rng rng(1);
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = fixtures::random_matrix(rng, n);
    std::vector<std::vector<double>> b(2, std::vector<double>(n));
    for (auto& v : b)
        for (auto& x : v) x = rng.uniform();
    const std::size_t rows[] = {0, 1};
    const std::size_t cols[] = {0, n - 1};
    for (auto _ : state) {
        const auto lu = lalg::lu_factor(a);
        const auto x = lalg::solve_columns(lu, b);
        benchmark::DoNotOptimize(lalg::replaced_determinant(lalg::determinant(lu), x, rows, cols));
    }
}
BENCHMARK(BM_ReplacedDeterminant)->RangeMultiplier(2)->Range(4, 64);

static void BM_FixtureSpectrum(benchmark::State& state)
{
    const auto request = spectrum::make_request(fixtures::two_shell_model(), {},
                                                static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(spectrum::compute_spectrum(request).levels.size());
}
BENCHMARK(BM_FixtureSpectrum)->Arg(32)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
