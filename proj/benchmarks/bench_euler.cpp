#include <benchmark/benchmark.h>

#include "fsde/euler.hpp"
#include "fsde/noise.hpp"
#include "fsde/registry.hpp"

using namespace fsde;

static void BM_EulerLinear(benchmark::State& state)
{
    const auto d = static_cast<double>(state.range(1));
    const sde::SDEProblem p{sde::coefficient_registry().make("linear", {{"d", d}, {"a", 0.3}, {"sw", 0.5}}),
                            Vector::Ones(state.range(1)), 1.0, HurstParameter(0.75)};
    const auto grid = TimeGrid::uniform(1.0, static_cast<std::size_t>(state.range(0)));
    const auto nb = noise::NoiseGenerator(grid, p.hurst, p.coeffs.m, p.coeffs.r)(0);
    for (auto _ : state) benchmark::DoNotOptimize(sde::euler_path(p, nb));
}
BENCHMARK(BM_EulerLinear)->Args({1024, 1})->Args({1024, 4});
