#include <benchmark/benchmark.h>

#include "fsde/fraccalc.hpp"
#include "fsde/fracnorms.hpp"
#include "fsde/noise.hpp"

using namespace fsde;

namespace {
SamplePath fbm_path(benchmark::State& state)
{
    return noise::generate_fbm(TimeGrid::uniform(1.0, static_cast<std::size_t>(state.range(0))), HurstParameter(0.75),
                               1, 1);
}
}  // namespace

static void BM_AlphaInftyNorm(benchmark::State& state)
{
    const auto f = fbm_path(state);
    for (auto _ : state) benchmark::DoNotOptimize(fracnorms::alpha_infty_norm(f, AlphaParameter(0.35)));
}
BENCHMARK(BM_AlphaInftyNorm)->Arg(256)->Arg(1024);

static void BM_LambdaAlpha(benchmark::State& state)
{
    const auto g = fbm_path(state);
    for (auto _ : state) benchmark::DoNotOptimize(fracnorms::lambda_alpha(g, FracOrder(0.4)));
}
BENCHMARK(BM_LambdaAlpha)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_StieltjesFractional(benchmark::State& state)
{
    const auto g = fbm_path(state);
    for (auto _ : state) benchmark::DoNotOptimize(fraccalc::stieltjes_integral_fractional(g, g, FracOrder(0.5), 1.0));
}
BENCHMARK(BM_StieltjesFractional)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
