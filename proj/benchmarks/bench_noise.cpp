#include <benchmark/benchmark.h>

#include "fsde/noise.hpp"

using namespace fsde;

static void BM_CholeskyFactor(benchmark::State& state)
{
    const auto grid = TimeGrid::uniform(1.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(noise::CholeskySampler(grid, HurstParameter(0.75)));
}
BENCHMARK(BM_CholeskyFactor)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_CholeskySample(benchmark::State& state)
{
    const noise::CholeskySampler s(TimeGrid::uniform(1.0, static_cast<std::size_t>(state.range(0))),
                                   HurstParameter(0.75));
    std::uint64_t p = 0;
    for (auto _ : state) benchmark::DoNotOptimize(s.sample(1, p++, 1));
}
BENCHMARK(BM_CholeskySample)->Arg(256)->Arg(1024);

static void BM_CirculantSample(benchmark::State& state)
{
    const noise::CirculantSampler s(TimeGrid::uniform(1.0, static_cast<std::size_t>(state.range(0))),
                                    HurstParameter(0.75));
    std::uint64_t p = 0;
    for (auto _ : state) benchmark::DoNotOptimize(s.sample(1, p++, 1));
}
BENCHMARK(BM_CirculantSample)->Arg(256)->Arg(1024)->Arg(16384);

static void BM_Brownian(benchmark::State& state)
{
    const auto grid = TimeGrid::uniform(1.0, static_cast<std::size_t>(state.range(0)));
    std::uint64_t p = 0;
    for (auto _ : state) benchmark::DoNotOptimize(noise::generate_bm(grid, 1, 1, p++));
}
BENCHMARK(BM_Brownian)->Arg(1024);
