#include <benchmark/benchmark.h>

#include <vector>

#include "helix/decomp.hpp"
#include "helix/infotheory.hpp"
#include "helix/stats.hpp"
#include "helix/synthlab.hpp"

namespace {

helix::SynthParams population(std::uint32_t n) {
    helix::SynthParams p;
    p.n_firms = n;
    p.n_municipalities = 40;
    p.coupling = 0.5;
    p.foreign_share_target = 0.1;
    p.seed = 7;
    return p;
}

void BM_Generate(benchmark::State& state) {
    const auto p = population(static_cast<std::uint32_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(helix::generate(p));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Generate)->Arg(500)->Arg(5000)->Arg(50000);

void BM_BuildCube(benchmark::State& state) {
    const auto firms = helix::generate(population(static_cast<std::uint32_t>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(helix::build_cube(firms));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildCube)->Arg(500)->Arg(5000)->Arg(50000);

void BM_EntropyProfile(benchmark::State& state) {
    const auto cube = helix::build_cube(helix::generate(population(static_cast<std::uint32_t>(state.range(0)))));
    for (auto _ : state) benchmark::DoNotOptimize(helix::entropy_profile(cube));
}
BENCHMARK(BM_EntropyProfile)->Arg(500)->Arg(5000)->Arg(50000);

void BM_Decompose(benchmark::State& state) {
    const auto cube = helix::build_cube(helix::generate(population(static_cast<std::uint32_t>(state.range(0)))));
    for (auto _ : state) benchmark::DoNotOptimize(helix::decompose(cube));
}
BENCHMARK(BM_Decompose)->Arg(500)->Arg(5000)->Arg(50000);

void BM_ChiSquareTail(benchmark::State& state) {
    double x = 0.0;
    for (auto _ : state) {
        x = x > 30.0 ? 0.1 : x + 0.37;
        benchmark::DoNotOptimize(helix::chi_square_upper_tail(x, 9));
    }
}
BENCHMARK(BM_ChiSquareTail);

void BM_Sweep(benchmark::State& state) {
    const auto p = population(500);
    std::vector<double> shares;
    for (int i = 0; i <= 20; ++i) shares.push_back(i / 20.0);
    for (auto _ : state) benchmark::DoNotOptimize(helix::sweep_foreign_share(p, shares));
}
BENCHMARK(BM_Sweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
