#include <benchmark/benchmark.h>

#include "wafomlab/enumerator.hpp"
#include "wafomlab/search.hpp"
#include "wafomlab/wafom.hpp"

namespace {

using namespace wafomlab;

PointGroup make_group(std::uint32_t s, std::uint32_t n, std::uint32_t d, std::uint64_t seed) {
    GroupSpec g({2});
    auto rng = trial_rng(seed, 0);
    return span(random_generator_set(rng, g, s, n, d));
}

void BM_span(benchmark::State& state) {
    GroupSpec g({2});
    const auto d = std::uint32_t(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto rng = trial_rng(seed++, 0);
        auto gens = random_generator_set(rng, g, 4, 8, d);
        benchmark::DoNotOptimize(span(gens).order());
    }
}
BENCHMARK(BM_span)->Arg(8)->Arg(12)->Arg(16);

void BM_wafom_fast(benchmark::State& state) {
    const auto p = make_group(4, 8, std::uint32_t(state.range(0)), 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(wafom_fast(p));
    }
    state.SetItemsProcessed(state.iterations() * p.order());
}
BENCHMARK(BM_wafom_fast)->Arg(8)->Arg(12)->Arg(16);

void BM_weight_enumerator(benchmark::State& state) {
    const auto p = make_group(2, 6, std::uint32_t(state.range(0)), 11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(weight_enumerator(p).coeffs.size());
    }
}
BENCHMARK(BM_weight_enumerator)->Arg(6)->Arg(10);

void BM_min_dick_weight(benchmark::State& state) {
    const auto p = make_group(2, 8, std::uint32_t(state.range(0)), 13);
    for (auto _ : state) {
        benchmark::DoNotOptimize(min_dick_weight(p).value.value_or(0));
    }
}
BENCHMARK(BM_min_dick_weight)->Arg(6)->Arg(10);

void BM_dual(benchmark::State& state) {
    const auto p = make_group(2, std::uint32_t(state.range(0)), 4, 17);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dual(p).size());
    }
}
BENCHMARK(BM_dual)->Arg(6)->Arg(8);

} // namespace

BENCHMARK_MAIN();
