#include <benchmark/benchmark.h>

#include <random>

#include "mrsim/engine.hpp"

namespace {

std::vector<mrsim::KeyedItem> make_items(std::size_t n, std::uint64_t distinct) {
    std::mt19937_64 rng(7);
    std::vector<mrsim::KeyedItem> items;
    items.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        items.push_back({{static_cast<mrsim::Word>(rng() % distinct)}, {static_cast<mrsim::Word>(i)}});
    return items;
}

const mrsim::ReduceFn sum_reduce = [](const mrsim::Key& key, std::span<const mrsim::Payload> values,
                                      mrsim::ReduceContext& ctx) {
    mrsim::Word total = 0;
    for (const auto& v : values) total += mrsim::as_word(v[0]);
    ctx.emit_final(key, {total});
};

mrsim::RoundConfig config() {
    mrsim::RoundConfig cfg;
    cfg.buffer_capacity = 1 << 20;
    return cfg;
}

void BM_parallel(benchmark::State& state) {
    const auto items = make_items(state.range(0), state.range(0) / 16);
    const auto cfg = config();
    for (auto _ : state) benchmark::DoNotOptimize(mrsim::run_round(items, {}, sum_reduce, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_reference(benchmark::State& state) {
    const auto items = make_items(state.range(0), state.range(0) / 16);
    const auto cfg = config();
    for (auto _ : state)
        benchmark::DoNotOptimize(mrsim::run_round_reference(items, {}, sum_reduce, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_parallel)->RangeMultiplier(8)->Range(1 << 12, 1 << 18)->UseRealTime();
BENCHMARK(BM_reference)->RangeMultiplier(8)->Range(1 << 12, 1 << 18)->UseRealTime();

BENCHMARK_MAIN();
