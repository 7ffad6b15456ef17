#include "mrsim/engine.hpp"

#include <omp.h>

#include <algorithm>
#include <numeric>
#include <parallel/algorithm>

#include "engine_internal.hpp"

namespace mrsim {

void RoundConfig::validate() const {
    if (buffer_capacity < 2) throw ConfigError("buffer capacity B must be at least 2");
    if (slack < 1) throw ConfigError("slack factor c must be at least 1");
    if (max_rounds < 1) throw ConfigError("round cap must be positive");
}

namespace detail {

void run_reducer(GroupOutcome& g, std::span<const Payload> values, const ReduceFn& reduce) {
    try {
        ReduceContext ctx(g.intermediate, g.finals);
        reduce(g.key, values, ctx);
        g.extra_work = ctx.extra_work();
    } catch (...) {
        g.error = std::current_exception();
    }
}

static IoSize measure(const std::vector<KeyedItem>& items) {
    IoSize s;
    s.items = items.size();
    for (const auto& it : items) s.words += word_size(it.payload);
    return s;
}

RoundResult finish_round(std::vector<GroupOutcome>& groups, const RoundConfig& cfg,
                         std::size_t round_index) {
    RoundResult res;
    RoundMetrics& m = res.metrics;
    m.round_index = round_index;
    m.reducers.reserve(groups.size());
    std::size_t n_inter = 0;
    std::size_t n_final = 0;
    for (auto& g : groups) {
        if (g.error) std::rethrow_exception(g.error);
        ReducerIo io;
        io.input = g.input;
        io.output = measure(g.intermediate) + measure(g.finals);
        io.extra_work = g.extra_work;
        const IoSize total = io.total();
        if (cfg.enforcement == Enforcement::hard) {
            const std::uint64_t measured =
                cfg.bound_unit == BoundUnit::items ? total.items : total.words;
            if (measured > cfg.io_limit())
                throw BufferExceeded(g.key, total.items, total.words, cfg.io_limit(), round_index);
        }
        m.message_complexity += total;
        m.max_io.items = std::max(m.max_io.items, total.items);
        m.max_io.words = std::max(m.max_io.words, total.words);
        m.internal_time = std::max(m.internal_time, io.work());
        io.key = std::move(g.key);
        m.reducers.push_back(std::move(io));
        n_inter += g.intermediate.size();
        n_final += g.finals.size();
    }
    res.intermediate.reserve(n_inter);
    res.finals.reserve(n_final);
    for (auto& g : groups) {
        std::move(g.intermediate.begin(), g.intermediate.end(), std::back_inserter(res.intermediate));
        std::move(g.finals.begin(), g.finals.end(), std::back_inserter(res.finals));
    }
    return res;
}

}  // namespace detail

namespace {

std::vector<KeyedItem> apply_map(std::vector<KeyedItem> items, const MapFn& map, int threads) {
    if (!map) return items;
    const std::size_t n = items.size();
    const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(n, 256));
    std::vector<std::vector<KeyedItem>> parts(chunks);
    std::vector<std::exception_ptr> errors(chunks);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t lo = n * c / chunks;
        const std::size_t hi = n * (c + 1) / chunks;
        try {
            for (std::size_t i = lo; i < hi; ++i) map(items[i], parts[c]);
        } catch (...) {
            errors[c] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::size_t total = 0;
    for (auto& p : parts) total += p.size();
    std::vector<KeyedItem> out;
    out.reserve(total);
    for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(out));
    return out;
}

}  // namespace

RoundResult run_round(std::vector<KeyedItem> items, const MapFn& map, const ReduceFn& reduce,
                      const RoundConfig& cfg, std::size_t round_index) {
    cfg.validate();
    const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
    std::vector<KeyedItem> mapped = apply_map(std::move(items), map, threads);

    // Shuffle: canonical order is (key, payload, arrival index).
    std::vector<std::uint32_t> order(mapped.size());
    std::iota(order.begin(), order.end(), 0u);
    auto less = [&](std::uint32_t a, std::uint32_t b) {
        const KeyedItem& x = mapped[a];
        const KeyedItem& y = mapped[b];
        if (x.key != y.key) return x.key < y.key;
        if (x.payload != y.payload) return x.payload < y.payload;
        return a < b;
    };
    if (threads > 1 && order.size() > 4096)
        __gnu_parallel::sort(order.begin(), order.end(), less);
    else
        std::sort(order.begin(), order.end(), less);

    std::vector<Payload> payloads(order.size());
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i == 0 || mapped[order[i]].key != mapped[order[i - 1]].key) starts.push_back(i);
    }
    starts.push_back(order.size());

    const std::size_t n_groups = starts.size() - 1;
    std::vector<detail::GroupOutcome> groups(n_groups);
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (std::size_t g = 0; g < n_groups; ++g) {
        auto& out = groups[g];
        out.key = std::move(mapped[order[starts[g]]].key);
        for (std::size_t i = starts[g]; i < starts[g + 1]; ++i) {
            payloads[i] = std::move(mapped[order[i]].payload);
            out.input.words += word_size(payloads[i]);
        }
        out.input.items = starts[g + 1] - starts[g];
        detail::run_reducer(out, std::span<const Payload>(payloads.data() + starts[g], out.input.items),
                            reduce);
    }
    return detail::finish_round(groups, cfg, round_index);
}

RoundResult Runner::step(std::vector<KeyedItem> items, const MapFn& map, const ReduceFn& reduce) {
    if (metrics_.rounds >= cfg_.max_rounds)
        throw StageDivergence("round cap of " + std::to_string(cfg_.max_rounds) + " reached");
    RoundResult r = run_round(std::move(items), map, reduce, cfg_, metrics_.rounds + 1);
    metrics_.append(r.metrics);
    return r;
}

PipelineResult run_pipeline(std::vector<KeyedItem> initial, const std::vector<Stage>& stages,
                            const RoundConfig& cfg, bool stop_when_empty) {
    PipelineResult out;
    if (stages.empty()) {
        out.finals = std::move(initial);
        return out;
    }
    if (stages.size() > cfg.max_rounds)
        throw StageDivergence("pipeline of " + std::to_string(stages.size()) +
                              " stages exceeds the round cap");
    Runner runner(cfg);
    std::vector<KeyedItem> current = std::move(initial);
    for (const auto& stage : stages) {
        RoundResult r = runner.step(std::move(current), stage.map, stage.reduce);
        std::move(r.finals.begin(), r.finals.end(), std::back_inserter(out.finals));
        current = std::move(r.intermediate);
        if (stop_when_empty && current.empty()) break;
    }
    out.pending = std::move(current);
    out.metrics = runner.take_metrics();
    return out;
}

}  // namespace mrsim
