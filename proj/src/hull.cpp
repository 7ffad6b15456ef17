#include <algorithm>

#include "mrsim/geometry.hpp"

namespace mrsim {

namespace {

// Chain record payload: [chain, group, position, x, y, index]; chain 0 is lower, 1 is upper.
constexpr Word lower_chain = 0;
constexpr Word upper_chain = 1;

HullVertex vertex_at(const Payload& p, std::size_t at) {
    return {{as_word(p[at]), as_word(p[at + 1])}, as_u64(p[at + 2])};
}

void emit_chain(const Key& key, Word chain, const std::vector<HullVertex>& vs, ReduceContext& ctx) {
    for (std::size_t i = 0; i < vs.size(); ++i)
        ctx.emit(key, {chain, u64_atom(i), vs[i].point.x, vs[i].point.y, u64_atom(vs[i].index)});
}

}  // namespace

HullResult hull_2d(const std::vector<Point2D>& points, const RoundConfig& cfg, const SortOptions& options) {
    HullResult res;
    if (points.empty()) return res;
    Runner runner(cfg);
    const std::uint64_t B = cfg.buffer_capacity;
    constexpr Word limit = Word{1} << 62;
    std::vector<SortRecord> records;
    records.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Point2D& p = points[i];
        if (p.x >= limit || p.x <= -limit || p.y >= limit || p.y <= -limit)
            throw ConfigError("hull coordinates must stay below 2^62 in magnitude");
        records.push_back({p.x, p.y, static_cast<Word>(i)});
    }
    RecordSortResult sorted = sort_records(records, cfg, options);
    runner.absorb(sorted.metrics);

    const std::uint64_t strip = 2 * B;
    std::vector<KeyedItem> items;
    items.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        items.push_back({{u64_atom(sorted.ranks[i] - 1)}, {points[i].x, points[i].y, u64_atom(i)}});
    const MapFn to_strip = [strip](const KeyedItem& it, std::vector<KeyedItem>& out) {
        out.push_back({{u64_atom(as_u64(it.key[0]) / strip)}, it.payload});
    };
    const ReduceFn strip_hull = [](const Key& key, std::span<const Payload> values, ReduceContext& ctx) {
        std::vector<HullVertex> vs;
        vs.reserve(values.size());
        for (const auto& v : values) vs.push_back(vertex_at(v, 0));
        std::vector<HullVertex> lower, upper;
        monotone_chains(vs, lower, upper);
        emit_chain(key, lower_chain, lower, ctx);
        emit_chain(key, upper_chain, upper, ctx);
    };
    RoundResult round = runner.step(std::move(items), to_strip, strip_hull);
    std::uint64_t groups = (points.size() + strip - 1) / strip;

    const ReduceFn merge = [](const Key& key, std::span<const Payload> values, ReduceContext& ctx) {
        std::vector<HullVertex> chains[2];
        for (const auto& v : values) chains[as_word(v[0])].push_back(vertex_at(v, 3));
        std::vector<HullVertex> lower, upper, scratch;
        monotone_chains(chains[lower_chain], lower, scratch);
        monotone_chains(chains[upper_chain], scratch, upper);
        emit_chain(key, lower_chain, lower, ctx);
        emit_chain(key, upper_chain, upper, ctx);
        ctx.add_work(values.size());
    };
    while (groups > 1) {
        const std::uint64_t largest_output = [&] {
            std::uint64_t out = 1;
            for (const auto& r : round.metrics.reducers) out = std::max(out, r.output.items);
            return out;
        }();
        const std::uint64_t fan_in = std::max<std::uint64_t>(2, 3 * B / largest_output);
        const MapFn regroup = [fan_in](const KeyedItem& it, std::vector<KeyedItem>& out) {
            const std::uint64_t g = as_u64(it.key[0]);
            out.push_back({{u64_atom(g / fan_in)},
                           {it.payload[0], u64_atom(g), it.payload[1], it.payload[2], it.payload[3],
                            it.payload[4]}});
        };
        round = runner.step(std::move(round.intermediate), regroup, merge);
        groups = (groups + fan_in - 1) / fan_in;
        ++res.merge_rounds;
    }

    std::vector<HullVertex> chains[2];
    for (const auto& it : round.intermediate) chains[as_word(it.payload[0])].push_back(vertex_at(it.payload, 2));
    res.hull = join_chains(chains[lower_chain], chains[upper_chain]);
    res.metrics = runner.take_metrics();
    return res;
}

}  // namespace mrsim
