#include "mrsim/indexing.hpp"

#include "mrsim/hash.hpp"

namespace mrsim {

namespace {

// Payload layouts. Records sort by (tag, first_leaf, tiebreak, arrival), which
// is the left-to-right leaf order of the inputs they describe.
//   climbing / stored: [tag, first_leaf, tiebreak, arrival, kind, weight, ...]
//     kind item: value atoms follow
//     kind node: [level, index] of the node that stores the subtree follow
//   prefix:            [tag_prefix, running_sum]
constexpr Word tag_up = 0;
constexpr Word tag_stored = 1;
constexpr Word tag_prefix = 2;
constexpr Word kind_item = 0;
constexpr Word kind_node = 1;
constexpr std::size_t head = 6;

Key node_key(std::uint64_t level, std::uint64_t index) { return {u64_atom(level), u64_atom(index)}; }

Payload retag(const Payload& p, Word tag) {
    Payload q = p;
    q[0] = tag;
    return q;
}

void pass_through(const Key& key, std::span<const Payload> values, ReduceContext& ctx) {
    for (const auto& v : values) ctx.emit(key, v);
}

// Emits the child records of an active node in leaf order, handing each
// subtree its starting offset.
void distribute_prefixes(std::uint64_t running, std::span<const Payload> values, Word child_tag,
                         ReduceContext& ctx) {
    for (const auto& v : values) {
        if (as_word(v[0]) != child_tag) continue;
        const std::uint64_t weight = as_u64(v[5]);
        if (as_word(v[4]) == kind_item) {
            running += weight;
            Payload out{u64_atom(running)};
            out.insert(out.end(), v.begin() + head, v.end());
            ctx.emit_final({v[3]}, std::move(out));
        } else {
            ctx.emit(node_key(as_u64(v[head]), as_u64(v[head + 1])), {tag_prefix, u64_atom(running)});
            running += weight;
        }
    }
}

IndexingResult run_indexing(const std::vector<WeightedInput>& inputs, const TreeParams& params,
                            Runner& runner, std::uint64_t seed) {
    const std::uint64_t B = params.B;
    const std::uint64_t L = params.L;
    IndexingResult res;
    res.assignment.reserve(inputs.size());

    std::vector<KeyedItem> items;
    items.reserve(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const LeafAssignment a = assign_leaf(inputs[i].value, i, seed, params);
        res.assignment.push_back(a);
        Payload p{tag_up, u64_atom(a.leaf), u64_atom(a.tiebreak), u64_atom(i), kind_item,
                  u64_atom(inputs[i].weight)};
        p.insert(p.end(), inputs[i].value.begin(), inputs[i].value.end());
        items.push_back({{u64_atom(i)}, std::move(p)});
    }

    // Initialization map: each input goes to its leaf.
    const MapFn to_leaf = [L](const KeyedItem& it, std::vector<KeyedItem>& out) {
        out.push_back({node_key(L, as_u64(it.payload[1])), it.payload});
    };

    std::vector<KeyedItem> current = std::move(items);
    for (std::uint64_t r = 1; r <= L; ++r) {
        const std::uint64_t active = L - r + 1;
        const ReduceFn up = [active, B, L](const Key& key, std::span<const Payload> values,
                                           ReduceContext& ctx) {
            const std::uint64_t level = as_u64(key[0]);
            if (level != active) return pass_through(key, values, ctx);
            const std::uint64_t index = as_u64(key[1]);
            std::size_t climbing = 0;
            for (const auto& v : values) climbing += as_word(v[0]) == tag_up;
            if (level == L && climbing > B) throw LeafOverflow(index, climbing);
            const Key up_key = node_key(level - 1, index / B);
            if (climbing == 1) {
                for (const auto& v : values)
                    as_word(v[0]) == tag_up ? ctx.emit(up_key, v) : ctx.emit(key, v);
                return;
            }
            std::uint64_t sum = 0;
            Word first_leaf = -1;
            for (const auto& v : values) {
                if (as_word(v[0]) == tag_up) {
                    sum += as_u64(v[5]);
                    if (first_leaf < 0) first_leaf = as_word(v[1]);
                    ctx.emit(key, retag(v, tag_stored));
                } else {
                    ctx.emit(key, v);
                }
            }
            ctx.emit(up_key, {tag_up, first_leaf, Word{0}, Word{0}, kind_node, u64_atom(sum),
                              u64_atom(level), u64_atom(index)});
        };
        RoundResult rr = runner.step(std::move(current), r == 1 ? to_leaf : MapFn{}, up);
        current = std::move(rr.intermediate);
    }

    std::vector<KeyedItem> finals;
    for (std::uint64_t active = 0; active <= L; ++active) {
        const ReduceFn down = [active](const Key& key, std::span<const Payload> values,
                                       ReduceContext& ctx) {
            if (as_u64(key[0]) != active) return pass_through(key, values, ctx);
            if (active == 0) return distribute_prefixes(0, values, tag_up, ctx);
            std::uint64_t start = 0;
            for (const auto& v : values)
                if (as_word(v[0]) == tag_prefix) start = as_u64(v[1]);
            distribute_prefixes(start, values, tag_stored, ctx);
        };
        RoundResult rr = runner.step(std::move(current), MapFn{}, down);
        current = std::move(rr.intermediate);
        std::move(rr.finals.begin(), rr.finals.end(), std::back_inserter(finals));
    }

    res.indexed.resize(inputs.size());
    for (auto& f : finals) {
        const std::size_t arrival = as_u64(f.key[0]);
        res.indexed[arrival].prefix_sum = as_u64(f.payload[0]);
        res.indexed[arrival].value.assign(f.payload.begin() + 1, f.payload.end());
    }
    return res;
}

}  // namespace

LeafAssignment assign_leaf(const Payload& value, std::uint64_t arrival, std::uint64_t seed,
                           const TreeParams& params) {
    return {bounded(mix(seed, {arrival, 0x1eafULL}), params.leaf_count), hash_atoms(seed, value) >> 1};
}

IndexingResult random_index(const std::vector<WeightedInput>& inputs, const TreeParams& params,
                            const RoundConfig& cfg) {
    if (inputs.size() > params.Nhat)
        throw ConfigError("input count exceeds Nhat");
    Runner runner(cfg);
    IndexingResult res = run_indexing(inputs, params, runner, cfg.seed);
    res.metrics = runner.take_metrics();
    return res;
}

RetriedIndexing random_index_with_retry(const std::vector<WeightedInput>& inputs,
                                        const TreeParams& params, const RoundConfig& cfg,
                                        std::size_t max_attempts) {
    if (inputs.size() > params.Nhat)
        throw ConfigError("input count exceeds Nhat");
    RetriedIndexing out;
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        const std::uint64_t seed = attempt == 0 ? cfg.seed : mix(cfg.seed, {attempt, 0x7e7dULL});
        Runner runner(cfg);
        try {
            out.result = run_indexing(inputs, params, runner, seed);
        } catch (const LeafOverflow&) {
            out.all_attempts.append(runner.metrics());
            continue;
        }
        out.result.metrics = runner.take_metrics();
        out.all_attempts.append(out.result.metrics);
        out.attempts = attempt + 1;
        out.seed_used = seed;
        return out;
    }
    throw RetryExhausted("indexing hit leaf overflow on " + std::to_string(max_attempts) + " seeds");
}

}  // namespace mrsim
