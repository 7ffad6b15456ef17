#include "mrsim/apps.hpp"

namespace mrsim {

AnnResult ann_1d(const std::vector<Word>& X, const RoundConfig& cfg, const SortOptions& options) {
    Runner runner(cfg);

    // Collapse duplicates so neighbours in rank order are strictly increasing.
    std::vector<KeyedItem> items;
    items.reserve(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) items.push_back({{X[i]}, {u64_atom(i)}});
    const ReduceFn distinct = [](const Key& key, std::span<const Payload>, ReduceContext& ctx) {
        ctx.emit(key, {});
    };
    const auto reps = runner.step(items, MapFn{}, distinct).intermediate;

    std::vector<SortRecord> records;
    records.reserve(reps.size());
    for (const auto& r : reps) records.push_back({as_word(r.key[0]), 0, as_word(r.key[0])});
    RecordSortResult sorted = sort_records(records, runner.config(), options);
    runner.absorb(sorted.metrics);

    // Rank r meets rank r + 1.
    std::vector<KeyedItem> ranked;
    ranked.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i)
        ranked.push_back({{u64_atom(sorted.ranks[i])}, {records[i].k0}});
    const MapFn pair_up = [](const KeyedItem& it, std::vector<KeyedItem>& out) {
        const std::uint64_t r = as_u64(it.key[0]);
        out.push_back({it.key, {Word{0}, it.payload[0]}});
        if (r > 1) out.push_back({{u64_atom(r - 1)}, {Word{1}, it.payload[0]}});
    };
    const ReduceFn adjacent = [](const Key&, std::span<const Payload> values, ReduceContext& ctx) {
        Atom self;
        std::optional<Atom> next;
        for (const auto& v : values) (as_word(v[0]) == 0 ? self : next.emplace()) = v[1];
        if (next) ctx.emit({self}, {Word{1}, *next});
    };
    auto successors = runner.step(std::move(ranked), pair_up, adjacent).intermediate;

    // Hand each original item its value's successor.
    for (auto& it : items) it.payload = {Word{0}, it.payload[0]};
    std::move(successors.begin(), successors.end(), std::back_inserter(items));
    const ReduceFn join = [](const Key& key, std::span<const Payload> values, ReduceContext& ctx) {
        std::optional<Atom> next;
        for (const auto& v : values)
            if (as_word(v[0]) == 1) next = v[1];
        for (const auto& v : values) {
            if (as_word(v[0]) != 0) continue;
            Payload out{v[1]};
            if (next) out.push_back(*next);
            ctx.emit_final(key, std::move(out));
        }
    };
    const auto joined = runner.step(std::move(items), MapFn{}, join);

    AnnResult res;
    res.successor.resize(X.size());
    for (const auto& f : joined.finals)
        if (f.payload.size() > 1) res.successor[as_u64(f.payload[0])] = as_word(f.payload[1]);
    res.metrics = runner.take_metrics();
    return res;
}

}  // namespace mrsim
