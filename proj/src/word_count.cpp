#include "mrsim/apps.hpp"

namespace mrsim {

WordCountResult word_count(const std::vector<std::string>& document, const RoundConfig& cfg) {
    std::vector<KeyedItem> items;
    items.reserve(document.size());
    for (const auto& w : document) items.push_back({{Atom{w}}, {}});
    const MapFn map = [](const KeyedItem& it, std::vector<KeyedItem>& out) {
        out.push_back({it.key, {Word{1}}});
    };
    const ReduceFn reduce = [](const Key& key, std::span<const Payload> values, ReduceContext& ctx) {
        Word n = 0;
        for (const auto& v : values) n += as_word(v[0]);
        ctx.emit_final(key, {n});
    };
    auto res = run_pipeline(std::move(items), {{map, reduce}}, cfg);
    WordCountResult out;
    for (const auto& f : res.finals)
        out.counts[std::get<std::string>(f.key[0])] = as_u64(f.payload[0]);
    out.metrics = std::move(res.metrics);
    return out;
}

}  // namespace mrsim
