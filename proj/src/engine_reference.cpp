#include <algorithm>
#include <map>
#include <random>

#include "engine_internal.hpp"
#include "mrsim/engine.hpp"

namespace mrsim {

RoundResult run_round_reference(std::vector<KeyedItem> items, const MapFn& map,
                                const ReduceFn& reduce, const RoundConfig& cfg,
                                std::size_t round_index,
                                std::optional<std::uint64_t> group_order_seed) {
    cfg.validate();
    std::vector<KeyedItem> mapped;
    if (map) {
        for (const auto& it : items) map(it, mapped);
    } else {
        mapped = std::move(items);
    }

    std::map<Key, std::vector<std::pair<Payload, std::size_t>>> lists;
    for (std::size_t i = 0; i < mapped.size(); ++i)
        lists[std::move(mapped[i].key)].emplace_back(std::move(mapped[i].payload), i);

    std::vector<detail::GroupOutcome> groups;
    std::vector<std::vector<Payload>> values;
    for (auto& [key, list] : lists) {
        std::sort(list.begin(), list.end());
        detail::GroupOutcome g;
        g.key = key;
        g.input.items = list.size();
        std::vector<Payload> vs;
        for (auto& [p, arrival] : list) {
            g.input.words += word_size(p);
            vs.push_back(std::move(p));
        }
        groups.push_back(std::move(g));
        values.push_back(std::move(vs));
    }

    std::vector<std::size_t> visit(groups.size());
    for (std::size_t i = 0; i < visit.size(); ++i) visit[i] = i;
    if (group_order_seed) {
        std::mt19937_64 rng(*group_order_seed);
        std::shuffle(visit.begin(), visit.end(), rng);
    }
    for (std::size_t g : visit) detail::run_reducer(groups[g], values[g], reduce);
    return detail::finish_round(groups, cfg, round_index);
}

}  // namespace mrsim
