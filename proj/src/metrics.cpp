#include <algorithm>

#include "mrsim/engine.hpp"

namespace mrsim {

void RunMetrics::append(RoundMetrics round) {
    ++rounds;
    round.round_index = rounds;
    message_complexity += round.message_complexity;
    internal_time += round.internal_time;
    max_io.items = std::max(max_io.items, round.max_io.items);
    max_io.words = std::max(max_io.words, round.max_io.words);
    per_round.push_back(std::move(round));
}

void RunMetrics::append(const RunMetrics& other) {
    for (const auto& r : other.per_round) append(r);
}

double estimate_time(const RunMetrics& m, double latency, double bandwidth) {
    if (!(bandwidth > 0)) throw ConfigError("bandwidth must be positive");
    if (latency < 0) throw ConfigError("latency must be nonnegative");
    double total = 0;
    for (const auto& r : m.per_round)
        total += static_cast<double>(r.internal_time) + latency +
                 static_cast<double>(r.message_complexity.items) / bandwidth;
    return total;
}

std::optional<std::string> metric_identity_violation(const RunMetrics& m) {
    if (m.rounds != m.per_round.size()) return "t differs from the number of recorded rounds";
    IoSize total;
    std::uint64_t r = 0;
    IoSize max_all;
    for (const auto& round : m.per_round) {
        IoSize sum;
        IoSize mx;
        std::uint64_t work = 0;
        for (const auto& red : round.reducers) {
            const IoSize n = red.total();
            sum += n;
            mx.items = std::max(mx.items, n.items);
            mx.words = std::max(mx.words, n.words);
            work = std::max(work, red.work());
        }
        const std::string where = "round " + std::to_string(round.round_index);
        if (!(sum == round.message_complexity)) return where + ": M_i differs from the sum of n_ij";
        if (!(mx == round.max_io)) return where + ": max_io differs from the largest n_ij";
        if (round.internal_time < mx.items) return where + ": r_i below max n_ij";
        if (round.internal_time != work) return where + ": r_i differs from the largest reducer work";
        total += sum;
        r += round.internal_time;
        max_all.items = std::max(max_all.items, mx.items);
        max_all.words = std::max(max_all.words, mx.words);
    }
    if (!(total == m.message_complexity)) return "M differs from the sum of M_i";
    if (r != m.internal_time) return "r differs from the sum of r_i";
    if (!(max_all == m.max_io)) return "max_io differs from the per-round maxima";
    return std::nullopt;
}

}  // namespace mrsim
