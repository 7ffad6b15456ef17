#pragma once

#include <exception>
#include <vector>

#include "mrsim/engine.hpp"

namespace mrsim::detail {

struct GroupOutcome {
    Key key;
    IoSize input;
    std::vector<KeyedItem> intermediate;
    std::vector<KeyedItem> finals;
    std::uint64_t extra_work = 0;
    std::exception_ptr error;
};

void run_reducer(GroupOutcome& g, std::span<const Payload> values, const ReduceFn& reduce);

/// Consumes per-group outcomes (in key order): rethrows the first reducer
/// error, applies enforcement, and assembles outputs and metrics.
RoundResult finish_round(std::vector<GroupOutcome>& groups, const RoundConfig& cfg,
                         std::size_t round_index);

}  // namespace mrsim::detail
