#pragma once

#include <cstdint>
#include <vector>

#include "mrsim/engine.hpp"
#include "mrsim/tree.hpp"

namespace mrsim {

struct WeightedInput {
    Payload value;
    std::uint64_t weight = 1;
};

struct IndexedValue {
    Payload value;
    std::uint64_t prefix_sum = 0;  // inclusive
};

/// Where an input landed: its leaf and the 63-bit hash that orders inputs sharing a leaf.
struct LeafAssignment {
    std::uint64_t leaf = 0;
    std::uint64_t tiebreak = 0;
};

struct IndexingResult {
    std::vector<IndexedValue> indexed;       // in input order
    std::vector<LeafAssignment> assignment;  // in input order
    RunMetrics metrics;
};

/// Leaf and tiebreak the indexing pipeline assigns to input `arrival` under `seed`.
LeafAssignment assign_leaf(const Payload& value, std::uint64_t arrival, std::uint64_t seed,
                           const TreeParams& params);

/// Random indexing / prefix sums through an implicit B-ary tree in exactly 2L + 1
/// rounds. Throws LeafOverflow when more than B inputs share a leaf.
IndexingResult random_index(const std::vector<WeightedInput>& inputs, const TreeParams& params,
                            const RoundConfig& cfg);

struct RetriedIndexing {
    IndexingResult result;
    std::size_t attempts = 0;
    std::uint64_t seed_used = 0;
    RunMetrics all_attempts;  // includes the rounds of failed attempts
};

/// Reruns with derived seeds on LeafOverflow; throws RetryExhausted after `max_attempts`.
RetriedIndexing random_index_with_retry(const std::vector<WeightedInput>& inputs,
                                        const TreeParams& params, const RoundConfig& cfg,
                                        std::size_t max_attempts = 8);

}  // namespace mrsim
