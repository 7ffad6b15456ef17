#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mrsim/engine.hpp"

namespace mrsim {

struct WordCountResult {
    std::map<std::string, std::uint64_t> counts;
    RunMetrics metrics;
};

/// Single-round word count keyed by the word itself.
WordCountResult word_count(const std::vector<std::string>& document, const RoundConfig& cfg);

/// Record ordered by (k0, k1, id); `id` must be unique and distinguishes equal keys.
struct SortRecord {
    Word k0 = 0;
    Word k1 = 0;
    Word id = 0;
    friend auto operator<=>(const SortRecord&, const SortRecord&) = default;
};

enum class Tiebreak { position, random_index };

struct SortOptions {
    double sample_factor = 6.0;      // splitter sample target per group, in units of B
    std::size_t max_attempts = 5;
    Tiebreak tiebreak = Tiebreak::position;
};

struct SortPlanSummary {
    std::uint64_t processors = 0;
    std::uint64_t levels = 0;
    std::uint64_t fan_out = 0;  // sub-groups per split
    std::size_t supersteps = 0;
};

struct RecordSortResult {
    std::vector<std::uint64_t> ranks;  // ranks[i] is the 1-based rank of records[i]
    RunMetrics metrics;                // every attempt, including failed ones
    std::size_t attempts = 0;
    SortPlanSummary plan;
};

/// Sample sort run as a BSP program with p = ceil(2N / B) processors.
RecordSortResult sort_records(const std::vector<SortRecord>& records, const RoundConfig& cfg,
                              const SortOptions& options = {});

struct RankedItem {
    Word value = 0;
    std::uint64_t rank = 0;
    friend bool operator==(const RankedItem&, const RankedItem&) = default;
};

struct SortResult {
    std::vector<RankedItem> ranked;  // in input order
    std::vector<Word> tiebreak;      // secondary key used for each input
    RunMetrics metrics;
    std::size_t attempts = 0;
    SortPlanSummary plan;
};

/// Ranks X; equal values are ordered by the tiebreak key.
SortResult mr_sort(const std::vector<Word>& X, const RoundConfig& cfg, const SortOptions& options = {});

struct AnnResult {
    std::vector<std::optional<Word>> successor;  // in input order
    RunMetrics metrics;
};

/// Successor (smallest strictly larger element) of every input.
AnnResult ann_1d(const std::vector<Word>& X, const RoundConfig& cfg, const SortOptions& options = {});

struct CrcwAppResult {
    std::vector<Word> values;
    RunMetrics metrics;
    std::size_t rounds_per_step = 0;
};

/// Maximum via one PRAM step with every processor writing to cell 0.
CrcwAppResult crcw_max(const std::vector<Word>& X, const RoundConfig& cfg);

/// Bucket counts via one PRAM step with Sum-combined writes of 1.
CrcwAppResult crcw_histogram(const std::vector<Word>& X, std::uint64_t buckets, const RoundConfig& cfg);

}  // namespace mrsim
