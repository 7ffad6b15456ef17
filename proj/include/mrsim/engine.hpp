#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mrsim/errors.hpp"
#include "mrsim/types.hpp"

namespace mrsim {

enum class Enforcement { hard, record };

/// Unit used when comparing a reducer's I/O against slack * B.
enum class BoundUnit { items, words };

struct RoundConfig {
    std::uint64_t buffer_capacity = 16;  // B
    std::uint64_t slack = 8;             // c
    Enforcement enforcement = Enforcement::record;
    std::uint64_t seed = 0;
    BoundUnit bound_unit = BoundUnit::items;
    std::size_t max_rounds = 1'000'000;
    int threads = 0;  // 0 = OpenMP default

    std::uint64_t io_limit() const { return slack * buffer_capacity; }
    void validate() const;
};

struct IoSize {
    std::uint64_t items = 0;
    std::uint64_t words = 0;

    IoSize& operator+=(const IoSize& o) {
        items += o.items;
        words += o.words;
        return *this;
    }
    friend IoSize operator+(IoSize a, const IoSize& b) { return a += b; }
    friend bool operator==(const IoSize&, const IoSize&) = default;
};

struct ReducerIo {
    Key key;
    IoSize input;
    IoSize output;
    std::uint64_t extra_work = 0;

    IoSize total() const { return input + output; }
    std::uint64_t work() const { return input.items + output.items + extra_work; }
    friend bool operator==(const ReducerIo&, const ReducerIo&) = default;
};

struct RoundMetrics {
    std::size_t round_index = 0;
    std::vector<ReducerIo> reducers;  // in key order
    IoSize message_complexity;        // M_i
    IoSize max_io;                    // componentwise max over reducers
    std::uint64_t internal_time = 0;  // r_i
    friend bool operator==(const RoundMetrics&, const RoundMetrics&) = default;
};

struct RunMetrics {
    std::size_t rounds = 0;
    std::vector<RoundMetrics> per_round;
    IoSize message_complexity;  // M
    std::uint64_t internal_time = 0;
    IoSize max_io;

    void append(RoundMetrics round);
    void append(const RunMetrics& other);
    friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

class ReduceContext {
public:
    ReduceContext(std::vector<KeyedItem>& intermediate, std::vector<KeyedItem>& finals)
        : intermediate_(intermediate), finals_(finals) {}

    void emit(Key key, Payload payload) { intermediate_.push_back({std::move(key), std::move(payload)}); }
    void emit_final(Key key, Payload payload) { finals_.push_back({std::move(key), std::move(payload)}); }
    void add_work(std::uint64_t units) { extra_work_ += units; }
    std::uint64_t extra_work() const { return extra_work_; }

private:
    std::vector<KeyedItem>& intermediate_;
    std::vector<KeyedItem>& finals_;
    std::uint64_t extra_work_ = 0;
};

/// Appends the mapped pairs of one input item to `out`. An empty MapFn is the identity map.
using MapFn = std::function<void(const KeyedItem& item, std::vector<KeyedItem>& out)>;

/// Receives one key and its canonically ordered payload list.
using ReduceFn = std::function<void(const Key& key, std::span<const Payload> values, ReduceContext& ctx)>;

struct Stage {
    MapFn map;
    ReduceFn reduce;
};

struct RoundResult {
    std::vector<KeyedItem> intermediate;
    std::vector<KeyedItem> finals;
    RoundMetrics metrics;
};

/// One map / shuffle / reduce cycle. Reducers run in parallel; results are
/// independent of the schedule. Outputs are concatenated in key order.
RoundResult run_round(std::vector<KeyedItem> items, const MapFn& map, const ReduceFn& reduce,
                      const RoundConfig& cfg, std::size_t round_index = 1);

/// Sequential implementation of run_round used to cross-check the parallel one.
/// When `group_order_seed` is set, reduce lists are processed in a shuffled order.
RoundResult run_round_reference(std::vector<KeyedItem> items, const MapFn& map,
                                const ReduceFn& reduce, const RoundConfig& cfg,
                                std::size_t round_index = 1,
                                std::optional<std::uint64_t> group_order_seed = std::nullopt);

struct PipelineResult {
    std::vector<KeyedItem> finals;
    std::vector<KeyedItem> pending;  // intermediates left after the last stage
    RunMetrics metrics;
};

/// Runs stages in sequence. Stops early once a stage emits no intermediates
/// when `stop_when_empty` is set.
PipelineResult run_pipeline(std::vector<KeyedItem> initial, const std::vector<Stage>& stages,
                            const RoundConfig& cfg, bool stop_when_empty = true);

/// Round-at-a-time driver for data-dependent loops. Accumulates metrics and
/// enforces the round cap.
class Runner {
public:
    explicit Runner(RoundConfig cfg) : cfg_(std::move(cfg)) { cfg_.validate(); }

    RoundResult step(std::vector<KeyedItem> items, const MapFn& map, const ReduceFn& reduce);

    const RoundConfig& config() const { return cfg_; }
    const RunMetrics& metrics() const { return metrics_; }
    RunMetrics take_metrics() { return std::move(metrics_); }
    void absorb(const RunMetrics& m) { metrics_.append(m); }

private:
    RoundConfig cfg_;
    RunMetrics metrics_;
};

/// Sum over rounds of (r_i + L + M_i / b), using item counts for M_i.
double estimate_time(const RunMetrics& m, double latency, double bandwidth);

/// Returns a description of the first violated metric identity, if any.
std::optional<std::string> metric_identity_violation(const RunMetrics& m);

}  // namespace mrsim
