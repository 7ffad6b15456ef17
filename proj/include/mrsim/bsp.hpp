#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mrsim/engine.hpp"

namespace mrsim {

/// A local memory cell. Cells hold a short fixed-bound record of words.
using Cell = std::vector<Word>;

struct ProcessorState {
    std::uint64_t id = 0;  // 1..p
    std::vector<Word> user;
    bool halted = false;
    friend bool operator==(const ProcessorState&, const ProcessorState&) = default;
};

struct BspMessage {
    std::uint64_t dest = 0;  // 1..p
    std::vector<Word> content;
    friend bool operator==(const BspMessage&, const BspMessage&) = default;
    friend auto operator<=>(const BspMessage&, const BspMessage&) = default;
};

struct BspBounds {
    std::size_t state_words = 64;
    std::size_t cell_words = 8;
    std::size_t message_words = 8;
};

/// A BSP algorithm. `superstep` must be a deterministic function of its arguments.
/// The inbox arrives sorted by content; messages carry no sender unless the
/// program puts one in the content.
class BspProgram {
public:
    virtual ~BspProgram() = default;
    virtual std::vector<Word> initial_state(std::uint64_t id, std::uint64_t p) const;
    virtual void superstep(std::uint64_t step, ProcessorState& state, std::vector<Cell>& cells,
                           std::span<const std::vector<Word>> inbox, std::size_t m,
                           std::vector<BspMessage>& outbox) const = 0;
    virtual BspBounds bounds() const { return {}; }
};

struct BspMachine {
    std::uint64_t p = 0;
    std::size_t m = 0;  // local memory capacity and per-superstep fan-out limit
    std::vector<ProcessorState> procs;         // procs[i - 1] has id i
    std::vector<std::vector<Cell>> memory;     // memory[i - 1][j - 1] is cell j of processor i
    std::vector<BspMessage> in_flight;         // sorted
    std::size_t supersteps = 0;
    friend bool operator==(const BspMachine&, const BspMachine&) = default;

    /// All cells in owner-major order.
    std::vector<Cell> flatten() const;
    bool quiescent() const;
};

/// Owner-major partition: m = ceil(N / p), cell k goes to processor ceil(k / m)
/// at address ((k - 1) mod m) + 1. `capacity` overrides the local memory limit.
BspMachine distribute(const std::vector<Word>& words, std::uint64_t p, const BspProgram& program,
                      std::size_t capacity = 0);
BspMachine distribute_cells(std::vector<Cell> cells, std::uint64_t p, const BspProgram& program,
                            std::size_t capacity = 0);

/// Places cells at random positions using the indexing pipeline first; the
/// indexing rounds are appended to `metrics`.
BspMachine distribute_unindexed(const std::vector<Cell>& cells, std::uint64_t p,
                                const BspProgram& program, const RoundConfig& cfg,
                                RunMetrics& metrics, std::size_t capacity = 0);

/// Checks one processor's superstep output against the machine limits.
void validate_superstep(const BspProgram& program, const ProcessorState& state,
                        const std::vector<Cell>& cells, const std::vector<BspMessage>& outbox,
                        std::uint64_t p, std::size_t m);

struct BspRun {
    BspMachine machine;
    RunMetrics metrics;
};

/// One engine round per superstep; stops after T supersteps or once every
/// processor has halted with no messages in flight.
BspRun simulate_bsp(const BspProgram& program, BspMachine initial, std::size_t T,
                    const RoundConfig& cfg);

/// Continues a simulation inside an existing runner so callers can combine
/// BSP phases with other rounds under one metrics record.
BspMachine simulate_bsp(const BspProgram& program, BspMachine initial, std::size_t T,
                        Runner& runner);

}  // namespace mrsim
