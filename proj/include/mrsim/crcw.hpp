#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mrsim/engine.hpp"

namespace mrsim {

/// Commutative, associative write-combining operator.
struct SemigroupOp {
    std::string name;
    std::function<Word(Word, Word)> combine;
    std::optional<Word> identity;

    static SemigroupOp sum();  // wraps modulo 2^64
    static SemigroupOp min();
    static SemigroupOp max();
};

/// Samples values and throws NonSemigroupDetected if `op` is visibly not
/// commutative or associative on them.
void probe_semigroup(const SemigroupOp& op, std::uint64_t seed, std::size_t samples = 64);

struct ReadRequest {
    std::uint64_t cell = 0;
};

struct WriteRequest {
    std::uint64_t cell = 0;
    Word value = 0;
};

struct ComputeResult {
    std::vector<Word> registers;
    std::optional<WriteRequest> write;
    bool halted = false;
};

/// A CRCW PRAM program. Processors and memory cells are numbered from 0.
/// Each step performs at most one read, constant work, and at most one write.
class CrcwProgram {
public:
    virtual ~CrcwProgram() = default;
    virtual std::vector<Word> initial_registers(std::uint64_t proc, std::uint64_t P) const;
    virtual std::optional<ReadRequest> step_read(std::uint64_t step, std::uint64_t proc,
                                                 const std::vector<Word>& registers) const = 0;
    virtual ComputeResult step_compute(std::uint64_t step, std::uint64_t proc,
                                       const std::vector<Word>& registers,
                                       std::optional<Word> read_value) const = 0;
};

struct PramProcessor {
    std::vector<Word> registers;
    bool halted = false;
    friend bool operator==(const PramProcessor&, const PramProcessor&) = default;
};

struct CrcwMachine {
    std::uint64_t P = 0;
    std::uint64_t N = 0;
    std::vector<PramProcessor> procs;
    std::vector<Word> memory;
    std::size_t steps = 0;
    friend bool operator==(const CrcwMachine&, const CrcwMachine&) = default;

    bool all_halted() const;
};

CrcwMachine make_crcw_machine(const CrcwProgram& program, std::uint64_t P,
                              std::vector<Word> memory);

/// Height of each per-cell fan-in tree: ceil(log_B P), 0 when P == 1.
std::uint64_t crcw_tree_height(std::uint64_t P, std::uint64_t B);

struct CrcwStepResult {
    CrcwMachine machine;
    RunMetrics metrics;
};

/// One PRAM step: read fan-in and broadcast, compute, combining write fan-in,
/// and installation of the combined values.
CrcwStepResult simulate_crcw_step(const CrcwMachine& machine, const CrcwProgram& program,
                                  const SemigroupOp& f, const RoundConfig& cfg);

struct CrcwRun {
    CrcwMachine machine;
    RunMetrics metrics;
    std::vector<std::size_t> rounds_per_step;  // last step includes the final install round
};

/// Runs until every processor halts or T steps have executed. Installing a
/// step's writes shares a round with seeding the next step's reads.
CrcwRun simulate_crcw(const CrcwProgram& program, std::uint64_t P, std::vector<Word> memory,
                      std::size_t T, const SemigroupOp& f, const RoundConfig& cfg);

CrcwRun simulate_crcw(const CrcwProgram& program, CrcwMachine machine, std::size_t T,
                      const SemigroupOp& f, const RoundConfig& cfg);

}  // namespace mrsim
