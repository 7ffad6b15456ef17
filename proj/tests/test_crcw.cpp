#include <gtest/gtest.h>

#include <random>

#include "mrsim/apps.hpp"
#include "mrsim/crcw.hpp"
#include "mrsim/oracle/oracles.hpp"
#include "mrsim/tree.hpp"
#include "random_programs.hpp"

using namespace mrsim;

namespace {

// Processor i writes values[i] to cell 0.
class WriteAll final : public CrcwProgram {
public:
    explicit WriteAll(std::vector<Word> v) : v_(std::move(v)) {}
    std::optional<ReadRequest> step_read(std::uint64_t, std::uint64_t, const std::vector<Word>&) const override {
        return std::nullopt;
    }
    ComputeResult step_compute(std::uint64_t, std::uint64_t proc, const std::vector<Word>& regs,
                               std::optional<Word>) const override {
        return {regs, WriteRequest{0, v_[proc]}, true};
    }

private:
    std::vector<Word> v_;
};

// Everyone reads `cell` and stores what it saw.
class ReadAll final : public CrcwProgram {
public:
    explicit ReadAll(std::uint64_t cell) : cell_(cell) {}
    std::optional<ReadRequest> step_read(std::uint64_t, std::uint64_t, const std::vector<Word>&) const override {
        return ReadRequest{cell_};
    }
    ComputeResult step_compute(std::uint64_t, std::uint64_t, const std::vector<Word>&,
                               std::optional<Word> read) const override {
        return {{read.value_or(-1)}, std::nullopt, true};
    }

private:
    std::uint64_t cell_;
};

// Reads cell 0 and writes it plus one back; every step sees the previous step's value.
class Counter final : public CrcwProgram {
public:
    std::optional<ReadRequest> step_read(std::uint64_t, std::uint64_t, const std::vector<Word>&) const override {
        return ReadRequest{0};
    }
    ComputeResult step_compute(std::uint64_t, std::uint64_t, const std::vector<Word>& regs,
                               std::optional<Word> read) const override {
        return {regs, WriteRequest{0, *read + 1}, false};
    }
};

}  // namespace

TEST(Crcw, SumOfConcurrentWrites) {
    const WriteAll prog({3, 5, 7});
    const CrcwRun run = simulate_crcw(prog, 3, {0}, 1, SemigroupOp::sum(), RoundConfig{});
    EXPECT_EQ(run.machine.memory[0], 15);
}

TEST(Crcw, ConcurrentReadBroadcast) {
    const ReadAll prog(2);
    RoundConfig cfg;
    cfg.buffer_capacity = 2;
    const CrcwRun run = simulate_crcw(prog, 4, {0, 0, 42}, 1, SemigroupOp::max(), cfg);
    for (const auto& p : run.machine.procs) EXPECT_EQ(p.registers, std::vector<Word>{42});
}

TEST(Crcw, RoundsPerStep) {
    EXPECT_EQ(crcw_tree_height(16, 4), 2u);
    EXPECT_EQ(crcw_tree_height(1, 4), 0u);
    const ReadAll prog(0);
    RoundConfig cfg;
    cfg.buffer_capacity = 4;
    const CrcwMachine m = make_crcw_machine(prog, 16, {5});
    const CrcwStepResult step = simulate_crcw_step(m, prog, SemigroupOp::sum(), cfg);
    // Three tree phases of two levels each, two more rounds for the step, one to install.
    EXPECT_EQ(step.metrics.rounds, 3u * 2 + 3);
    EXPECT_LE(step.metrics.rounds, 6u * 2 + 4);
}

TEST(Crcw, ReadsSeePreviousStep) {
    const Counter prog;
    const CrcwRun run = simulate_crcw(prog, 1, {10}, 3, SemigroupOp::max(), RoundConfig{});
    EXPECT_EQ(run.machine.memory[0], 13);
    EXPECT_EQ(run.machine, oracle::interpret_crcw(prog, make_crcw_machine(prog, 1, {10}), 3, SemigroupOp::max()));
}

TEST(Crcw, InvalidAddressRejected) {
    const ReadAll prog(9);
    EXPECT_THROW(simulate_crcw(prog, 2, {0}, 1, SemigroupOp::sum(), RoundConfig{}), InvalidAddress);
}

TEST(Crcw, NonSemigroupDetected) {
    SemigroupOp minus{"minus", [](Word a, Word b) { return a - b; }, std::nullopt};
    EXPECT_THROW(probe_semigroup(minus, 1), NonSemigroupDetected);
    EXPECT_NO_THROW(probe_semigroup(SemigroupOp::sum(), 1));
    EXPECT_NO_THROW(probe_semigroup(SemigroupOp::min(), 1));
}

TEST(CrcwApps, Max) {
    EXPECT_EQ(crcw_max({3, 9, 2, 7, 1, 8, 4, 6}, RoundConfig{}).values[0], 9);
    EXPECT_EQ(crcw_max({3, 9, 2}, RoundConfig{}).values[0], 9);
    EXPECT_EQ(crcw_max({-4}, RoundConfig{}).values[0], -4);
}

TEST(CrcwApps, Histogram) {
    EXPECT_EQ(crcw_histogram({0, 1, 0, 2, 0}, 3, RoundConfig{}).values, (std::vector<Word>{3, 1, 1}));
    std::mt19937_64 rng(8);
    std::vector<Word> xs(500);
    for (auto& x : xs) x = static_cast<Word>(rng() % 3);
    RoundConfig cfg;
    cfg.buffer_capacity = 8;
    EXPECT_EQ(crcw_histogram(xs, 3, cfg).values, oracle::histogram(xs, 3));
    EXPECT_THROW(crcw_histogram({5}, 3, cfg), ConfigError);
}

TEST(CrcwProperty, RandomProgramsMatchInterpreter) {
    std::mt19937_64 rng(77);
    const std::vector<SemigroupOp> ops{SemigroupOp::sum(), SemigroupOp::max(), SemigroupOp::min()};
    for (int trial = 0; trial < 30; ++trial) {
        const std::uint64_t P = rng() % 2 ? 8 : 64;
        const std::uint64_t N = rng() % 2 ? 8 : 64;
        const std::size_t T = 1 + rng() % 3;
        const SemigroupOp& f = ops[trial % 3];
        const testkit::RandomCrcw prog(rng(), N);
        std::vector<Word> memory(N);
        for (auto& w : memory) w = static_cast<Word>(rng() % 100);
        RoundConfig cfg;
        cfg.buffer_capacity = 2 + rng() % 7;
        const CrcwRun run = simulate_crcw(prog, P, memory, T, f, cfg);
        EXPECT_EQ(run.machine, oracle::interpret_crcw(prog, make_crcw_machine(prog, P, memory), T, f));
        EXPECT_EQ(metric_identity_violation(run.metrics), std::nullopt);
        for (std::size_t r : run.rounds_per_step)
            EXPECT_LE(r, 6 * crcw_tree_height(P, cfg.buffer_capacity) + 4);
    }
}
