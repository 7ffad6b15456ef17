#include <gtest/gtest.h>

#include <random>

#include "mrsim/bsp.hpp"
#include "mrsim/oracle/oracles.hpp"
#include "random_programs.hpp"

using namespace mrsim;

namespace {

class Increment final : public BspProgram {
public:
    void superstep(std::uint64_t, ProcessorState& state, std::vector<Cell>& cells,
                   std::span<const std::vector<Word>>, std::size_t, std::vector<BspMessage>&) const override {
        for (auto& c : cells) ++c[0];
        state.halted = true;
    }
};

class Rotate final : public BspProgram {
public:
    explicit Rotate(std::uint64_t p) : p_(p) {}
    void superstep(std::uint64_t step, ProcessorState& state, std::vector<Cell>& cells,
                   std::span<const std::vector<Word>> inbox, std::size_t,
                   std::vector<BspMessage>& outbox) const override {
        if (step == 0) {
            for (const auto& c : cells) outbox.push_back({state.id % p_ + 1, {c[0]}});
            return;
        }
        for (std::size_t i = 0; i < inbox.size() && i < cells.size(); ++i) cells[i][0] = inbox[i][0];
        state.halted = true;
    }

private:
    std::uint64_t p_;
};

class Spammer final : public BspProgram {
public:
    void superstep(std::uint64_t, ProcessorState&, std::vector<Cell>&, std::span<const std::vector<Word>>,
                   std::size_t m, std::vector<BspMessage>& outbox) const override {
        for (std::size_t i = 0; i <= m; ++i) outbox.push_back({1, {1}});
    }
};

class Hoarder final : public BspProgram {
public:
    void superstep(std::uint64_t, ProcessorState&, std::vector<Cell>& cells, std::span<const std::vector<Word>>,
                   std::size_t m, std::vector<BspMessage>&) const override {
        cells.resize(m + 1, Cell{0});
    }
};

class BadAddress final : public BspProgram {
public:
    void superstep(std::uint64_t, ProcessorState&, std::vector<Cell>&, std::span<const std::vector<Word>>,
                   std::size_t, std::vector<BspMessage>& outbox) const override {
        outbox.push_back({0, {1}});
    }
};

}  // namespace

TEST(Bsp, DistributeCeilingPartition) {
    const Increment prog;
    const BspMachine a = distribute({1, 2, 3, 4, 5}, 2, prog);
    EXPECT_EQ(a.m, 3u);
    EXPECT_EQ(a.memory[0].size(), 3u);
    EXPECT_EQ(a.memory[1], (std::vector<Cell>{{4}, {5}}));
    const BspMachine b = distribute({1, 2, 3, 4}, 4, prog);
    EXPECT_EQ(b.m, 1u);
    for (const auto& mem : b.memory) EXPECT_EQ(mem.size(), 1u);
    const BspMachine c = distribute({1, 2, 3}, 5, prog);
    EXPECT_EQ(c.m, 1u);
    EXPECT_TRUE(c.memory[3].empty());
    EXPECT_TRUE(c.memory[4].empty());
    EXPECT_EQ(c.procs[4].id, 5u);
}

TEST(Bsp, IncrementOneRound) {
    const Increment prog;
    const BspRun run = simulate_bsp(prog, distribute({1, 2, 3, 4}, 2, prog), 5, RoundConfig{});
    EXPECT_EQ(run.machine.flatten(), (std::vector<Cell>{{2}, {3}, {4}, {5}}));
    EXPECT_EQ(run.metrics.rounds, 1u);
}

TEST(Bsp, RotateMatchesInterpreter) {
    const Rotate prog(2);
    const BspMachine start = distribute({7, 9}, 2, prog);
    const BspRun run = simulate_bsp(prog, start, 2, RoundConfig{});
    EXPECT_EQ(run.machine.flatten(), (std::vector<Cell>{{9}, {7}}));
    EXPECT_EQ(run.machine, oracle::interpret_bsp(prog, start, 2));
    EXPECT_EQ(run.metrics.rounds, 2u);
}

TEST(Bsp, LimitsEnforced) {
    const Spammer spam;
    EXPECT_THROW(simulate_bsp(spam, distribute({1, 2, 3, 4}, 2, spam), 1, RoundConfig{}), FanOutViolation);
    const Hoarder hoard;
    EXPECT_THROW(simulate_bsp(hoard, distribute({1, 2, 3, 4}, 2, hoard), 1, RoundConfig{}), LocalMemoryOverflow);
    const BadAddress bad;
    EXPECT_THROW(simulate_bsp(bad, distribute({1, 2}, 2, bad), 1, RoundConfig{}), InvalidAddress);
}

TEST(Bsp, DistributeUnindexedKeepsCells) {
    const Increment prog;
    std::vector<Cell> cells;
    for (Word i = 0; i < 40; ++i) cells.push_back({i, i * i});
    RunMetrics metrics;
    RoundConfig cfg;
    cfg.seed = 4;
    const BspMachine m = distribute_unindexed(cells, 5, prog, cfg, metrics);
    auto flat = m.flatten();
    std::sort(flat.begin(), flat.end());
    EXPECT_EQ(flat, cells);
    EXPECT_GT(metrics.rounds, 0u);
}

TEST(BspProperty, RandomProgramsMatchInterpreter) {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        const std::uint64_t p = std::vector<std::uint64_t>{2, 8, 32}[rng() % 3];
        const std::size_t m = rng() % 2 ? 4 : 16;
        const std::size_t T = 1 + rng() % 5;
        const testkit::RandomBsp prog(rng(), p, T);
        std::vector<Word> words(p * m - rng() % m);
        for (auto& w : words) w = static_cast<Word>(rng() % 1000);
        const BspMachine start = distribute(words, p, prog, m);
        RoundConfig cfg;
        cfg.buffer_capacity = m;
        const BspRun run = simulate_bsp(prog, start, T, cfg);
        EXPECT_EQ(run.machine, oracle::interpret_bsp(prog, start, T));
        EXPECT_EQ(run.metrics.rounds, T);
        EXPECT_EQ(metric_identity_violation(run.metrics), std::nullopt);
        EXPECT_LE(run.metrics.message_complexity.items, 8 * T * (words.size() + p));
    }
}
