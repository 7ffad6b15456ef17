#include "mrsim/apps.hpp"
#include "mrsim/crcw.hpp"

namespace mrsim {

namespace {

/// Every processor writes one value derived from its input, then halts.
class SingleWrite final : public CrcwProgram {
public:
    SingleWrite(const std::vector<Word>& inputs, bool count) : inputs_(inputs), count_(count) {}

    std::vector<Word> initial_registers(std::uint64_t proc, std::uint64_t) const override {
        return {inputs_[proc]};
    }
    std::optional<ReadRequest> step_read(std::uint64_t, std::uint64_t, const std::vector<Word>&) const override {
        return std::nullopt;
    }
    ComputeResult step_compute(std::uint64_t, std::uint64_t, const std::vector<Word>& regs,
                               std::optional<Word>) const override {
        const WriteRequest w = count_ ? WriteRequest{static_cast<std::uint64_t>(regs[0]), 1}
                                      : WriteRequest{0, regs[0]};
        return {regs, w, true};
    }

private:
    const std::vector<Word>& inputs_;
    bool count_;
};

CrcwAppResult run_single_write(const std::vector<Word>& X, std::vector<Word> memory, bool count,
                               const SemigroupOp& f, const RoundConfig& cfg) {
    CrcwAppResult out;
    if (X.empty()) {
        out.values = std::move(memory);
        return out;
    }
    const SingleWrite program(X, count);
    CrcwRun run = simulate_crcw(program, X.size(), std::move(memory), 1, f, cfg);
    out.values = std::move(run.machine.memory);
    out.metrics = std::move(run.metrics);
    out.rounds_per_step = run.rounds_per_step.empty() ? 0 : run.rounds_per_step.front();
    return out;
}

}  // namespace

CrcwAppResult crcw_max(const std::vector<Word>& X, const RoundConfig& cfg) {
    return run_single_write(X, {INT64_MIN}, false, SemigroupOp::max(), cfg);
}

CrcwAppResult crcw_histogram(const std::vector<Word>& X, std::uint64_t buckets, const RoundConfig& cfg) {
    for (Word v : X)
        if (v < 0 || static_cast<std::uint64_t>(v) >= buckets)
            throw ConfigError("histogram value " + std::to_string(v) + " outside the bucket range");
    return run_single_write(X, std::vector<Word>(buckets, 0), true, SemigroupOp::sum(), cfg);
}

}  // namespace mrsim
