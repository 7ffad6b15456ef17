#include <algorithm>

#include "mrsim/oracle/oracles.hpp"

namespace mrsim::oracle {

BspMachine interpret_bsp(const BspProgram& program, BspMachine machine, std::size_t T) {
    while (machine.supersteps < T && !machine.quiescent()) {
        std::vector<std::vector<std::vector<Word>>> inbox(machine.p);
        for (const auto& msg : machine.in_flight) inbox[msg.dest - 1].push_back(msg.content);
        std::vector<BspMessage> sent;
        for (std::uint64_t i = 0; i < machine.p; ++i) {
            ProcessorState& state = machine.procs[i];
            auto& mine = inbox[i];
            std::sort(mine.begin(), mine.end());
            if (state.halted && mine.empty()) continue;
            std::vector<BspMessage> outbox;
            program.superstep(machine.supersteps, state, machine.memory[i], mine, machine.m, outbox);
            state.id = i + 1;
            if (outbox.size() > machine.m) throw FanOutViolation(i + 1, outbox.size(), machine.m);
            if (machine.memory[i].size() > machine.m)
                throw LocalMemoryOverflow(i + 1, machine.memory[i].size(), machine.m);
            for (auto& msg : outbox) {
                if (msg.dest < 1 || msg.dest > machine.p) throw InvalidAddress("bad destination");
                sent.push_back(std::move(msg));
            }
        }
        std::sort(sent.begin(), sent.end());
        machine.in_flight = std::move(sent);
        ++machine.supersteps;
    }
    return machine;
}

CrcwMachine interpret_crcw(const CrcwProgram& program, CrcwMachine machine, std::size_t T,
                           const SemigroupOp& f) {
    while (machine.steps < T && !machine.all_halted()) {
        const std::vector<Word> before = machine.memory;
        std::vector<std::optional<Word>> written(machine.N);
        for (std::uint64_t i = 0; i < machine.P; ++i) {
            PramProcessor& proc = machine.procs[i];
            if (proc.halted) continue;
            std::optional<Word> value;
            if (auto req = program.step_read(machine.steps, i, proc.registers)) {
                if (req->cell >= machine.N) throw InvalidAddress("read outside memory");
                value = before[req->cell];
            }
            ComputeResult out = program.step_compute(machine.steps, i, proc.registers, value);
            proc.registers = std::move(out.registers);
            proc.halted = out.halted;
            if (out.write) {
                if (out.write->cell >= machine.N) throw InvalidAddress("write outside memory");
                auto& slot = written[out.write->cell];
                slot = slot ? f.combine(*slot, out.write->value) : out.write->value;
            }
        }
        for (std::uint64_t j = 0; j < machine.N; ++j)
            if (written[j]) machine.memory[j] = *written[j];
        ++machine.steps;
    }
    return machine;
}

}  // namespace mrsim::oracle
