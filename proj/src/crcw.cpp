#include "mrsim/crcw.hpp"

#include <algorithm>

#include "mrsim/hash.hpp"
#include "mrsim/tree.hpp"

namespace mrsim {

SemigroupOp SemigroupOp::sum() {
    return {"sum",
            [](Word a, Word b) {
                return static_cast<Word>(static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(b));
            },
            Word{0}};
}

SemigroupOp SemigroupOp::min() {
    return {"min", [](Word a, Word b) { return std::min(a, b); }, INT64_MAX};
}

SemigroupOp SemigroupOp::max() {
    return {"max", [](Word a, Word b) { return std::max(a, b); }, INT64_MIN};
}

void probe_semigroup(const SemigroupOp& op, std::uint64_t seed, std::size_t samples) {
    if (!op.combine) throw NonSemigroupDetected("semigroup '" + op.name + "' has no operator");
    const Word fixed[] = {0, 1, -1, 2, 7, INT64_MAX, INT64_MIN};
    auto sample = [&](std::uint64_t i, std::uint64_t lane) -> Word {
        const std::uint64_t h = mix(seed, {i, lane, 0x5e31ULL});
        if (h % 4 == 0) return fixed[(h >> 8) % std::size(fixed)];
        if (h % 4 == 1) return static_cast<Word>(h >> 40) - (1LL << 23);
        return static_cast<Word>(h);
    };
    for (std::uint64_t i = 0; i < samples; ++i) {
        const Word a = sample(i, 0), b = sample(i, 1), c = sample(i, 2);
        if (op.combine(a, b) != op.combine(b, a))
            throw NonSemigroupDetected("'" + op.name + "' is not commutative on " +
                                       std::to_string(a) + ", " + std::to_string(b));
        if (op.combine(op.combine(a, b), c) != op.combine(a, op.combine(b, c)))
            throw NonSemigroupDetected("'" + op.name + "' is not associative on " +
                                       std::to_string(a) + ", " + std::to_string(b) + ", " +
                                       std::to_string(c));
    }
}

std::vector<Word> CrcwProgram::initial_registers(std::uint64_t, std::uint64_t) const { return {}; }

bool CrcwMachine::all_halted() const {
    return std::all_of(procs.begin(), procs.end(), [](const auto& p) { return p.halted; });
}

CrcwMachine make_crcw_machine(const CrcwProgram& program, std::uint64_t P, std::vector<Word> memory) {
    if (P < 1) throw ConfigError("a PRAM needs at least one processor");
    CrcwMachine m;
    m.P = P;
    m.N = memory.size();
    m.memory = std::move(memory);
    m.procs.resize(P);
    for (std::uint64_t i = 0; i < P; ++i) m.procs[i].registers = program.initial_registers(i, P);
    return m;
}

std::uint64_t crcw_tree_height(std::uint64_t P, std::uint64_t B) { return ceil_log(B, P); }

namespace {

// Keys: [0, j] carries processor j and memory cell j; [1, j, level, index] is
// a node of the fan-in tree of cell j. Payload tags:
constexpr Word t_proc = 0;      // [t_proc, halted, registers...]
constexpr Word t_cell = 1;      // [t_cell, value]
constexpr Word t_root_req = 2;  // [t_root_req, rep...] a reader subtree asks cell j
constexpr Word t_new_value = 3; // [t_new_value, value] combined write to install
constexpr Word t_read = 4;      // [t_read, value] answer delivered to a processor
constexpr Word t_up_req = 5;    // [t_up_req, rep...] climbing read request
constexpr Word t_stored = 6;    // [t_stored, rep...] child remembered by a branching node
constexpr Word t_value = 7;     // [t_value, value] descending read answer
constexpr Word t_write = 8;     // [t_write, value] climbing write

// A representative is either a processor [0, id, 0] or a tree node [1, level, index].
constexpr Word rep_proc = 0;
constexpr Word rep_node = 1;

enum class Phase { seed, read_up, fetch, read_down, compute, write_up, install };

Key machine_key(std::uint64_t j) { return {Word{0}, u64_atom(j)}; }
Key tree_key(std::uint64_t j, std::uint64_t level, std::uint64_t index) {
    return {Word{1}, u64_atom(j), u64_atom(level), u64_atom(index)};
}

Payload rep_payload(Word tag, Word kind, std::uint64_t a, std::uint64_t b) {
    return {tag, kind, u64_atom(a), u64_atom(b)};
}

std::vector<Word> registers_of(const Payload& p) {
    std::vector<Word> r;
    for (std::size_t i = 2; i < p.size(); ++i) r.push_back(as_word(p[i]));
    return r;
}

Payload proc_payload(const std::vector<Word>& regs, bool halted) {
    Payload p{t_proc, Word{halted ? 1 : 0}};
    for (Word w : regs) p.emplace_back(w);
    return p;
}

struct StepContext {
    const CrcwProgram* program;
    const SemigroupOp* f;
    std::uint64_t P, N, B, L, step;
};

// Sends the answer `value` for tree `j` to a representative.
void answer(std::uint64_t j, const Payload& rep, Word value, ReduceContext& ctx) {
    if (as_word(rep[1]) == rep_proc)
        ctx.emit(machine_key(as_u64(rep[2])), {t_read, value});
    else
        ctx.emit(tree_key(j, as_u64(rep[2]), as_u64(rep[3])), {t_value, value});
}

void reduce_machine(const StepContext& c, Phase phase, const Key& key,
                    std::span<const Payload> values, ReduceContext& ctx) {
    const std::uint64_t j = as_u64(key[1]);
    const Payload* proc = nullptr;
    std::optional<Word> cell, new_value, read;
    std::vector<const Payload*> root_reqs;
    for (const auto& v : values) {
        switch (as_word(v[0])) {
            case t_proc: proc = &v; break;
            case t_cell: cell = as_word(v[1]); break;
            case t_new_value: new_value = as_word(v[1]); break;
            case t_read: read = as_word(v[1]); break;
            case t_root_req: root_reqs.push_back(&v); break;
            default: throw StageDivergence("unexpected record at memory cell " + std::to_string(j));
        }
    }
    if ((phase == Phase::seed || phase == Phase::install) && new_value) {
        if (!cell) throw InvalidAddress("write to missing cell " + std::to_string(j));
        cell = new_value;
        new_value.reset();
    }
    if (cell) ctx.emit(key, {t_cell, *cell});
    if (new_value) ctx.emit(key, {t_new_value, *new_value});
    for (const Payload* r : root_reqs) {
        if (phase == Phase::fetch)
            answer(j, *r, *cell, ctx);
        else
            ctx.emit(key, *r);
    }
    if (!proc) {
        if (read) ctx.emit(key, {t_read, *read});
        return;
    }
    const bool halted = as_word((*proc)[1]) != 0;
    if (halted || (phase != Phase::seed && phase != Phase::compute)) {
        ctx.emit(key, *proc);
        if (read) ctx.emit(key, {t_read, *read});
        return;
    }
    const std::vector<Word> regs = registers_of(*proc);
    if (phase == Phase::seed) {
        ctx.emit(key, *proc);
        if (auto req = c.program->step_read(c.step, j, regs)) {
            if (req->cell >= c.N)
                throw InvalidAddress("processor " + std::to_string(j) + " read cell " +
                                     std::to_string(req->cell));
            if (c.L == 0)
                ctx.emit(machine_key(req->cell), rep_payload(t_root_req, rep_proc, j, 0));
            else
                ctx.emit(tree_key(req->cell, c.L - 1, j / c.B), rep_payload(t_up_req, rep_proc, j, 0));
        }
        return;
    }
    ComputeResult out = c.program->step_compute(c.step, j, regs, read);
    ctx.emit(key, proc_payload(out.registers, out.halted));
    if (out.write) {
        if (out.write->cell >= c.N)
            throw InvalidAddress("processor " + std::to_string(j) + " wrote cell " +
                                 std::to_string(out.write->cell));
        if (c.L == 0)
            ctx.emit(machine_key(out.write->cell), {t_new_value, out.write->value});
        else
            ctx.emit(tree_key(out.write->cell, c.L - 1, j / c.B), {t_write, out.write->value});
    }
}

void reduce_tree(const StepContext& c, Phase phase, std::uint64_t active, const Key& key,
                 std::span<const Payload> values, ReduceContext& ctx) {
    const std::uint64_t j = as_u64(key[1]);
    const std::uint64_t level = as_u64(key[2]);
    const std::uint64_t index = as_u64(key[3]);
    const bool here = level == active &&
                      (phase == Phase::read_up || phase == Phase::read_down || phase == Phase::write_up);
    if (!here) {
        for (const auto& v : values) ctx.emit(key, v);
        return;
    }
    if (phase == Phase::read_up) {
        std::size_t climbing = 0;
        for (const auto& v : values) climbing += as_word(v[0]) == t_up_req;
        for (const auto& v : values) {
            if (as_word(v[0]) != t_up_req) {
                ctx.emit(key, v);
            } else if (level == 0) {
                Payload r = v;
                r[0] = t_root_req;
                ctx.emit(machine_key(j), std::move(r));
            } else if (climbing == 1) {
                ctx.emit(tree_key(j, level - 1, index / c.B), v);
            } else {
                Payload s = v;
                s[0] = t_stored;
                ctx.emit(key, std::move(s));
            }
        }
        if (level > 0 && climbing > 1)
            ctx.emit(tree_key(j, level - 1, index / c.B), rep_payload(t_up_req, rep_node, level, index));
        return;
    }
    if (phase == Phase::read_down) {
        std::optional<Word> value;
        for (const auto& v : values)
            if (as_word(v[0]) == t_value) value = as_word(v[1]);
        for (const auto& v : values) {
            if (as_word(v[0]) != t_stored) continue;
            if (!value) {
                ctx.emit(key, v);
                continue;
            }
            answer(j, v, *value, ctx);
        }
        return;
    }
    std::optional<Word> folded;
    for (const auto& v : values) {
        if (as_word(v[0]) != t_write) {
            ctx.emit(key, v);
            continue;
        }
        const Word w = as_word(v[1]);
        folded = folded ? c.f->combine(*folded, w) : w;
    }
    if (!folded) return;
    if (level == 0)
        ctx.emit(machine_key(j), {t_new_value, *folded});
    else
        ctx.emit(tree_key(j, level - 1, index / c.B), {t_write, *folded});
}

std::vector<KeyedItem> encode(const CrcwMachine& m) {
    std::vector<KeyedItem> items;
    for (std::uint64_t i = 0; i < m.P; ++i)
        items.push_back({machine_key(i), proc_payload(m.procs[i].registers, m.procs[i].halted)});
    for (std::uint64_t j = 0; j < m.N; ++j) items.push_back({machine_key(j), {t_cell, m.memory[j]}});
    return items;
}

void decode(const std::vector<KeyedItem>& items, CrcwMachine& m) {
    for (const auto& it : items) {
        if (as_word(it.key[0]) != 0) throw StageDivergence("tree records left after a PRAM step");
        const std::uint64_t j = as_u64(it.key[1]);
        const Word tag = as_word(it.payload[0]);
        if (tag == t_proc)
            m.procs[j] = {registers_of(it.payload), as_word(it.payload[1]) != 0};
        else if (tag == t_cell)
            m.memory[j] = as_word(it.payload[1]);
        else
            throw StageDivergence("in-flight records left after a PRAM step");
    }
}

// Runs the rounds of one PRAM step starting with `first` (seed, possibly
// installing the previous step's writes). Ends with the write fan-in.
std::vector<KeyedItem> run_step(const StepContext& c, std::vector<KeyedItem> items, Runner& runner) {
    auto round = [&](Phase phase, std::uint64_t active) {
        const ReduceFn reduce = [&c, phase, active](const Key& key, std::span<const Payload> values,
                                                    ReduceContext& ctx) {
            if (as_word(key[0]) == 0)
                reduce_machine(c, phase, key, values, ctx);
            else
                reduce_tree(c, phase, active, key, values, ctx);
        };
        items = runner.step(std::move(items), MapFn{}, reduce).intermediate;
    };
    round(Phase::seed, 0);
    for (std::uint64_t k = 0; k < c.L; ++k) round(Phase::read_up, c.L - 1 - k);
    round(Phase::fetch, 0);
    for (std::uint64_t level = 1; level < c.L; ++level) round(Phase::read_down, level);
    round(Phase::compute, 0);
    for (std::uint64_t k = 0; k < c.L; ++k) round(Phase::write_up, c.L - 1 - k);
    return items;
}

std::vector<KeyedItem> install(const StepContext& c, std::vector<KeyedItem> items, Runner& runner) {
    const ReduceFn reduce = [&c](const Key& key, std::span<const Payload> values, ReduceContext& ctx) {
        if (as_word(key[0]) == 0)
            reduce_machine(c, Phase::install, key, values, ctx);
        else
            for (const auto& v : values) ctx.emit(key, v);
    };
    return runner.step(std::move(items), MapFn{}, reduce).intermediate;
}

void check_machine(const CrcwMachine& m) {
    if (m.P < 1) throw ConfigError("a PRAM needs at least one processor");
    if (m.procs.size() != m.P || m.memory.size() != m.N) throw ConfigError("malformed PRAM machine");
}

}  // namespace

CrcwStepResult simulate_crcw_step(const CrcwMachine& machine, const CrcwProgram& program,
                                  const SemigroupOp& f, const RoundConfig& cfg) {
    check_machine(machine);
    probe_semigroup(f, cfg.seed);
    Runner runner(cfg);
    const StepContext c{&program, &f, machine.P, machine.N, cfg.buffer_capacity,
                        crcw_tree_height(machine.P, cfg.buffer_capacity), machine.steps};
    CrcwStepResult res{machine, {}};
    auto items = install(c, run_step(c, encode(machine), runner), runner);
    decode(items, res.machine);
    ++res.machine.steps;
    res.metrics = runner.take_metrics();
    return res;
}

CrcwRun simulate_crcw(const CrcwProgram& program, CrcwMachine machine, std::size_t T,
                      const SemigroupOp& f, const RoundConfig& cfg) {
    check_machine(machine);
    probe_semigroup(f, cfg.seed);
    Runner runner(cfg);
    CrcwRun run;
    const std::uint64_t L = crcw_tree_height(machine.P, cfg.buffer_capacity);
    std::vector<KeyedItem> items = encode(machine);
    bool pending_writes = false;
    while (machine.steps < T && !machine.all_halted()) {
        const StepContext c{&program, &f, machine.P, machine.N, cfg.buffer_capacity, L, machine.steps};
        const std::size_t before = runner.metrics().rounds;
        items = run_step(c, std::move(items), runner);
        pending_writes = true;
        ++machine.steps;
        for (const auto& it : items)
            if (as_word(it.key[0]) == 0 && as_word(it.payload[0]) == t_proc)
                machine.procs[as_u64(it.key[1])].halted = as_word(it.payload[1]) != 0;
        run.rounds_per_step.push_back(runner.metrics().rounds - before);
    }
    if (pending_writes) {
        const StepContext c{&program, &f, machine.P, machine.N, cfg.buffer_capacity, L, machine.steps};
        items = install(c, std::move(items), runner);
        ++run.rounds_per_step.back();
    }
    decode(items, machine);
    run.machine = std::move(machine);
    run.metrics = runner.take_metrics();
    return run;
}

CrcwRun simulate_crcw(const CrcwProgram& program, std::uint64_t P, std::vector<Word> memory,
                      std::size_t T, const SemigroupOp& f, const RoundConfig& cfg) {
    return simulate_crcw(program, make_crcw_machine(program, P, std::move(memory)), T, f, cfg);
}

}  // namespace mrsim
