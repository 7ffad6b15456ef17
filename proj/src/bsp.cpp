#include "mrsim/bsp.hpp"

#include <algorithm>
#include <atomic>

#include "mrsim/indexing.hpp"

namespace mrsim {

namespace {

// Per-processor records, all keyed by the processor id:
//   state:   [0, halted, user words...]
//   cell:    [1, address, words...]
//   message: [2, content words...]
constexpr Word rec_state = 0;
constexpr Word rec_cell = 1;
constexpr Word rec_message = 2;

Payload words_payload(Word tag, std::initializer_list<Word> head, const std::vector<Word>& tail) {
    Payload p;
    p.reserve(1 + head.size() + tail.size());
    p.emplace_back(tag);
    for (Word w : head) p.emplace_back(w);
    for (Word w : tail) p.emplace_back(w);
    return p;
}

std::vector<Word> tail_words(const Payload& p, std::size_t from) {
    std::vector<Word> out;
    out.reserve(p.size() - from);
    for (std::size_t i = from; i < p.size(); ++i) out.push_back(as_word(p[i]));
    return out;
}

std::vector<KeyedItem> encode(const BspMachine& m) {
    std::vector<KeyedItem> items;
    for (std::uint64_t i = 1; i <= m.p; ++i) {
        const Key key{u64_atom(i)};
        const auto& st = m.procs[i - 1];
        items.push_back({key, words_payload(rec_state, {st.halted ? 1 : 0}, st.user)});
        const auto& cells = m.memory[i - 1];
        for (std::size_t j = 0; j < cells.size(); ++j)
            items.push_back({key, words_payload(rec_cell, {static_cast<Word>(j + 1)}, cells[j])});
    }
    for (const auto& msg : m.in_flight)
        items.push_back({{u64_atom(msg.dest)}, words_payload(rec_message, {}, msg.content)});
    return items;
}

void decode(const std::vector<KeyedItem>& items, BspMachine& m) {
    for (auto& cells : m.memory) cells.clear();
    m.in_flight.clear();
    for (const auto& it : items) {
        const std::uint64_t id = as_u64(it.key[0]);
        const Payload& p = it.payload;
        switch (as_word(p[0])) {
            case rec_state:
                m.procs[id - 1] = {id, tail_words(p, 2), as_word(p[1]) != 0};
                break;
            case rec_cell:
                m.memory[id - 1].push_back(tail_words(p, 2));
                break;
            default:
                m.in_flight.push_back({id, tail_words(p, 1)});
        }
    }
    std::sort(m.in_flight.begin(), m.in_flight.end());
}

}  // namespace

std::vector<Word> BspProgram::initial_state(std::uint64_t, std::uint64_t) const { return {}; }

std::vector<Cell> BspMachine::flatten() const {
    std::vector<Cell> out;
    for (const auto& cells : memory) out.insert(out.end(), cells.begin(), cells.end());
    return out;
}

bool BspMachine::quiescent() const {
    return in_flight.empty() &&
           std::all_of(procs.begin(), procs.end(), [](const auto& s) { return s.halted; });
}

BspMachine distribute_cells(std::vector<Cell> cells, std::uint64_t p, const BspProgram& program,
                            std::size_t capacity) {
    if (p < 1) throw ConfigError("a BSP machine needs at least one processor");
    BspMachine m;
    m.p = p;
    const std::size_t per = std::max<std::size_t>(1, (cells.size() + p - 1) / p);
    m.m = capacity ? capacity : per;
    if (m.m < per) throw ConfigError("capacity below the initial cells per processor");
    m.procs.resize(p);
    m.memory.resize(p);
    for (std::uint64_t i = 1; i <= p; ++i) m.procs[i - 1] = {i, program.initial_state(i, p), false};
    for (std::size_t k = 0; k < cells.size(); ++k) m.memory[k / per].push_back(std::move(cells[k]));
    return m;
}

BspMachine distribute(const std::vector<Word>& words, std::uint64_t p, const BspProgram& program,
                      std::size_t capacity) {
    std::vector<Cell> cells;
    cells.reserve(words.size());
    for (Word w : words) cells.push_back({w});
    return distribute_cells(std::move(cells), p, program, capacity);
}

BspMachine distribute_unindexed(const std::vector<Cell>& cells, std::uint64_t p,
                                const BspProgram& program, const RoundConfig& cfg,
                                RunMetrics& metrics, std::size_t capacity) {
    if (cells.empty()) return distribute_cells({}, p, program, capacity);
    std::vector<WeightedInput> inputs;
    inputs.reserve(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) inputs.push_back({{u64_atom(k)}, 1});
    const auto params = tree_params(cfg.buffer_capacity, std::max<std::uint64_t>(2, cells.size()));
    const auto indexed = random_index_with_retry(inputs, params, cfg);
    metrics.append(indexed.all_attempts);
    std::vector<Cell> placed(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k)
        placed[indexed.result.indexed[k].prefix_sum - 1] = cells[k];
    return distribute_cells(std::move(placed), p, program, capacity);
}

void validate_superstep(const BspProgram& program, const ProcessorState& state,
                        const std::vector<Cell>& cells, const std::vector<BspMessage>& outbox,
                        std::uint64_t p, std::size_t m) {
    const BspBounds b = program.bounds();
    if (outbox.size() > m) throw FanOutViolation(state.id, outbox.size(), m);
    if (cells.size() > m) throw LocalMemoryOverflow(state.id, cells.size(), m);
    if (state.user.size() > b.state_words)
        throw ConfigError("processor " + std::to_string(state.id) + " state exceeds its word bound");
    for (const auto& c : cells)
        if (c.size() > b.cell_words)
            throw ConfigError("processor " + std::to_string(state.id) + " wrote an oversized cell");
    for (const auto& msg : outbox) {
        if (msg.dest < 1 || msg.dest > p)
            throw InvalidAddress("message to processor " + std::to_string(msg.dest) + " of " +
                                 std::to_string(p));
        if (msg.content.size() > b.message_words)
            throw ConfigError("processor " + std::to_string(state.id) + " sent an oversized message");
    }
}

BspMachine simulate_bsp(const BspProgram& program, BspMachine machine, std::size_t T,
                        Runner& runner) {
    const std::uint64_t p = machine.p;
    const std::size_t m = machine.m;
    std::vector<KeyedItem> items = encode(machine);
    bool done = machine.quiescent();
    while (!done && machine.supersteps < T) {
        const std::uint64_t step = machine.supersteps;
        std::atomic<bool> active{false};
        const ReduceFn reduce = [&](const Key& key, std::span<const Payload> values,
                                    ReduceContext& ctx) {
            const std::uint64_t id = as_u64(key[0]);
            ProcessorState state{id, {}, false};
            std::vector<Cell> cells;
            std::vector<std::vector<Word>> inbox;
            for (const auto& v : values) {
                switch (as_word(v[0])) {
                    case rec_state:
                        state.halted = as_word(v[1]) != 0;
                        state.user = tail_words(v, 2);
                        break;
                    case rec_cell:
                        cells.push_back(tail_words(v, 2));
                        break;
                    default:
                        inbox.push_back(tail_words(v, 1));
                }
            }
            if (state.halted && inbox.empty()) {
                for (const auto& v : values) ctx.emit(key, v);
                return;
            }
            std::vector<BspMessage> outbox;
            program.superstep(step, state, cells, inbox, m, outbox);
            state.id = id;
            validate_superstep(program, state, cells, outbox, p, m);
            if (!state.halted || !outbox.empty()) active.store(true, std::memory_order_relaxed);
            ctx.emit(key, words_payload(rec_state, {state.halted ? 1 : 0}, state.user));
            for (std::size_t j = 0; j < cells.size(); ++j)
                ctx.emit(key, words_payload(rec_cell, {static_cast<Word>(j + 1)}, cells[j]));
            for (auto& msg : outbox)
                ctx.emit({u64_atom(msg.dest)}, words_payload(rec_message, {}, msg.content));
        };
        RoundResult r = runner.step(std::move(items), MapFn{}, reduce);
        items = std::move(r.intermediate);
        ++machine.supersteps;
        done = !active.load();
    }
    decode(items, machine);
    return machine;
}

BspRun simulate_bsp(const BspProgram& program, BspMachine initial, std::size_t T,
                    const RoundConfig& cfg) {
    Runner runner(cfg);
    BspRun run;
    run.machine = simulate_bsp(program, std::move(initial), T, runner);
    run.metrics = runner.take_metrics();
    return run;
}

}  // namespace mrsim
