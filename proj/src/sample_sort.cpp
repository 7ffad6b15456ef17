#include <algorithm>
#include <unordered_map>

#include "mrsim/apps.hpp"
#include "mrsim/bsp.hpp"
#include "mrsim/hash.hpp"
#include "mrsim/indexing.hpp"
#include "mrsim/tree.hpp"

namespace mrsim {

namespace {

// Message contents.
constexpr Word msg_sample = 1;  // [1, k0, k1, id]
constexpr Word msg_split = 2;   // [2, t, k0, k1, id]
constexpr Word msg_item = 3;    // [3, k0, k1, id]
constexpr Word msg_up = 4;      // [4, level, child, sum]
constexpr Word msg_offset = 5;  // [5, level, offset]

// Cells: records [0, k0, k1, id (, rank)] and stored child sums [1, level, child, sum].
constexpr Word cell_record = 0;
constexpr Word cell_sum = 1;

enum class Kind { sample, select, relay, route, arrive, scan, push, finish };

struct StepKind {
    Kind kind;
    std::uint64_t level;
    bool deliver = false;
};

struct Group {
    std::uint64_t lo = 0;
    std::uint64_t q = 0;
};

SortRecord record_of(const std::vector<Word>& w, std::size_t at) { return {w[at], w[at + 1], w[at + 2]}; }

std::uint64_t pow_u(std::uint64_t b, std::uint64_t e) {
    std::uint64_t v = 1;
    while (e--) v *= b;
    return v;
}

std::uint64_t heap_depth(std::uint64_t r, std::uint64_t arity) {
    std::uint64_t d = 0;
    while (r > 0) {
        r = (r - 1) / arity;
        ++d;
    }
    return d;
}

class SampleSort final : public BspProgram {
public:
    SampleSort(std::uint64_t p, std::uint64_t B, std::size_t m, std::uint64_t seed, double sample_factor)
        : p_(p), m_(m), seed_(seed) {
        levels_ = ceil_log(B, p);
        k_ = 1;
        if (levels_ > 0)
            while (pow_u(k_, levels_) < p) ++k_;
        fan_in_ = B;
        scan_depth_ = ceil_log(fan_in_, p);
        // Splitter error compounds over the levels, so deep sorts oversample more.
        samples_ = std::max<std::uint64_t>(static_cast<std::uint64_t>(sample_factor * static_cast<double>(B)),
                                           3 * levels_ * k_);
        arity_ = 2 * B;
        build_schedule();
    }

    std::size_t supersteps() const { return steps_.size(); }
    std::uint64_t levels() const { return levels_; }
    std::uint64_t fan_out() const { return k_; }

    void superstep(std::uint64_t step, ProcessorState& state, std::vector<Cell>& cells,
                   std::span<const std::vector<Word>> inbox, std::size_t,
                   std::vector<BspMessage>& outbox) const override {
        const StepKind sk = steps_.at(step);
        const std::uint64_t x = state.id - 1;
        switch (sk.kind) {
            case Kind::sample: return do_sample(x, sk.level, cells, inbox, outbox);
            case Kind::select: return do_select(x, sk.level, inbox, outbox);
            case Kind::relay: return do_relay(x, sk, state, inbox, outbox);
            case Kind::route: return do_route(x, sk.level, cells, inbox, outbox);
            case Kind::arrive: return do_arrive(x, state, cells, inbox, outbox);
            case Kind::scan: return do_scan(x, sk.level, cells, inbox, outbox);
            case Kind::push: return do_push(x, sk.level, cells, inbox, outbox);
            case Kind::finish: return finish(state, cells, offset_from(inbox));
        }
    }

private:
    Group subgroup(Group g, std::uint64_t b) const {
        const std::uint64_t ke = std::min(k_, g.q);
        const std::uint64_t lo = g.lo + b * g.q / ke;
        const std::uint64_t hi = g.lo + (b + 1) * g.q / ke;
        return {lo, hi - lo};
    }

    Group group_at(std::uint64_t x, std::uint64_t level) const {
        Group g{0, p_};
        for (std::uint64_t l = 0; l < level; ++l) {
            const std::uint64_t ke = std::min(k_, g.q);
            std::uint64_t b = (x - g.lo) * ke / g.q;
            while (b + 1 < ke && subgroup(g, b + 1).lo <= x) ++b;
            while (b > 0 && subgroup(g, b).lo > x) --b;
            g = subgroup(g, b);
        }
        return g;
    }

    static std::uint64_t splitters_of(Group g, std::uint64_t k) { return std::min(k, g.q) - 1; }

    std::uint64_t relays_per_splitter(Group g) const {
        const std::uint64_t S = splitters_of(g, k_);
        return S == 0 ? 0 : std::max<std::uint64_t>(1, g.q / S);
    }

    void build_schedule() {
        std::vector<Group> groups{{0, p_}};
        for (std::uint64_t l = 0; l < levels_; ++l) {
            steps_.push_back({Kind::sample, l});
            std::uint64_t depth = 0;
            for (const Group& g : groups)
                if (splitters_of(g, k_) > 0) depth = std::max(depth, heap_depth(relays_per_splitter(g) - 1, arity_));
            steps_.push_back({Kind::select, l});
            for (std::uint64_t d = 0; d <= depth; ++d) steps_.push_back({Kind::relay, l, d == depth});
            steps_.push_back({Kind::route, l});
            std::vector<Group> next;
            for (const Group& g : groups)
                for (std::uint64_t b = 0; b < std::min(k_, g.q); ++b) next.push_back(subgroup(g, b));
            groups = std::move(next);
        }
        steps_.push_back({Kind::arrive, 0});
        for (std::uint64_t u = 1; u <= scan_depth_; ++u) steps_.push_back({Kind::scan, u});
        for (std::uint64_t u = scan_depth_; u-- > 1;) steps_.push_back({Kind::push, u});
        if (scan_depth_ > 0) steps_.push_back({Kind::finish, 0});
    }

    double chance(Word id, std::uint64_t level) const {
        return unit_interval(mix(seed_, {static_cast<std::uint64_t>(id), level, 0x5a3dULL}));
    }

    static void store_items(std::vector<Cell>& cells, std::span<const std::vector<Word>> inbox) {
        for (const auto& msg : inbox)
            if (msg[0] == msg_item) cells.push_back({cell_record, msg[1], msg[2], msg[3]});
    }

    // Share of `target` samples that processor `idx` of a q-processor group sends, so
    // a leader never receives more than `target` however the items are spread.
    std::uint64_t quota(std::uint64_t idx, std::uint64_t q, std::uint64_t target, std::uint64_t salt) const {
        const std::uint64_t rot = (idx + mix(seed_, {salt, 0x9a07ULL}) % q) % q;
        const std::uint64_t r = target % q;
        return target / q + ((rot + 1) * r / q - rot * r / q);
    }

    // Appends the `count` records with the smallest sampling hash.
    void pick_samples(std::vector<std::pair<double, SortRecord>>& pool, std::uint64_t count, std::uint64_t dest,
                      std::vector<BspMessage>& out) const {
        count = std::min<std::uint64_t>(count, pool.size());
        std::partial_sort(pool.begin(), pool.begin() + count, pool.end());
        for (std::uint64_t i = 0; i < count; ++i) {
            const SortRecord& r = pool[i].second;
            out.push_back({dest, {msg_sample, r.k0, r.k1, r.id}});
        }
    }

    // Items sit still during sampling, so every processor knows its exact share and
    // a leader never receives more than `samples_` however unevenly the items split.
    void do_sample(std::uint64_t x, std::uint64_t level, std::vector<Cell>& cells,
                   std::span<const std::vector<Word>> inbox, std::vector<BspMessage>& outbox) const {
        store_items(cells, inbox);
        const Group g = group_at(x, level);
        if (splitters_of(g, k_) == 0) return;
        // Below the root, leaders hold no items.
        const std::uint64_t skip = level == 0 ? 0 : 1;
        if (x < g.lo + skip) return;
        std::vector<std::pair<double, SortRecord>> pool;
        for (const auto& c : cells) pool.emplace_back(chance(c[3], level), record_of(c, 1));
        const std::uint64_t share = quota(x - g.lo - skip, g.q - skip, samples_, level * p_ + g.lo);
        pick_samples(pool, std::min<std::uint64_t>(share, m_), g.lo + 1, outbox);
    }

    void do_select(std::uint64_t x, std::uint64_t level, std::span<const std::vector<Word>> inbox,
                   std::vector<BspMessage>& outbox) const {
        const Group g = group_at(x, level);
        const std::uint64_t S = splitters_of(g, k_);
        if (x != g.lo || S == 0) return;
        std::vector<SortRecord> sample;
        for (const auto& msg : inbox)
            if (msg[0] == msg_sample) sample.push_back(record_of(msg, 1));
        std::sort(sample.begin(), sample.end());
        for (std::uint64_t t = 0; t < S; ++t) {
            SortRecord s{INT64_MAX, INT64_MAX, INT64_MAX};
            if (!sample.empty()) s = sample[(subgroup(g, t + 1).lo - g.lo) * sample.size() / g.q];
            const std::vector<Word> content{msg_split, static_cast<Word>(t), s.k0, s.k1, s.id};
            outbox.push_back({g.lo + t + 1, content});
        }
    }

    void do_relay(std::uint64_t x, const StepKind& sk, ProcessorState& state,
                  std::span<const std::vector<Word>> inbox, std::vector<BspMessage>& outbox) const {
        const Group g = group_at(x, sk.level);
        const std::uint64_t S = splitters_of(g, k_);
        if (S == 0) return;
        const std::uint64_t R = relays_per_splitter(g);
        const std::uint64_t idx = x - g.lo;
        if (idx >= S * R) return;
        const std::uint64_t r = idx / S;
        for (const auto& msg : inbox) {
            if (msg[0] != msg_split) continue;
            state.user.assign(msg.begin() + 1, msg.end());
            for (std::uint64_t a = 1; a <= arity_; ++a) {
                const std::uint64_t child = r * arity_ + a;
                if (child >= R) break;
                outbox.push_back({g.lo + static_cast<std::uint64_t>(msg[1]) + S * child + 1, msg});
            }
        }
        if (!sk.deliver || state.user.empty()) return;
        const std::uint64_t Z = (g.q + R - 1) / R;
        std::vector<Word> content{msg_split};
        content.insert(content.end(), state.user.begin(), state.user.end());
        for (std::uint64_t y = g.lo + r * Z; y < std::min(g.lo + g.q, g.lo + (r + 1) * Z); ++y)
            outbox.push_back({y + 1, content});
        state.user.clear();
    }

    void do_route(std::uint64_t x, std::uint64_t level, std::vector<Cell>& cells,
                  std::span<const std::vector<Word>> inbox, std::vector<BspMessage>& outbox) const {
        const Group g = group_at(x, level);
        if (splitters_of(g, k_) == 0) return;
        std::vector<SortRecord> splitters;
        for (const auto& msg : inbox)
            if (msg[0] == msg_split) splitters.push_back(record_of(msg, 2));
        const std::uint64_t ke = std::min(k_, g.q);
        if (splitters.size() + 1 != ke)
            throw StageDivergence("processor " + std::to_string(x + 1) + " missed splitters");
        // Leaders of the next level receive samples instead of items.
        std::vector<std::uint64_t> sent(ke, 0);
        for (const auto& c : cells) {
            const SortRecord rec = record_of(c, 1);
            const std::uint64_t b =
                std::upper_bound(splitters.begin(), splitters.end(), rec) - splitters.begin();
            const Group sub = subgroup(g, b);
            const std::uint64_t skip = level + 1 < levels_ && splitters_of(sub, k_) > 0 ? 1 : 0;
            const std::uint64_t offset = mix(seed_, {x, level, b, 0x0ffULL}) % (sub.q - skip);
            const std::uint64_t dest = sub.lo + skip + (offset + sent[b]++) % (sub.q - skip);
            outbox.push_back({dest + 1, {msg_item, rec.k0, rec.k1, rec.id}});
        }
        cells.clear();
    }

    // Scan tree: node (u, base) covers processors [base, base + f^u). Nodes of
    // different levels live on different processors so no one collects every level.
    std::uint64_t node_base(std::uint64_t x, std::uint64_t u) const {
        const std::uint64_t span = pow_u(fan_in_, u);
        return x / span * span;
    }

    std::uint64_t host(std::uint64_t u, std::uint64_t base) const {
        return u == 0 ? base : std::min(base + u - 1, p_ - 1);
    }

    void send_up(std::uint64_t u, std::uint64_t base, Word total, std::vector<BspMessage>& outbox) const {
        const std::uint64_t child = base / pow_u(fan_in_, u) % fan_in_;
        outbox.push_back({host(u + 1, node_base(base, u + 1)) + 1,
                          {msg_up, static_cast<Word>(u + 1), static_cast<Word>(child), total}});
    }

    void do_arrive(std::uint64_t x, ProcessorState& state, std::vector<Cell>& cells,
                   std::span<const std::vector<Word>> inbox, std::vector<BspMessage>& outbox) const {
        store_items(cells, inbox);
        std::sort(cells.begin(), cells.end());
        if (scan_depth_ == 0) return finish(state, cells, 0);
        send_up(0, x, static_cast<Word>(cells.size()), outbox);
    }

    void do_scan(std::uint64_t x, std::uint64_t u, std::vector<Cell>& cells,
                 std::span<const std::vector<Word>> inbox, std::vector<BspMessage>& outbox) const {
        const std::uint64_t base = node_base(x, u);
        if (host(u, base) != x) return;
        Word total = 0;
        for (const auto& msg : inbox) {
            if (msg[0] != msg_up || static_cast<std::uint64_t>(msg[1]) != u) continue;
            cells.push_back({cell_sum, msg[1], msg[2], msg[3]});
            total += msg[3];
        }
        if (u < scan_depth_) return send_up(u, base, total, outbox);
        push_offsets(u, base, 0, cells, outbox);
    }

    void do_push(std::uint64_t x, std::uint64_t u, std::vector<Cell>& cells,
                 std::span<const std::vector<Word>> inbox, std::vector<BspMessage>& outbox) const {
        const std::uint64_t base = node_base(x, u);
        if (host(u, base) != x) return;
        for (const auto& msg : inbox)
            if (msg[0] == msg_offset && static_cast<std::uint64_t>(msg[1]) == u)
                push_offsets(u, base, msg[2], cells, outbox);
    }

    void push_offsets(std::uint64_t u, std::uint64_t base, Word offset, std::vector<Cell>& cells,
                      std::vector<BspMessage>& outbox) const {
        std::vector<Cell> kept;
        std::vector<std::pair<Word, Word>> children;
        for (auto& c : cells) {
            if (c[0] == cell_sum && static_cast<std::uint64_t>(c[1]) == u)
                children.emplace_back(c[2], c[3]);
            else
                kept.push_back(std::move(c));
        }
        cells = std::move(kept);
        std::sort(children.begin(), children.end());
        const std::uint64_t stride = pow_u(fan_in_, u - 1);
        for (const auto& [child, sum] : children) {
            outbox.push_back({host(u - 1, base + static_cast<std::uint64_t>(child) * stride) + 1,
                              {msg_offset, static_cast<Word>(u - 1), offset}});
            offset += sum;
        }
    }

    static Word offset_from(std::span<const std::vector<Word>> inbox) {
        for (const auto& msg : inbox)
            if (msg[0] == msg_offset && msg[1] == 0) return msg[2];
        return 0;
    }

    static void finish(ProcessorState& state, std::vector<Cell>& cells, Word offset) {
        std::sort(cells.begin(), cells.end());
        Word rank = offset;
        for (auto& c : cells)
            if (c[0] == cell_record) c.push_back(++rank);
        state.halted = true;
    }

    std::uint64_t p_;
    std::size_t m_;
    std::uint64_t seed_;
    std::uint64_t levels_ = 0, k_ = 1, fan_in_ = 2, scan_depth_ = 0, arity_ = 4;
    std::uint64_t samples_ = 1;
    std::vector<StepKind> steps_;
};

}  // namespace

RecordSortResult sort_records(const std::vector<SortRecord>& records, const RoundConfig& cfg,
                              const SortOptions& options) {
    cfg.validate();
    const std::uint64_t n = records.size();
    const std::uint64_t B = cfg.buffer_capacity;
    std::unordered_map<Word, std::size_t> position;
    position.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        if (!position.emplace(records[i].id, i).second)
            throw ConfigError("sort record ids must be unique");

    const std::uint64_t p = std::max<std::uint64_t>(1, (2 * n + B - 1) / B);
    const std::size_t per = std::max<std::uint64_t>(1, (n + p - 1) / p);
    const std::size_t capacity = std::max<std::size_t>(8 * B, per);
    std::vector<Cell> cells;
    cells.reserve(n);
    for (const auto& r : records) cells.push_back({cell_record, r.k0, r.k1, r.id});

    RecordSortResult out;
    out.plan.processors = p;
    std::string last_error;
    for (std::size_t attempt = 0; attempt < options.max_attempts; ++attempt) {
        const std::uint64_t seed = attempt == 0 ? cfg.seed : mix(cfg.seed, {attempt, 0x50e7ULL});
        const SampleSort program(p, B, capacity, seed, options.sample_factor);
        out.plan.levels = program.levels();
        out.plan.fan_out = program.fan_out();
        out.plan.supersteps = program.supersteps();
        Runner runner(cfg);
        BspMachine final_state;
        try {
            final_state = simulate_bsp(program, distribute_cells(cells, p, program, capacity),
                                       program.supersteps(), runner);
        } catch (const LocalMemoryOverflow& e) {
            last_error = e.what();
            out.metrics.append(runner.metrics());
            continue;
        } catch (const BufferExceeded& e) {
            last_error = e.what();
            out.metrics.append(runner.metrics());
            continue;
        }
        out.metrics.append(runner.metrics());
        out.attempts = attempt + 1;
        out.ranks.assign(n, 0);
        for (const auto& local : final_state.memory)
            for (const auto& c : local)
                if (c[0] == cell_record) out.ranks[position.at(c[3])] = static_cast<std::uint64_t>(c[4]);
        return out;
    }
    throw RetryExhausted("sample sort overflowed on " + std::to_string(options.max_attempts) +
                         " seeds; last: " + last_error);
}

SortResult mr_sort(const std::vector<Word>& X, const RoundConfig& cfg, const SortOptions& options) {
    SortResult out;
    out.tiebreak.resize(X.size());
    if (options.tiebreak == Tiebreak::random_index && X.size() >= 2) {
        std::vector<WeightedInput> inputs;
        inputs.reserve(X.size());
        for (Word v : X) inputs.push_back({{v}, 1});
        const auto indexed = random_index_with_retry(inputs, tree_params(cfg.buffer_capacity, X.size()), cfg);
        out.metrics.append(indexed.all_attempts);
        for (std::size_t i = 0; i < X.size(); ++i)
            out.tiebreak[i] = static_cast<Word>(indexed.result.indexed[i].prefix_sum);
    } else {
        for (std::size_t i = 0; i < X.size(); ++i) out.tiebreak[i] = static_cast<Word>(i);
    }
    std::vector<SortRecord> records;
    records.reserve(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) records.push_back({X[i], 0, out.tiebreak[i]});
    RecordSortResult sorted = sort_records(records, cfg, options);
    out.metrics.append(sorted.metrics);
    out.attempts = sorted.attempts;
    out.plan = sorted.plan;
    out.ranked.resize(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) out.ranked[i] = {X[i], sorted.ranks[i]};
    return out;
}

}  // namespace mrsim
