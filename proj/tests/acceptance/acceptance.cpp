// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "mrsim/apps.hpp"
#include "mrsim/bsp.hpp"
#include "mrsim/crcw.hpp"
#include "mrsim/experiment.hpp"
#include "mrsim/generators.hpp"
#include "mrsim/geometry.hpp"
#include "mrsim/indexing.hpp"
#include "mrsim/oracle/oracles.hpp"
#include "mrsim/tree.hpp"
#include "random_programs.hpp"

using namespace mrsim;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Criterion 11 collects the metric identity check of every run made by 1-10.
struct IdentityLog {
    std::size_t runs = 0;
    std::vector<std::string> violations;

    void check(const std::string& what, const RunMetrics& m) {
        ++runs;
        if (auto v = metric_identity_violation(m)) violations.push_back(what + ": " + *v);
    }
};

IdentityLog identity_log;

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(3);
    ss << v;
    return ss.str();
}

RoundConfig config(std::uint64_t b, std::uint64_t seed, Enforcement e = Enforcement::record) {
    RoundConfig cfg;
    cfg.buffer_capacity = b;
    cfg.seed = seed;
    cfg.enforcement = e;
    return cfg;
}

std::vector<WeightedInput> inputs(std::size_t n, std::mt19937_64& rng, bool unit) {
    std::vector<WeightedInput> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = {{static_cast<Word>(rng() % 1000000)}, unit ? 1 : 1 + rng() % 100};
    return out;
}

// Criteria 1-3 share one sweep.
struct IndexingSweep {
    std::size_t runs = 0;
    std::size_t permutation_failures = 0;
    std::size_t prefix_failures = 0;
    std::size_t round_failures = 0;
    std::size_t message_failures = 0;
    double worst_message_ratio = 0;
    double elapsed = 0;
};

IndexingSweep run_indexing_sweep() {
    IndexingSweep s;
    const auto start = Clock::now();
    constexpr std::uint64_t B = 16;
    for (std::size_t n : {10u, 100u, 1000u, 4096u}) {
        const TreeParams t = tree_params(B, n);
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            std::mt19937_64 rng(seed * 1000 + n);
            for (bool unit : {true, false}) {
                const auto in = inputs(n, rng, unit);
                const auto r = random_index_with_retry(in, t, config(B, seed));
                const IndexingResult& res = r.result;
                ++s.runs;
                identity_log.check("indexing", r.all_attempts);
                if (unit) {
                    std::vector<std::uint64_t> sums;
                    for (const auto& v : res.indexed) sums.push_back(v.prefix_sum);
                    std::sort(sums.begin(), sums.end());
                    for (std::size_t i = 0; i < n; ++i) s.permutation_failures += sums[i] != i + 1;
                }
                const auto expect = oracle::prefix_sums_in_leaf_order(in, res.assignment);
                for (std::size_t i = 0; i < n; ++i) s.prefix_failures += res.indexed[i].prefix_sum != expect[i];
                s.round_failures += res.metrics.rounds != 2 * t.L + 1;
                const double ratio = static_cast<double>(res.metrics.message_complexity.items) / (n * t.L);
                s.worst_message_ratio = std::max(s.worst_message_ratio, ratio);
                s.message_failures += ratio > 8;
            }
        }
    }
    s.elapsed = seconds_since(start);
    return s;
}

Outcome criterion_1(const IndexingSweep& s) {
    Outcome o;
    o.pass = s.permutation_failures == 0 && s.prefix_failures == 0 && s.elapsed < 60;
    o.detail = std::to_string(s.runs) + " runs, " + std::to_string(s.permutation_failures) +
               " permutation and " + std::to_string(s.prefix_failures) + " prefix-sum mismatches, " +
               fmt(s.elapsed) + " s";
    return o;
}

Outcome criterion_2(const IndexingSweep& s) {
    Outcome o;
    const TreeParams t = tree_params(16, 4096);
    std::vector<WeightedInput> in(4096);
    for (std::size_t i = 0; i < in.size(); ++i) in[i] = {{static_cast<Word>(i)}, 1};
    const auto r = random_index_with_retry(in, t, config(16, 1));
    identity_log.check("indexing-19", r.all_attempts);
    o.pass = s.round_failures == 0 && r.result.metrics.rounds == 19;
    o.detail = "N=4096 B=16: " + std::to_string(r.result.metrics.rounds) + " rounds; " +
               std::to_string(s.round_failures) + " sweep runs off 2L+1";
    return o;
}

Outcome criterion_3(const IndexingSweep& s) {
    Outcome o;
    o.pass = s.message_failures == 0;
    o.detail = "max M / (N L) = " + fmt(s.worst_message_ratio) + " (bound 8)";
    return o;
}

Outcome criterion_4() {
    Outcome o;
    constexpr std::size_t n = 1000;
    // The smallest buffer makes overflow most likely: any three inputs on one leaf.
    constexpr std::uint64_t B = 2;
    const TreeParams t = tree_params(B, n);
    std::size_t overflows = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        std::mt19937_64 rng(seed);
        const auto in = inputs(n, rng, true);
        try {
            const auto r = random_index(in, t, config(B, seed));
            identity_log.check("collision", r.metrics);
        } catch (const LeafOverflow&) {
            ++overflows;
        }
    }
    o.pass = overflows <= 5;
    o.detail = std::to_string(overflows) + " of 200 runs raised LeafOverflow (N=1000, B=2, limit 5)";
    return o;
}

Outcome criterion_5() {
    Outcome o;
    std::mt19937_64 rng(5);
    std::size_t mismatches = 0, round_failures = 0, message_failures = 0;
    double worst = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::uint64_t p = std::vector<std::uint64_t>{2, 8, 32}[rng() % 3];
        const std::size_t m = rng() % 2 ? 4 : 16;
        const std::size_t T = 1 + rng() % 5;
        const testkit::RandomBsp prog(rng(), p, T);
        std::vector<Word> words(p * m - rng() % m);
        for (auto& w : words) w = static_cast<Word>(rng() % 1000);
        const BspMachine start = distribute(words, p, prog, m);
        const BspRun run = simulate_bsp(prog, start, T, config(m, trial));
        identity_log.check("bsp", run.metrics);
        mismatches += !(run.machine == oracle::interpret_bsp(prog, start, T));
        round_failures += run.metrics.rounds != T;
        const double ratio = static_cast<double>(run.metrics.message_complexity.items) / (T * (words.size() + p));
        worst = std::max(worst, ratio);
        message_failures += ratio > 8;
    }
    o.pass = mismatches == 0 && round_failures == 0 && message_failures == 0;
    o.detail = "100 programs: " + std::to_string(mismatches) + " state mismatches, " +
               std::to_string(round_failures) + " round-count errors, max M / (T (N+p)) = " + fmt(worst);
    return o;
}

Outcome criterion_6() {
    Outcome o;
    std::mt19937_64 rng(6);
    std::size_t mismatches = 0, round_failures = 0, total = 0;
    std::size_t worst_rounds = 0;
    constexpr std::uint64_t B = 4;
    for (const SemigroupOp& f : {SemigroupOp::sum(), SemigroupOp::max(), SemigroupOp::min()}) {
        for (int trial = 0; trial < 100; ++trial) {
            const std::uint64_t P = rng() % 2 ? 8 : 64;
            const std::uint64_t N = rng() % 2 ? 8 : 64;
            const std::size_t T = 1 + rng() % 3;
            const testkit::RandomCrcw prog(rng(), N);
            std::vector<Word> memory(N);
            for (auto& w : memory) w = static_cast<Word>(rng() % 100);
            const CrcwRun run = simulate_crcw(prog, P, memory, T, f, config(B, trial));
            identity_log.check("crcw", run.metrics);
            ++total;
            mismatches += !(run.machine == oracle::interpret_crcw(prog, make_crcw_machine(prog, P, memory), T, f));
            const std::size_t bound = 6 * ceil_log(B, P) + 4;
            for (std::size_t r : run.rounds_per_step) {
                worst_rounds = std::max(worst_rounds, r);
                round_failures += r > bound;
            }
        }
    }
    o.pass = mismatches == 0 && round_failures == 0;
    o.detail = std::to_string(total) + " programs over Sum/Max/Min: " + std::to_string(mismatches) +
               " mismatches, " + std::to_string(round_failures) + " steps over 6 log_B P + 4 (max " +
               std::to_string(worst_rounds) + " rounds/step, B=4)";
    return o;
}

const std::vector<std::uint64_t> app_sizes{1000, 10000, 100000};

Outcome criterion_7() {
    Outcome o;
    const auto start = Clock::now();
    std::size_t mismatches = 0, io_failures = 0, errors = 0;
    double c = 0;
    std::string error_text;
    for (std::uint64_t n : app_sizes) {
        const std::uint64_t B = buffer_for(n, 1.0 / 3);
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto xs = gen::uniform_words(n, seed, 4 * n);
            try {
                const SortResult r = mr_sort(xs, config(B, seed, Enforcement::hard));
                identity_log.check("sort", r.metrics);
                std::vector<std::uint64_t> ranks;
                for (const auto& it : r.ranked) ranks.push_back(it.rank);
                mismatches += ranks != oracle::ranks(xs, r.tiebreak);
                c = std::max(c, static_cast<double>(r.metrics.rounds) / ceil_log(B, n));
                io_failures += r.metrics.max_io.items > 8 * B;
            } catch (const Error& e) {
                ++errors;
                error_text = e.what();
            }
        }
    }
    const double elapsed = seconds_since(start);
    o.pass = mismatches == 0 && io_failures == 0 && errors == 0 && c <= 10 && elapsed < 180;
    o.detail = "15 runs: " + std::to_string(mismatches) + " rank mismatches, " + std::to_string(errors) +
               " errors, " + std::to_string(io_failures) + " over 8B; c = " + fmt(c) + ", " + fmt(elapsed) + " s";
    if (!error_text.empty()) o.detail += "; last error: " + error_text;
    return o;
}

Outcome criterion_8() {
    Outcome o;
    std::size_t mismatches = 0;
    for (std::uint64_t n : app_sizes) {
        const std::uint64_t B = buffer_for(n, 1.0 / 3);
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto xs = gen::uniform_words(n, seed, 4 * n);
            const AnnResult r = ann_1d(xs, config(B, seed));
            identity_log.check("ann", r.metrics);
            mismatches += r.successor != oracle::successors(xs);
        }
    }
    o.pass = mismatches == 0;
    o.detail = "15 runs: " + std::to_string(mismatches) + " successor mismatches";
    return o;
}

Outcome criterion_9() {
    Outcome o;
    std::size_t mismatches = 0, invalid = 0, runs = 0;
    double c = 0;
    auto check = [&](const std::string& what, const std::vector<Point2D>& pts, std::uint64_t seed, bool bounded) {
        const std::uint64_t B = buffer_for(pts.size(), 1.0 / 3);
        const HullResult r = hull_2d(pts, config(B, seed));
        identity_log.check(what, r.metrics);
        ++runs;
        mismatches += !(r.hull == oracle::graham_scan(pts));
        invalid += hull_violation(pts, r.hull).has_value();
        if (bounded) c = std::max(c, static_cast<double>(r.metrics.rounds) / ceil_log(B, pts.size()));
    };
    for (std::uint64_t n : app_sizes)
        for (std::uint64_t seed = 1; seed <= 5; ++seed) check("hull", gen::uniform_points(n, seed, Word{1} << 20), seed, true);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        check("hull-square", gen::square_with_interior(10000, seed, Word{1} << 20), seed, false);
        check("hull-collinear", gen::collinear_points(10000, seed), seed, false);
        check("hull-circle", gen::circle_points(1000, seed), seed, false);
    }
    o.pass = mismatches == 0 && invalid == 0;
    o.detail = std::to_string(runs) + " runs: " + std::to_string(mismatches) + " oracle mismatches, " +
               std::to_string(invalid) + " invalid hulls; uniform c = " + fmt(c);
    return o;
}

Outcome criterion_10() {
    Outcome o;
    const std::vector<std::uint64_t> sizes{1u << 9, 1u << 12, 1u << 15};
    const std::vector<std::string> workloads{"indexing", "sort", "ann"};
    std::ostringstream detail;
    bool pass = true;
    for (const auto& w : workloads) {
        std::set<std::uint64_t> rounds;
        double lo = 1e300, hi = 0;
        for (std::uint64_t n : sizes) {
            const std::uint64_t B = buffer_for(n, 1.0 / 3);
            pass &= ceil_log(B, n) == 3;
            for (std::uint64_t seed = 1; seed <= 3; ++seed) {
                const auto xs = gen::uniform_words(n, seed, 4 * n);
                const RoundConfig cfg = config(B, seed);
                RunMetrics m;
                if (w == "indexing") {
                    std::vector<WeightedInput> in(n);
                    for (std::size_t i = 0; i < n; ++i) in[i] = {{xs[i]}, 1};
                    m = random_index_with_retry(in, tree_params(B, n), cfg).all_attempts;
                } else if (w == "sort") {
                    m = mr_sort(xs, cfg).metrics;
                } else {
                    m = ann_1d(xs, cfg).metrics;
                }
                identity_log.check("regime-" + w, m);
                rounds.insert(m.rounds);
                const double per_item = static_cast<double>(m.message_complexity.items) / n;
                lo = std::min(lo, per_item);
                hi = std::max(hi, per_item);
            }
        }
        // Linear message complexity: M/N may not drift by more than a factor of two over a 64x range of N.
        const bool ok = rounds.size() == 1 && hi <= 2 * lo;
        pass &= ok;
        detail << w << " rounds {";
        for (auto it = rounds.begin(); it != rounds.end(); ++it) detail << (it == rounds.begin() ? "" : ",") << *it;
        detail << "} M/N " << fmt(lo) << ".." << fmt(hi) << "; ";
    }
    o.pass = pass;
    o.detail = detail.str();
    return o;
}

Outcome criterion_11() {
    Outcome o;
    o.pass = identity_log.violations.empty() && identity_log.runs > 0;
    o.detail = std::to_string(identity_log.runs) + " runs checked, " +
               std::to_string(identity_log.violations.size()) + " violations";
    if (!identity_log.violations.empty()) o.detail += "; first: " + identity_log.violations.front();
    return o;
}

Outcome criterion_12() {
    Outcome o;
    constexpr std::size_t n = 100000;
    const std::uint64_t B = buffer_for(n, 1.0 / 3);
    const auto doc = gen::zipf_document(n, 12, 10000);
    std::map<std::string, std::size_t> freq;
    for (const auto& w : doc) ++freq[w];
    std::size_t top = 0;
    for (const auto& [w, c] : freq) top = std::max(top, c);
    const std::string share = fmt(100.0 * top / n) + "%";
    try {
        word_count(doc, config(B, 12, Enforcement::hard));
        o.pass = false;
        o.detail = "no BufferExceeded (top word " + share + ")";
    } catch (const BufferExceeded& e) {
        o.pass = true;
        o.detail = "BufferExceeded: reducer I/O " + std::to_string(e.items()) + " items vs limit " +
                   std::to_string(e.limit()) + " (B=" + std::to_string(B) + ", top word " + share + ")";
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> names{
        {"indexing correctness", nullptr},
        {"indexing round formula", nullptr},
        {"indexing message bound", nullptr},
        {"collision rarity", criterion_4},
        {"BSP fidelity", criterion_5},
        {"CRCW fidelity", criterion_6},
        {"sorting", criterion_7},
        {"1-D all nearest neighbours", criterion_8},
        {"convex hull", criterion_9},
        {"memory-bound regime", criterion_10},
        {"engine metric identities", criterion_11},
        {"Zipf word count", criterion_12},
    };
    IndexingSweep sweep;
    bool sweep_ok = true;
    std::string sweep_error;
    try {
        sweep = run_indexing_sweep();
    } catch (const std::exception& e) {
        sweep_ok = false;
        sweep_error = e.what();
    }
    bool all = true;
    for (std::size_t i = 0; i < names.size(); ++i) {
        Outcome o;
        const auto start = Clock::now();
        try {
            if (i < 3) {
                if (!sweep_ok) throw std::runtime_error(sweep_error);
                o = i == 0 ? criterion_1(sweep) : i == 1 ? criterion_2(sweep) : criterion_3(sweep);
            } else {
                o = names[i].second();
            }
        } catch (const std::exception& e) {
            o = {false, std::string("unexpected error: ") + e.what()};
        }
        all &= o.pass;
        std::printf("[%s] %2zu %-28s %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, names[i].first.c_str(),
                    o.detail.c_str(), seconds_since(start));
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
