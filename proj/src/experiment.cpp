#include "mrsim/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "mrsim/apps.hpp"
#include "mrsim/generators.hpp"
#include "mrsim/geometry.hpp"
#include "mrsim/indexing.hpp"
#include "mrsim/oracle/oracles.hpp"

namespace mrsim {

const std::vector<std::string>& workload_names() {
    static const std::vector<std::string> names{
        "word_count", "zipf_word_count", "indexing",       "sort",         "ann",
        "hull",       "hull_circle",     "hull_square",    "hull_collinear", "crcw_max",
        "crcw_histogram"};
    return names;
}

std::uint64_t buffer_for(std::uint64_t n, double epsilon) {
    if (!(epsilon > 0) || epsilon > 1) throw ConfigError("epsilon must lie in (0, 1]");
    const double x = std::pow(static_cast<double>(std::max<std::uint64_t>(n, 1)), epsilon);
    const auto b = static_cast<std::uint64_t>(std::ceil(x - 1e-9 * x));
    return std::max<std::uint64_t>(2, b);
}

namespace {

struct Measured {
    RunMetrics metrics;
    bool match = false;
    std::uint64_t max_io_override = 0;
};

Measured run_body(const std::string& w, std::uint64_t n, const RoundConfig& cfg,
                  const ExperimentSpec& spec) {
    const std::uint64_t seed = cfg.seed;
    Measured out;
    if (w == "word_count" || w == "zipf_word_count") {
        const auto doc = w == "word_count" ? gen::uniform_document(n, seed, std::max<std::uint64_t>(1, n / 4))
                                           : gen::zipf_document(n, seed, 10'000);
        try {
            auto res = word_count(doc, cfg);
            out.match = res.counts == oracle::word_counts(doc);
            out.metrics = std::move(res.metrics);
        } catch (const BufferExceeded& e) {
            if (w != "zipf_word_count") throw;
            // The skewed stream is expected to overflow a reducer in hard mode.
            out.match = true;
            out.max_io_override = e.items();
        }
    } else if (w == "indexing") {
        std::vector<WeightedInput> inputs;
        inputs.reserve(n);
        for (std::uint64_t i = 0; i < n; ++i) inputs.push_back({{u64_atom(i)}, 1});
        const auto nhat = std::max<std::uint64_t>(
            {2, n, static_cast<std::uint64_t>(std::ceil(static_cast<double>(n) * spec.nhat_factor))});
        auto res = random_index_with_retry(inputs, tree_params(cfg.buffer_capacity, nhat), cfg);
        const auto expect = oracle::prefix_sums_in_leaf_order(inputs, res.result.assignment);
        out.match = true;
        for (std::uint64_t i = 0; i < n; ++i)
            out.match = out.match && res.result.indexed[i].prefix_sum == expect[i];
        out.metrics = std::move(res.all_attempts);
    } else if (w == "sort") {
        const auto X = gen::uniform_words(n, seed, 4 * std::max<std::uint64_t>(n, 1));
        auto res = mr_sort(X, cfg);
        const auto expect = oracle::ranks(X, res.tiebreak);
        out.match = true;
        for (std::uint64_t i = 0; i < n; ++i) out.match = out.match && res.ranked[i].rank == expect[i];
        out.metrics = std::move(res.metrics);
    } else if (w == "ann") {
        const auto X = gen::uniform_words(n, seed, 4 * std::max<std::uint64_t>(n, 1));
        auto res = ann_1d(X, cfg);
        out.match = res.successor == oracle::successors(X);
        out.metrics = std::move(res.metrics);
    } else if (w.rfind("hull", 0) == 0) {
        std::vector<Point2D> pts;
        if (w == "hull") pts = gen::uniform_points(n, seed, Word{1} << 20);
        else if (w == "hull_circle") pts = gen::circle_points(n, seed);
        else if (w == "hull_square") pts = gen::square_with_interior(n, seed, Word{1} << 20);
        else if (w == "hull_collinear") pts = gen::collinear_points(n, seed);
        else throw ConfigError("unknown workload '" + w + "'");
        auto res = hull_2d(pts, cfg);
        out.match = res.hull == oracle::graham_scan(pts) && !hull_violation(pts, res.hull);
        out.metrics = std::move(res.metrics);
    } else if (w == "crcw_max") {
        const auto X = gen::uniform_words(n, seed, std::uint64_t{1} << 40);
        auto res = crcw_max(X, cfg);
        out.match = X.empty() || (res.values.size() == 1 && res.values[0] == *std::max_element(X.begin(), X.end()));
        out.metrics = std::move(res.metrics);
    } else if (w == "crcw_histogram") {
        const auto X = gen::uniform_words(n, seed, 16);
        auto res = crcw_histogram(X, 16, cfg);
        out.match = res.values == oracle::histogram(X, 16);
        out.metrics = std::move(res.metrics);
    } else {
        throw ConfigError("unknown workload '" + w + "'");
    }
    return out;
}

}  // namespace

RunOutcome run_workload(const std::string& workload, std::uint64_t n, std::uint64_t b,
                        std::uint64_t seed, const ExperimentSpec& spec) {
    RoundConfig cfg;
    cfg.buffer_capacity = b;
    cfg.enforcement = spec.enforcement;
    cfg.seed = seed;
    cfg.threads = spec.threads;
    RunOutcome out;
    out.row.workload = workload;
    out.row.n = n;
    out.row.b = b;
    out.row.seed = seed;
    const auto start = std::chrono::steady_clock::now();
    try {
        Measured m = run_body(workload, n, cfg, spec);
        out.row.rounds = m.metrics.rounds;
        out.row.message_complexity = m.metrics.message_complexity.items;
        out.row.max_reducer_io = std::max(m.metrics.max_io.items, m.max_io_override);
        out.row.oracle_match = m.match;
        if (auto bad = metric_identity_violation(m.metrics)) {
            out.row.oracle_match = false;
            out.note = "metric identity violated: " + *bad;
        } else if (!m.match) {
            out.note = "output differs from the sequential oracle";
        }
    } catch (const BufferExceeded& e) {
        out.hard_violation = true;
        out.row.max_reducer_io = e.items();
        out.note = e.what();
    } catch (const Error& e) {
        out.note = e.what();
    }
    if (spec.timing)
        out.row.wall_time_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

std::vector<RunOutcome> cmd_run(const ExperimentSpec& spec) {
    if (std::find(workload_names().begin(), workload_names().end(), spec.workload) == workload_names().end())
        throw ConfigError("unknown workload '" + spec.workload + "'");
    std::vector<RunOutcome> out;
    for (std::uint64_t n : spec.ns) {
        const std::uint64_t b = spec.b ? *spec.b : buffer_for(n, spec.epsilon);
        for (std::uint64_t seed : spec.seeds) out.push_back(run_workload(spec.workload, n, b, seed, spec));
    }
    return out;
}

bool all_passed(const std::vector<RunOutcome>& outcomes) {
    return std::all_of(outcomes.begin(), outcomes.end(),
                       [](const RunOutcome& o) { return o.row.oracle_match && !o.hard_violation; });
}

}  // namespace mrsim
