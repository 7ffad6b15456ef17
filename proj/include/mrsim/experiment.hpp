#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mrsim/engine.hpp"
#include "mrsim/report.hpp"

namespace mrsim {

struct ExperimentSpec {
    std::string workload;
    std::vector<std::uint64_t> ns;
    std::optional<std::uint64_t> b;  // absolute B; otherwise B = ceil(N^epsilon)
    double epsilon = 1.0 / 3.0;
    std::vector<std::uint64_t> seeds;
    Enforcement enforcement = Enforcement::record;
    double nhat_factor = 1.0;
    bool timing = false;  // wall time stays 0 otherwise so reports are reproducible
    int threads = 0;
};

const std::vector<std::string>& workload_names();

/// B = max(2, ceil(N^epsilon)), computed without floating-point drift at exact powers.
std::uint64_t buffer_for(std::uint64_t n, double epsilon);

struct RunOutcome {
    ReportRow row;
    bool hard_violation = false;  // BufferExceeded outside the Zipf demo
    std::string note;             // failure detail, empty on success
};

RunOutcome run_workload(const std::string& workload, std::uint64_t n, std::uint64_t b,
                        std::uint64_t seed, const ExperimentSpec& spec);

/// One outcome per (N, seed) pair, in sweep order.
std::vector<RunOutcome> cmd_run(const ExperimentSpec& spec);

/// True when every row matched its oracle and no hard violation occurred.
bool all_passed(const std::vector<RunOutcome>& outcomes);

}  // namespace mrsim
