#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mrsim {

struct ReportRow {
    std::string workload;
    std::uint64_t n = 0;
    std::uint64_t b = 0;
    std::uint64_t seed = 0;
    std::uint64_t rounds = 0;
    std::uint64_t message_complexity = 0;
    std::uint64_t max_reducer_io = 0;
    bool oracle_match = false;
    double wall_time_ms = 0;
    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

inline constexpr int report_schema_version = 1;

/// Column header of the CSV report, in ReportRow field order.
const std::string& csv_header();

enum class ReportFormat { csv, json };

ReportFormat parse_format(const std::string& name);

/// Serializes rows; parse_report inverts it exactly.
std::string cmd_report(const std::vector<ReportRow>& rows, ReportFormat format);
std::vector<ReportRow> parse_report(const std::string& text, ReportFormat format);

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double rms_residual = 0;
};

struct WorkloadFit {
    std::string workload;
    std::size_t rows = 0;
    LinearFit rounds;   // t against ceil(log_B N)
    LinearFit message;  // M against N * ceil(log_B N)
    double max_rounds_ratio = 0;   // max t / ceil(log_B N)
    double max_message_ratio = 0;  // max M / (N * ceil(log_B N))
    double max_message_per_item = 0;  // max M / N
};

/// Least-squares fits per workload. Throws InsufficientData when a workload
/// has fewer than three distinct N values.
std::vector<WorkloadFit> cmd_fit(const std::vector<ReportRow>& rows);

std::string fits_to_json(const std::vector<WorkloadFit>& fits);

}  // namespace mrsim
