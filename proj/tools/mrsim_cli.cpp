#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mrsim/experiment.hpp"
#include "mrsim/report.hpp"

namespace {

std::string read_all(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw mrsim::ConfigError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw mrsim::ConfigError("cannot write " + path);
    out << text;
}

mrsim::ReportFormat guess_format(const std::string& path, const std::string& given) {
    if (!given.empty()) return mrsim::parse_format(given);
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return mrsim::ReportFormat::json;
    return mrsim::ReportFormat::csv;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("MRSIM_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw mrsim::ConfigError(std::string("MRSIM_SEED is not an unsigned integer: ") + env);
        }
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MapReduce simulation experiments"};
    app.require_subcommand(1);

    mrsim::ExperimentSpec spec;
    std::string enforce = "record";
    std::string format = "csv";
    std::string out_path;
    std::uint64_t b = 0;
    auto* run = app.add_subcommand("run", "Run a workload sweep and emit a report");
    run->add_option("--workload", spec.workload, "Workload name")
        ->required()
        ->check(CLI::IsMember(mrsim::workload_names()));
    run->add_option("--n", spec.ns, "Input size (repeatable)");
    auto* b_opt = run->add_option("--b", b, "Absolute reducer buffer size B")->check(CLI::Range(2ULL, 1ULL << 40));
    run->add_option("--epsilon", spec.epsilon, "Use B = ceil(N^epsilon)")->excludes(b_opt);
    run->add_option("--seed", spec.seeds, "Seed (repeatable; default $MRSIM_SEED or 1)");
    run->add_option("--enforce", enforce, "Buffer enforcement")->check(CLI::IsMember({"hard", "record"}));
    run->add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
    run->add_option("--out", out_path, "Write the report here instead of stdout");
    run->add_option("--nhat-factor", spec.nhat_factor, "Indexing uses Nhat = factor * N")
        ->check(CLI::Range(1.0, 1e6));
    run->add_flag("--timing", spec.timing, "Record wall time (reports stop being byte-reproducible)");
    run->add_option("--threads", spec.threads, "OpenMP threads (0 = default)");

    std::string in_path, in_format, fit_out;
    auto* fit = app.add_subcommand("fit", "Fit round and message constants from a report");
    fit->add_option("--in", in_path, "Report file")->required();
    fit->add_option("--in-format", in_format, "csv or json (default: from extension)");
    fit->add_option("--out", fit_out, "Write the fit here instead of stdout");

    std::string report_in, report_in_format, report_out, report_format = "csv";
    auto* report = app.add_subcommand("report", "Convert a report between CSV and JSON");
    report->add_option("--in", report_in, "Report file")->required();
    report->add_option("--in-format", report_in_format, "csv or json (default: from extension)");
    report->add_option("--format", report_format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    report->add_option("--out", report_out, "Output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            if (*b_opt) spec.b = b;
            spec.enforcement = enforce == "hard" ? mrsim::Enforcement::hard : mrsim::Enforcement::record;
            if (spec.seeds.empty()) spec.seeds.push_back(default_seed());
            const auto outcomes = mrsim::cmd_run(spec);
            std::vector<mrsim::ReportRow> rows;
            for (const auto& o : outcomes) {
                rows.push_back(o.row);
                if (!o.note.empty())
                    std::cerr << o.row.workload << " N=" << o.row.n << " B=" << o.row.b
                              << " seed=" << o.row.seed << ": " << o.note << "\n";
            }
            write_out(out_path, mrsim::cmd_report(rows, mrsim::parse_format(format)));
            return mrsim::all_passed(outcomes) ? 0 : 1;
        }
        if (*fit) {
            const auto rows = mrsim::parse_report(read_all(in_path), guess_format(in_path, in_format));
            write_out(fit_out, mrsim::fits_to_json(mrsim::cmd_fit(rows)));
            return 0;
        }
        const auto rows = mrsim::parse_report(read_all(report_in), guess_format(report_in, report_in_format));
        write_out(report_out, mrsim::cmd_report(rows, mrsim::parse_format(report_format)));
        return 0;
    } catch (const mrsim::InsufficientData& e) {
        std::cerr << "insufficient data: " << e.what() << "\n";
        return 2;
    } catch (const mrsim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
