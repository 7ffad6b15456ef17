#include "mrsim/report.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include "json.hpp"
#include <set>
#include <sstream>

#include "mrsim/errors.hpp"
#include "mrsim/tree.hpp"

namespace mrsim {

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

template <typename T>
T parse_number(const std::string& s, const char* field) {
    T v{};
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size())
        throw UnsupportedFormat(std::string("bad value for ") + field + ": '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

const std::string& csv_header() {
    static const std::string header =
        "workload,N,B,seed,rounds,message_complexity,max_reducer_io,oracle_match,wall_time_ms";
    return header;
}

ReportFormat parse_format(const std::string& name) {
    if (name == "csv") return ReportFormat::csv;
    if (name == "json") return ReportFormat::json;
    throw UnsupportedFormat("unsupported report format '" + name + "'");
}

std::string cmd_report(const std::vector<ReportRow>& rows, ReportFormat format) {
    if (format == ReportFormat::csv) {
        std::string out = csv_header() + "\n";
        for (const auto& r : rows) {
            if (r.workload.find_first_of(",\n\r") != std::string::npos)
                throw UnsupportedFormat("workload names cannot contain commas or newlines");
            out += r.workload + "," + std::to_string(r.n) + "," + std::to_string(r.b) + "," +
                   std::to_string(r.seed) + "," + std::to_string(r.rounds) + "," +
                   std::to_string(r.message_complexity) + "," + std::to_string(r.max_reducer_io) + "," +
                   (r.oracle_match ? "true" : "false") + "," + format_double(r.wall_time_ms) + "\n";
        }
        return out;
    }
    nlohmann::ordered_json doc;
    doc["schema_version"] = report_schema_version;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        doc["rows"].push_back({{"workload", r.workload},
                               {"N", r.n},
                               {"B", r.b},
                               {"seed", r.seed},
                               {"rounds", r.rounds},
                               {"message_complexity", r.message_complexity},
                               {"max_reducer_io", r.max_reducer_io},
                               {"oracle_match", r.oracle_match},
                               {"wall_time_ms", r.wall_time_ms}});
    }
    return doc.dump(2) + "\n";
}

std::vector<ReportRow> parse_report(const std::string& text, ReportFormat format) {
    std::vector<ReportRow> rows;
    if (format == ReportFormat::csv) {
        std::istringstream in(text);
        std::string line;
        if (!std::getline(in, line)) throw UnsupportedFormat("empty CSV report");
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line != csv_header()) throw UnsupportedFormat("unexpected CSV header: " + line);
        while (std::getline(in, line)) {
            if (line.empty() || line == "\r") continue;
            const auto f = split(line);
            if (f.size() != 9) throw UnsupportedFormat("expected 9 columns: " + line);
            if (f[7] != "true" && f[7] != "false") throw UnsupportedFormat("bad oracle_match: " + f[7]);
            rows.push_back({f[0], parse_number<std::uint64_t>(f[1], "N"),
                            parse_number<std::uint64_t>(f[2], "B"),
                            parse_number<std::uint64_t>(f[3], "seed"),
                            parse_number<std::uint64_t>(f[4], "rounds"),
                            parse_number<std::uint64_t>(f[5], "message_complexity"),
                            parse_number<std::uint64_t>(f[6], "max_reducer_io"), f[7] == "true",
                            parse_number<double>(f[8], "wall_time_ms")});
        }
        return rows;
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
        if (doc.at("schema_version").get<int>() != report_schema_version)
            throw UnsupportedFormat("unsupported report schema version");
        for (const auto& r : doc.at("rows")) {
            rows.push_back({r.at("workload").get<std::string>(), r.at("N").get<std::uint64_t>(),
                            r.at("B").get<std::uint64_t>(), r.at("seed").get<std::uint64_t>(),
                            r.at("rounds").get<std::uint64_t>(),
                            r.at("message_complexity").get<std::uint64_t>(),
                            r.at("max_reducer_io").get<std::uint64_t>(), r.at("oracle_match").get<bool>(),
                            r.at("wall_time_ms").get<double>()});
        }
    } catch (const nlohmann::json::exception& e) {
        throw UnsupportedFormat(std::string("malformed JSON report: ") + e.what());
    }
    return rows;
}

namespace {

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LinearFit fit;
    fit.slope = sxx > 0 ? sxy / sxx : 0;
    fit.intercept = my - fit.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.slope * x[i] + fit.intercept);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);
    return fit;
}

}  // namespace

std::vector<WorkloadFit> cmd_fit(const std::vector<ReportRow>& rows) {
    std::map<std::string, std::vector<const ReportRow*>> by_workload;
    for (const auto& r : rows) by_workload[r.workload].push_back(&r);
    std::vector<WorkloadFit> fits;
    for (const auto& [name, group] : by_workload) {
        std::set<std::uint64_t> distinct;
        for (const auto* r : group) distinct.insert(r->n);
        if (distinct.size() < 3)
            throw InsufficientData("workload '" + name + "' has " + std::to_string(distinct.size()) +
                                   " distinct N values; at least 3 are needed");
        WorkloadFit fit;
        fit.workload = name;
        fit.rows = group.size();
        std::vector<double> lx, t, nx, m;
        for (const auto* r : group) {
            const double lg = static_cast<double>(std::max<std::uint64_t>(1, ceil_log(std::max<std::uint64_t>(2, r->b), r->n)));
            const double n = static_cast<double>(std::max<std::uint64_t>(1, r->n));
            lx.push_back(lg);
            t.push_back(static_cast<double>(r->rounds));
            nx.push_back(n * lg);
            m.push_back(static_cast<double>(r->message_complexity));
            fit.max_rounds_ratio = std::max(fit.max_rounds_ratio, static_cast<double>(r->rounds) / lg);
            fit.max_message_ratio = std::max(fit.max_message_ratio, static_cast<double>(r->message_complexity) / (n * lg));
            fit.max_message_per_item = std::max(fit.max_message_per_item, static_cast<double>(r->message_complexity) / n);
        }
        fit.rounds = least_squares(lx, t);
        fit.message = least_squares(nx, m);
        fits.push_back(fit);
    }
    return fits;
}

std::string fits_to_json(const std::vector<WorkloadFit>& fits) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    auto lin = [](const LinearFit& f) {
        return nlohmann::ordered_json{{"slope", f.slope}, {"intercept", f.intercept}, {"rms_residual", f.rms_residual}};
    };
    for (const auto& f : fits) {
        doc.push_back({{"workload", f.workload},
                       {"rows", f.rows},
                       {"rounds_vs_log_b_n", lin(f.rounds)},
                       {"message_vs_n_log_b_n", lin(f.message)},
                       {"max_rounds_over_log_b_n", f.max_rounds_ratio},
                       {"max_message_over_n_log_b_n", f.max_message_ratio},
                       {"max_message_over_n", f.max_message_per_item}});
    }
    return doc.dump(2) + "\n";
}

}  // namespace mrsim
