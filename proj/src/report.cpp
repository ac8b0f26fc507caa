#include "strid/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "strid/errors.hpp"

namespace strid {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

}  // namespace

double median(std::vector<double> values) {
    if (values.empty()) throw InvalidArgument("median of an empty list");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

FitReport evaluate_model(const StructuredModel& model, const SampleSet& test, bool absolute) {
    if (model.outputs() != test.outputs() || model.inputs() != test.inputs())
        throw DimensionMismatch("model and test data differ in input/output dimensions");

    FitReport report;
    report.absolute = absolute;
    report.order_used = static_cast<int>(model.order());
    std::vector<double> errors;
    errors.reserve(test.size());
    for (Index j = 0; j < test.size(); ++j) {
        double err;
        try {
            const CMat pred = eval_transfer(model, test.points[j]);
            const double diff = (pred - test.responses[j]).norm();
            err = absolute ? diff : diff / std::max(test.responses[j].norm(), 1e-300);
        } catch (const Error&) {
            err = std::numeric_limits<double>::infinity();
            ++report.failed_points;
        }
        report.per_point_error.emplace_back(test.points[j], err);
        errors.push_back(err);
    }
    report.median_error = median(std::move(errors));
    return report;
}

void write_trace_csv(const std::vector<TraceRow>& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "step,objective,residual_l2,wnn_term\n";
    for (const auto& row : trace)
        out << row.step << ',' << fmt_double(row.objective) << ',' << fmt_double(row.residual_l2)
            << ',' << fmt_double(row.wnn_term) << '\n';
    if (!out) throw IoError("failed writing '" + path + "'");
}

std::vector<TraceRow> read_trace_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::string line;
    if (!std::getline(in, line) || line != "step,objective,residual_l2,wnn_term")
        throw IoError("unexpected trace CSV header in '" + path + "'");
    std::vector<TraceRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != 4) throw IoError("malformed trace CSV row");
        rows.push_back({std::stol(cells[0]), std::stod(cells[1]), std::stod(cells[2]),
                        std::stod(cells[3])});
    }
    return rows;
}

void write_sv_csv(const CompressionReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "index,sv_horizontal,sv_vertical\n";
    const Index n = std::min(report.sv_horizontal.size(), report.sv_vertical.size());
    for (Index i = 0; i < n; ++i)
        out << (i + 1) << ',' << fmt_double(report.sv_horizontal[i]) << ','
            << fmt_double(report.sv_vertical[i]) << '\n';
    if (!out) throw IoError("failed writing '" + path + "'");
}

std::pair<RVec, RVec> read_sv_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::string line;
    if (!std::getline(in, line) || line != "index,sv_horizontal,sv_vertical")
        throw IoError("unexpected spectrum CSV header in '" + path + "'");
    std::vector<double> h, v;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != 3) throw IoError("malformed spectrum CSV row");
        h.push_back(std::stod(cells[1]));
        v.push_back(std::stod(cells[2]));
    }
    RVec hv(static_cast<Index>(h.size())), vv(static_cast<Index>(v.size()));
    for (Index i = 0; i < hv.size(); ++i) hv[i] = h[i];
    for (Index i = 0; i < vv.size(); ++i) vv[i] = v[i];
    return {hv, vv};
}

void write_error_csv(const FitReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    const bool freq =
        report.per_point_error.empty() || report.per_point_error.front().first.is_frequency();
    if (freq) {
        out << "s_re,s_im,error\n";
        for (const auto& [pt, err] : report.per_point_error)
            out << fmt_double(pt.s().real()) << ',' << fmt_double(pt.s().imag()) << ','
                << fmt_double(err) << '\n';
    } else {
        const Index d = report.per_point_error.front().first.p().size();
        for (Index k = 0; k < d; ++k) out << 'p' << k << ',';
        out << "error\n";
        for (const auto& [pt, err] : report.per_point_error) {
            for (Index k = 0; k < d; ++k) out << fmt_double(pt.p()[k]) << ',';
            out << fmt_double(err) << '\n';
        }
    }
    if (!out) throw IoError("failed writing '" + path + "'");
}

void write_report_json(const FitReport& report, const std::string& path) {
    nlohmann::json j;
    j["mode"] = report.mode;
    j["order_used"] = report.order_used;
    j["median_error"] = report.median_error;
    j["error_metric"] = report.absolute ? "absolute Frobenius"
                                        : "relative Frobenius (per-point normalization)";
    j["points"] = report.per_point_error.size();
    j["failed_points"] = report.failed_points;
    j["wall_time_seconds"] = report.wall_time_seconds;
    if (!report.config_echo.empty()) {
        try {
            j["config"] = nlohmann::json::parse(report.config_echo);
        } catch (...) {
            j["config"] = report.config_echo;
        }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << j.dump(1) << '\n';
    if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace strid
