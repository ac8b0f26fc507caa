#pragma once

#include <string>
#include <utility>
#include <vector>

#include "strid/compression.hpp"
#include "strid/model.hpp"
#include "strid/optimizer.hpp"
#include "strid/samples.hpp"

namespace strid {

/// Per-point evaluation of a model against test data. The error metric is the
/// relative Frobenius error |H - H~|_F / max(|H|_F, 1e-300) (absolute when
/// requested); evaluation failures count as infinity and are flagged.
struct FitReport {
    std::string mode;
    int order_used = 0;
    std::vector<std::pair<EvalPoint, double>> per_point_error;
    double median_error = 0.0;
    double wall_time_seconds = 0.0;
    bool absolute = false;
    int failed_points = 0;
    std::string config_echo;  // JSON text of the solver configuration, when known
};

FitReport evaluate_model(const StructuredModel& model, const SampleSet& test,
                         bool absolute = false);

/// Exact median (mean of the two middle values for even counts).
double median(std::vector<double> values);

/// CSV emission. Every file round-trips through its reader bit-exactly.
void write_trace_csv(const std::vector<TraceRow>& trace, const std::string& path);
std::vector<TraceRow> read_trace_csv(const std::string& path);

void write_sv_csv(const CompressionReport& report, const std::string& path);
std::pair<RVec, RVec> read_sv_csv(const std::string& path);

void write_error_csv(const FitReport& report, const std::string& path);

/// JSON summary of a fit report (median, per-point count, flags, config).
void write_report_json(const FitReport& report, const std::string& path);

}  // namespace strid
