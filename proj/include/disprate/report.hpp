#pragma once

#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "disprate/scaling.hpp"

namespace disprate::report {

// One measurement row. predicted/tolerance are NaN when the row has no
// prediction (pass is then informational-true unless forced otherwise).
struct ReportRow {
    std::string experiment;
    std::string params;  // "a=2;delta=0.25;..."
    std::string metric;
    double measured = 0.0;
    double predicted = std::numeric_limits<double>::quiet_NaN();
    double tolerance = std::numeric_limits<double>::quiet_NaN();
    bool pass = true;
};

// Shortest representation that round-trips binary64 (up to 17 significant digits).
std::string format_double(double v);

// RFC-4180 CSV with a header row; numeric fields use format_double.
void write_csv(const std::filesystem::path& path, const std::vector<ReportRow>& rows);

struct Series {
    std::string name;
    std::vector<scaling::ScalingSample> points;
    bool has_fit = false;
    scaling::ScalingFit fit;
};

// Writes series_<name>.dat with two whitespace-separated columns
// (log2 parameter, log2 value) and, when a fit is attached,
// series_<name>_fit.dat with the two end points of the fit line.
// Refuses empty series.
void emit_plot_data(const std::filesystem::path& out_dir, const Series& series);

}  // namespace disprate::report
