#include "disprate/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace disprate::report {

std::string format_double(double v) {
    char buf[40];
    // round-trip: try increasing precision until the parse comes back exact
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return buf;
}

namespace {

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') out += '"';
    }
    out += '"';
    return out;
}

std::string csv_number(double v) { return std::isnan(v) ? std::string{} : format_double(v); }

}  // namespace

void write_csv(const std::filesystem::path& path, const std::vector<ReportRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path.string());
    out << "experiment,params,metric,measured,predicted,tolerance,pass\r\n";
    for (const ReportRow& r : rows) {
        out << csv_quote(r.experiment) << ',' << csv_quote(r.params) << ',' << csv_quote(r.metric) << ','
            << csv_number(r.measured) << ',' << csv_number(r.predicted) << ',' << csv_number(r.tolerance)
            << ',' << (r.pass ? "true" : "false") << "\r\n";
    }
    if (!out) throw std::runtime_error("write_csv: write failed for " + path.string());
}

void emit_plot_data(const std::filesystem::path& out_dir, const Series& series) {
    if (series.points.empty())
        throw std::invalid_argument("emit_plot_data: refusing to write empty series '" + series.name + "'");

    const std::filesystem::path data_path = out_dir / ("series_" + series.name + ".dat");
    std::ofstream data(data_path, std::ios::binary);
    if (!data) throw std::runtime_error("emit_plot_data: cannot open " + data_path.string());
    for (const auto& p : series.points) {
        if (!(p.parameter > 0.0) || !(p.value > 0.0))
            throw std::domain_error("emit_plot_data: nonpositive sample in series '" + series.name + "'");
        data << format_double(std::log2(p.parameter)) << ' ' << format_double(std::log2(p.value)) << '\n';
    }
    if (!data) throw std::runtime_error("emit_plot_data: write failed for " + data_path.string());

    if (series.has_fit) {
        double lo = std::log2(series.points.front().parameter);
        double hi = lo;
        for (const auto& p : series.points) {
            lo = std::min(lo, std::log2(p.parameter));
            hi = std::max(hi, std::log2(p.parameter));
        }
        const std::filesystem::path fit_path = out_dir / ("series_" + series.name + "_fit.dat");
        std::ofstream fit(fit_path, std::ios::binary);
        if (!fit) throw std::runtime_error("emit_plot_data: cannot open " + fit_path.string());
        fit << format_double(lo) << ' ' << format_double(series.fit.slope * lo + series.fit.intercept)
            << '\n'
            << format_double(hi) << ' ' << format_double(series.fit.slope * hi + series.fit.intercept)
            << '\n';
        if (!fit) throw std::runtime_error("emit_plot_data: write failed for " + fit_path.string());
    }
}

}  // namespace disprate::report
