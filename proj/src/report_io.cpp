#include "rnmf/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>

#include "rnmf/svg_plot.hpp"

namespace rnmf {
namespace fs = std::filesystem;

namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error(dir.string() + ": cannot create output directory (" + ec.message() + ")");
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << contents;
  out.flush();
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

const char* metric_title(const std::string& metric) {
  if (metric == "rmse") return "RMSE";
  if (metric == "acc") return "ACC";
  return "NMI";
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\r\n") == std::string::npos) return raw;
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += csv_field(fields[i]);
  }
  line += '\n';
  return line;
}

std::vector<std::string> record_fields(const MetricsReport& r) {
  return {r.dataset,
          r.noise,
          to_string(r.solver),
          std::to_string(r.k),
          std::to_string(r.trial),
          std::to_string(r.seed),
          format_real(r.rmse_clean),
          format_real(r.rmse_noisy),
          format_real(r.acc),
          format_real(r.nmi),
          std::to_string(r.runtime_ms)};
}

std::vector<std::string> summary_fields(const SummaryRow& row) {
  return {to_string(row.solver), std::to_string(row.k), row.metric, format_real(row.mean), format_real(row.std)};
}

void write_csv(const ExperimentReport& report, const fs::path& dir) {
  ensure_dir(dir);
  std::string records = std::string(kRecordsHeader) + "\n";
  for (const auto& r : report.records) records += csv_row(record_fields(r));
  write_file(dir / "records.csv", records);

  std::string summary = std::string(kSummaryHeader) + "\n";
  for (const auto& s : report.summaries) summary += csv_row(summary_fields(s));
  write_file(dir / "summary.csv", summary);
}

void emit_plot_data(const ExperimentReport& report, const fs::path& dir) {
  if (report.summaries.empty()) throw std::invalid_argument("emit_plot_data: report has no summaries");
  ensure_dir(dir);
  std::string sidecar = "# metric solver k mean std\n";
  for (const char* metric : {"rmse", "acc", "nmi"}) {
    LineChart chart;
    chart.title = std::string(metric_title(metric)) + " vs number of components";
    chart.x_label = "k";
    chart.y_label = metric_title(metric);
    std::map<SolverKind, std::size_t> slot;
    for (const auto& row : report.summaries) {
      if (row.metric != metric) continue;
      auto [it, fresh] = slot.emplace(row.solver, chart.series.size());
      if (fresh) chart.series.push_back(PlotSeries{to_string(row.solver), {}, {}, {}});
      auto& series = chart.series[it->second];
      series.x.push_back(row.k);
      series.y.push_back(row.mean);
      series.error.push_back(row.std);
      sidecar += std::string(metric) + ' ' + to_string(row.solver) + ' ' + std::to_string(row.k) + ' ' +
                 format_real(row.mean) + ' ' + format_real(row.std) + '\n';
    }
    write_file(dir / (std::string(metric) + ".svg"), render_line_chart(chart));
  }
  write_file(dir / "plotdata.txt", sidecar);
}

void print_summary(const ExperimentReport& report, std::ostream& out) {
  out << std::left << std::setw(8) << "solver" << std::setw(6) << "k" << std::setw(8) << "metric" << std::setw(14)
      << "mean" << "std\n";
  for (const auto& row : report.summaries) {
    out << std::left << std::setw(8) << to_string(row.solver) << std::setw(6) << row.k << std::setw(8) << row.metric
        << std::setw(14) << format_real(row.mean) << format_real(row.std) << '\n';
  }
}

}  // namespace rnmf
