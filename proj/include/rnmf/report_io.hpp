#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "rnmf/experiment.hpp"

namespace rnmf {

inline constexpr const char* kRecordsHeader =
    "dataset,noise,solver,k,trial,seed,rmse_clean,rmse_noisy,acc,nmi,runtime_ms";
inline constexpr const char* kSummaryHeader = "solver,k,metric,mean,std";

/// Six significant digits, printf "%.6g".
std::string format_real(double value);

/// Quotes a field when it contains a comma, quote or line break; embedded
/// quotes are doubled.
std::string csv_field(const std::string& raw);

/// Joins escaped fields with commas and terminates with '\n'.
std::string csv_row(const std::vector<std::string>& fields);

std::vector<std::string> record_fields(const MetricsReport& rec);
std::vector<std::string> summary_fields(const SummaryRow& row);

/// Writes <dir>/records.csv and <dir>/summary.csv, creating dir if needed.
void write_csv(const ExperimentReport& report, const std::filesystem::path& dir);

/// Writes <dir>/{rmse,acc,nmi}.svg and <dir>/plotdata.txt from the summaries.
void emit_plot_data(const ExperimentReport& report, const std::filesystem::path& dir);

/// Human-readable summary table.
void print_summary(const ExperimentReport& report, std::ostream& out);

}  // namespace rnmf
