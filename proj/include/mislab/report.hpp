#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mislab/bench.hpp"

namespace mislab {

/// size / (n ln(d) / d). Throws ParameterError for d <= 1 or n == 0.
double theoretical_ratio(std::size_t n, double d, double size);

struct ReportRow {
  std::string cell;
  std::string family;
  std::size_t n = 0;
  std::optional<double> d;
  std::optional<std::size_t> m;
  std::string solver;
  bool ls_applied = false;
  std::size_t count = 0;
  std::size_t failed = 0;
  double mean_size = 0;
  double std_size = 0;  // sample standard deviation; 0 for a single record
  double mean_time = 0;
  std::optional<double> mean_ratio;  // ER cells only
  std::optional<ThirdsSummary> mean_thirds;
  std::optional<double> ls_delta;  // set by ls_delta_report
  bool highlighted = false;        // within 1% of the best row of its cell

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct ReportTable {
  std::vector<ReportRow> rows;  // sorted by (cell order, solver, ls)

  nlohmann::json to_json() const;
  static ReportTable from_json(const nlohmann::json& j);
  friend bool operator==(const ReportTable&, const ReportTable&) = default;
};

inline constexpr double kHighlightTolerance = 0.01;

/// Groups by (cell, solver, ls_applied). Failed records are counted but
/// excluded from the means. Rows are highlighted when their mean size is
/// within 1% of the best mean among rows of the same cell and ls flag.
ReportTable aggregate_table(const std::vector<BenchRecord>& records);

/// Pairs records by (cell, graph, solver) and reports post-LS means with
/// delta = mean LS size - mean base size. Throws ParameterError listing
/// unmatched keys.
ReportTable ls_delta_report(const std::vector<BenchRecord>& base,
                            const std::vector<BenchRecord>& ls);

/// "152.75 (1.75)".
std::string format_final_delta(double final_mean, double delta);

enum class ReportFormat { Csv, Json, Markdown };
ReportFormat parse_report_format(const std::string& name);

std::string table_csv(const ReportTable& table);
std::string table_markdown(const ReportTable& table);

/// Heatmap of mean ratio for one solver: one row per n, one column per d.
std::string ratio_heatmap_csv(const ReportTable& table, const std::string& solver,
                              bool ls_applied = false);

/// Mean thirds percentages per cell for one solver.
std::string thirds_csv(const ReportTable& table, const std::string& solver,
                       bool ls_applied = false);

/// Writes the mean-size table in `format` plus heatmap_<solver>.csv for every
/// solver with ER rows and thirds_<solver>.csv for every solver with
/// serialization data. Returns the written paths. Throws std::runtime_error
/// when the directory cannot be written.
std::vector<std::string> emit_reports(const ReportTable& table, ReportFormat format,
                                      const std::string& out_dir);

std::string render_table(const ReportTable& table, ReportFormat format);

}  // namespace mislab
