#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace morrey {

struct ReportRow {
  int trial = 0;
  int level_min = 0;
  int level_max = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  std::string input;
};

// lhs / rhs with rhs = 0 giving +inf (lhs > 0) or 0 (lhs = 0).
double safe_ratio(double lhs, double rhs);

struct Report {
  std::string experiment;
  std::vector<ReportRow> rows;
  // Per-window extras such as the weight constant, keyed by name.
  std::vector<std::pair<std::string, std::vector<double>>> window_values;
  // Scalar extras (observed constants, auxiliary indices, ...).
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::string> notes;
  std::vector<std::string> invariant_failures;
  std::map<std::string, std::string> config;
  unsigned long long seed = 0;

  // Max ratio over the rows of each window, in window order.
  std::vector<double> window_max() const;
  double max_ratio() const;
  double median_ratio() const;
  // window_max[i+1] / window_max[i].
  std::vector<double> growth() const;
};

std::string report_csv(const Report& r);
std::string report_json(const Report& r);
// Writes <path>.csv and <path>.json.
void emit_report(const Report& r, const std::string& path);

}  // namespace morrey
