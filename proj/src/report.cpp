#include "morrey/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "morrey/text.hpp"

namespace morrey {

double safe_ratio(double lhs, double rhs) {
  if (rhs == 0.0) return lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return lhs / rhs;
}

namespace {

std::vector<std::pair<int, int>> window_order(const Report& r) {
  std::vector<std::pair<int, int>> out;
  for (const auto& row : r.rows) {
    const std::pair<int, int> key{row.level_min, row.level_max};
    if (std::find(out.begin(), out.end(), key) == out.end()) out.push_back(key);
  }
  return out;
}

// Finite numbers stay numbers; inf and nan become strings since JSON has
// no spelling for them.
nlohmann::ordered_json num(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

}  // namespace

std::vector<double> Report::window_max() const {
  const auto order = window_order(*this);
  std::vector<double> out(order.size(), 0.0);
  for (const auto& row : rows) {
    const auto i = std::find(order.begin(), order.end(), std::pair{row.level_min, row.level_max}) - order.begin();
    out[i] = std::max(out[i], row.ratio);
  }
  return out;
}

double Report::max_ratio() const {
  double m = 0.0;
  for (const auto& row : rows) m = std::max(m, row.ratio);
  return m;
}

double Report::median_ratio() const {
  if (rows.empty()) return 0.0;
  std::vector<double> v;
  for (const auto& row : rows) v.push_back(row.ratio);
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

std::vector<double> Report::growth() const {
  const auto m = window_max();
  std::vector<double> g;
  for (std::size_t i = 1; i < m.size(); ++i) g.push_back(safe_ratio(m[i], m[i - 1]));
  return g;
}

std::string report_csv(const Report& r) {
  std::ostringstream out;
  out << "trial,level_min,level_max,lhs,rhs,ratio,input\n";
  for (const auto& row : r.rows)
    out << row.trial << ',' << row.level_min << ',' << row.level_max << ',' << format_number(row.lhs) << ','
        << format_number(row.rhs) << ',' << format_number(row.ratio) << ',' << row.input << '\n';
  return out.str();
}

std::string report_json(const Report& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["experiment"] = r.experiment;
  j["version"] = MORREY_VERSION;
  j["seed"] = r.seed;
  j["rows"] = r.rows.size();
  const auto order = window_order(r);
  j["windows"] = order.size();
  j["max_ratio"] = num(r.max_ratio());
  j["median_ratio"] = num(r.median_ratio());

  ordered_json per = ordered_json::array();
  const auto wm = r.window_max();
  for (std::size_t i = 0; i < order.size(); ++i)
    per.push_back({{"level_min", order[i].first}, {"level_max", order[i].second}, {"max_ratio", num(wm[i])}});
  j["window_max"] = per;

  const auto g = r.growth();
  ordered_json growth = ordered_json::array();
  for (double x : g) growth.push_back(num(x));
  j["growth"] = growth;
  const double worst = g.empty() ? 0.0 : *std::max_element(g.begin(), g.end());
  const double least = g.empty() ? 0.0 : *std::min_element(g.begin(), g.end());
  j["flags"] = {{"stable", !g.empty() && worst < 2.0},
                {"monotone_growth_ge_2", !g.empty() && least >= 2.0},
                {"min_growth", num(least)},
                {"max_growth", num(worst)}};

  ordered_json wv = ordered_json::object();
  for (const auto& [name, values] : r.window_values) {
    ordered_json arr = ordered_json::array();
    for (double x : values) arr.push_back(num(x));
    wv[name] = arr;
  }
  j["window_values"] = wv;
  ordered_json vals = ordered_json::object();
  for (const auto& [name, x] : r.values) vals[name] = num(x);
  j["values"] = vals;
  j["notes"] = r.notes;
  j["invariant_failures"] = r.invariant_failures;
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : r.config) cfg[k] = v;
  j["config"] = cfg;
  return j.dump(2) + "\n";
}

void emit_report(const Report& r, const std::string& path) {
  for (const auto& [suffix, text] : {std::pair{".csv", report_csv(r)}, std::pair{".json", report_json(r)}}) {
    std::ofstream out(path + suffix, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path + suffix);
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path + suffix);
  }
}

}  // namespace morrey
