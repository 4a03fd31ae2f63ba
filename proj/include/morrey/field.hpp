#pragma once

#include <functional>
#include <iosfwd>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "morrey/dyadic.hpp"
#include "morrey/quadrature.hpp"

namespace morrey {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Piecewise-constant function: one value per finest cell of the window.
class LatticeFunction {
 public:
  LatticeFunction(Window w, std::vector<double> values);

  static LatticeFunction constant(const Window& w, double c);
  // Value at each cell center.
  static LatticeFunction sample(const Window& w, const std::function<double(std::span<const double>)>& fn);
  // Cell average of the indicator of a box (exact overlap fraction).
  static LatticeFunction indicator(const Window& w, const Box& b);

  const Window& window() const { return window_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t cell) const { return values_[cell]; }
  // Value at a point; zero outside the window.
  double at(std::span<const double> x) const;

  LatticeFunction transformed(const std::function<double(double)>& fn) const;

 private:
  Window window_;
  std::vector<double> values_;
};

// Strictly positive weight.  Either arbitrary cell values, or the power
// weight |x|^gamma whose cell averages of every power w^e are computed from
// the exact integral of |x|^{gamma e}.
class Weight {
 public:
  static Weight from_values(const LatticeFunction& f);
  static Weight unit(const Window& w);
  static Weight power(double gamma, const Window& w, const PowerQuadrature& q = {});
  // Midpoint samples of |x|^gamma; defined for any gamma since 0 is never a
  // cell center.
  static Weight sampled_power(double gamma, const Window& w);

  const Window& window() const { return window_; }
  bool is_power() const { return gamma_.has_value(); }
  std::optional<double> power_exponent() const { return gamma_; }

  // Cell averages of w.
  const std::vector<double>& values() const { return *averages(1.0); }
  // Cell averages of w^e (e finite and nonzero).  For power weights the
  // average over a cell touching the origin is +inf when gamma*e <= -n.
  std::shared_ptr<const std::vector<double>> averages(double e) const;
  // Per-cell essential supremum of w^e.
  std::vector<double> cell_sup(double e) const;

  // w^e as a weight.
  Weight pow(double e) const;
  // a^ea * b^eb; stays symbolic when both factors are power weights.
  static Weight product(const Weight& a, double ea, const Weight& b, double eb);

 private:
  Weight(Window w, std::vector<double> values, std::optional<double> gamma, PowerQuadrature q);

  Window window_;
  std::vector<double> base_;  // cell values for lattice weights
  std::optional<double> gamma_;
  PowerQuadrature quad_;
  struct Cache {
    std::mutex mutex;
    std::map<double, std::shared_ptr<const std::vector<double>>> entries;
  };
  std::shared_ptr<Cache> cache_;
};

// Overlap-weighted mean of cell values over b intersected with the window.
double cell_average(const Window& w, std::span<const double> cells, const Box& b);
double cell_average(const LatticeFunction& f, const Box& b);

// (mean of |f|^e over b)^{1/e}; e = +inf gives the max of |f| over the cells
// meeting b.
double power_avg(const LatticeFunction& f, const Box& b, double e);
double power_avg(const Weight& w, const Box& b, double e);

LatticeFunction power_weight(double gamma, const Window& w, const PowerQuadrature& q = {});

// Dyadic BMO norm: max over window cubes of the mean of |b - m_Q b|.
double bmo_norm(const LatticeFunction& b);
// max over window cubes of (mean of |b - m_Q b|^e)^{1/e}.
double oscillation_norm(const LatticeFunction& b, double e);
// Mean of b over the window-clipped 3Q.
double lambda_avg(const LatticeFunction& b, const Cube& q);
double cube_mean(const LatticeFunction& f, const Cube& q);

// CSV: first line "level_min,level_max,dim", then one line per cell with its
// global finest-level index per axis followed by the value.
void write_csv(const LatticeFunction& f, std::ostream& out);
LatticeFunction read_csv(std::istream& in);
LatticeFunction read_csv_file(const std::string& path);

}  // namespace morrey
