#include "morrey/field.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace morrey {

LatticeFunction::LatticeFunction(Window w, std::vector<double> values)
    : window_(std::move(w)), values_(std::move(values)) {
  if (values_.size() != window_.cell_count())
    throw std::invalid_argument("lattice function has " + std::to_string(values_.size()) + " values, window has " +
                                std::to_string(window_.cell_count()) + " cells");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("lattice function values must be finite");
}

LatticeFunction LatticeFunction::constant(const Window& w, double c) {
  return LatticeFunction(w, std::vector<double>(w.cell_count(), c));
}

LatticeFunction LatticeFunction::sample(const Window& w, const std::function<double(std::span<const double>)>& fn) {
  std::vector<double> v(w.cell_count());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(w.cell_center(i));
  return LatticeFunction(w, std::move(v));
}

LatticeFunction LatticeFunction::indicator(const Window& w, const Box& b) {
  std::vector<double> v(w.cell_count());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Box cell = box_of(w.cell_cube(i));
    v[i] = intersect(cell, b).volume() / cell.volume();
  }
  return LatticeFunction(w, std::move(v));
}

double LatticeFunction::at(std::span<const double> x) const {
  if (!window_.contains(x)) return 0.0;
  const Box box = window_.box();
  Index c(window_.dim());
  for (int a = 0; a < window_.dim(); ++a)
    c[a] = static_cast<std::int64_t>(std::floor(std::ldexp(x[a] - box.lower[a], -window_.level_min())));
  return values_[window_.cell_linear(c)];
}

LatticeFunction LatticeFunction::transformed(const std::function<double(double)>& fn) const {
  std::vector<double> v(values_.size());
  std::transform(values_.begin(), values_.end(), v.begin(), fn);
  return LatticeFunction(window_, std::move(v));
}

// ---------------------------------------------------------------------------

Weight::Weight(Window w, std::vector<double> values, std::optional<double> gamma, PowerQuadrature q)
    : window_(std::move(w)), base_(std::move(values)), gamma_(gamma), quad_(q),
      cache_(std::make_shared<Cache>()) {}

Weight Weight::from_values(const LatticeFunction& f) {
  for (double v : f.values())
    if (!(v > 0.0)) throw std::invalid_argument("weight values must be strictly positive");
  return Weight(f.window(), f.values(), std::nullopt, {});
}

Weight Weight::unit(const Window& w) { return Weight(w, std::vector<double>(w.cell_count(), 1.0), std::nullopt, {}); }

Weight Weight::power(double gamma, const Window& w, const PowerQuadrature& q) {
  if (gamma <= -w.dim()) throw std::invalid_argument("power weight exponent must exceed -n");
  return Weight(w, {}, gamma, q);
}

Weight Weight::sampled_power(double gamma, const Window& w) {
  return from_values(LatticeFunction::sample(w, [gamma](std::span<const double> x) {
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    return std::pow(r2, 0.5 * gamma);
  }));
}

std::shared_ptr<const std::vector<double>> Weight::averages(double e) const {
  if (e == 0.0 || !std::isfinite(e)) throw std::invalid_argument("weight power must be finite and nonzero");
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto it = cache_->entries.find(e);
  if (it != cache_->entries.end()) return it->second;
  std::vector<double> out(window_.cell_count());
  if (gamma_) {
    const double c = *gamma_ * e;
    const double vol = window_.cell_volume();
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = c == 0.0 ? 1.0 : power_integral(c, box_of(window_.cell_cube(i)), quad_) / vol;
  } else {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = e == 1.0 ? base_[i] : std::pow(base_[i], e);
  }
  auto ptr = std::make_shared<const std::vector<double>>(std::move(out));
  cache_->entries.emplace(e, ptr);
  return ptr;
}

std::vector<double> Weight::cell_sup(double e) const {
  std::vector<double> out(window_.cell_count());
  if (!gamma_) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::pow(base_[i], e);
    return out;
  }
  const double c = *gamma_ * e;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Box b = box_of(window_.cell_cube(i));
    double near2 = 0.0, far2 = 0.0;
    for (int a = 0; a < b.dim(); ++a) {
      const double lo = b.lower[a], hi = b.upper[a];
      const double near = (lo <= 0.0 && hi >= 0.0) ? 0.0 : std::min(std::abs(lo), std::abs(hi));
      const double far = std::max(std::abs(lo), std::abs(hi));
      near2 += near * near;
      far2 += far * far;
    }
    if (c == 0.0)
      out[i] = 1.0;
    else if (c > 0.0)
      out[i] = std::pow(far2, 0.5 * c);
    else
      out[i] = near2 == 0.0 ? kInfinity : std::pow(near2, 0.5 * c);
  }
  return out;
}

Weight Weight::pow(double e) const {
  if (gamma_) return Weight(window_, {}, *gamma_ * e, quad_);
  std::vector<double> v(base_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(base_[i], e);
  return Weight(window_, std::move(v), std::nullopt, quad_);
}

Weight Weight::product(const Weight& a, double ea, const Weight& b, double eb) {
  if (!(a.window_ == b.window_)) throw std::invalid_argument("weights live on different windows");
  if (a.gamma_ && b.gamma_) return Weight(a.window_, {}, *a.gamma_ * ea + *b.gamma_ * eb, a.quad_);
  const auto& av = *a.averages(ea);
  const auto& bv = *b.averages(eb);
  std::vector<double> v(av.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = av[i] * bv[i];
  return Weight(a.window_, std::move(v), std::nullopt, a.quad_);
}

// ---------------------------------------------------------------------------

namespace {

// Calls fn(cell, overlap volume) for every cell meeting b.
template <class Fn>
double for_overlap(const Window& w, const Box& b, Fn fn) {
  const int n = w.dim();
  const Box wb = w.box();
  const Box clip = intersect(b, wb);
  if (clip.empty()) throw std::invalid_argument("box does not meet the window");
  const double h = w.cell_side();
  Index lo(n), hi(n), c(n);
  for (int a = 0; a < n; ++a) {
    lo[a] = static_cast<std::int64_t>(std::floor((clip.lower[a] - wb.lower[a]) / h));
    hi[a] = static_cast<std::int64_t>(std::ceil((clip.upper[a] - wb.lower[a]) / h));
    lo[a] = std::max<std::int64_t>(lo[a], 0);
    hi[a] = std::min<std::int64_t>(hi[a], w.cells_per_axis());
  }
  c = lo;
  double total = 0.0;
  while (true) {
    double ov = 1.0;
    for (int a = 0; a < n; ++a) {
      const double cl = wb.lower[a] + static_cast<double>(c[a]) * h;
      ov *= std::max(0.0, std::min(cl + h, clip.upper[a]) - std::max(cl, clip.lower[a]));
    }
    if (ov > 0.0) {
      fn(w.cell_linear(c), ov);
      total += ov;
    }
    int a = n - 1;
    while (a >= 0 && ++c[a] == hi[a]) {
      c[a] = lo[a];
      --a;
    }
    if (a < 0) break;
  }
  return total;
}

}  // namespace

double cell_average(const Window& w, std::span<const double> cells, const Box& b) {
  double s = 0.0;
  const double vol = for_overlap(w, b, [&](std::size_t i, double ov) { s += cells[i] * ov; });
  return s / vol;
}

double cell_average(const LatticeFunction& f, const Box& b) { return cell_average(f.window(), f.values(), b); }

double power_avg(const LatticeFunction& f, const Box& b, double e) {
  if (e == 0.0) throw std::invalid_argument("power average needs a nonzero exponent");
  const auto& v = f.values();
  if (std::isinf(e)) {
    double m = 0.0;
    for_overlap(f.window(), b, [&](std::size_t i, double) { m = std::max(m, std::abs(v[i])); });
    return m;
  }
  double s = 0.0;
  const double vol = for_overlap(f.window(), b, [&](std::size_t i, double ov) {
    const double x = std::abs(v[i]);
    if (e < 0.0 && x == 0.0) throw std::domain_error("negative power of a vanishing value");
    s += std::pow(x, e) * ov;
  });
  return std::pow(s / vol, 1.0 / e);
}

double power_avg(const Weight& w, const Box& b, double e) {
  if (e == 0.0) throw std::invalid_argument("power average needs a nonzero exponent");
  if (std::isinf(e)) {
    const auto sup = w.cell_sup(1.0);
    double m = 0.0;
    for_overlap(w.window(), b, [&](std::size_t i, double) { m = std::max(m, sup[i]); });
    return m;
  }
  return std::pow(cell_average(w.window(), *w.averages(e), b), 1.0 / e);
}

LatticeFunction power_weight(double gamma, const Window& w, const PowerQuadrature& q) {
  const Weight pw = Weight::power(gamma, w, q);
  return LatticeFunction(w, pw.values());
}

double cube_mean(const LatticeFunction& f, const Cube& q) {
  double s = 0.0;
  const auto cells = f.window().cells_of(q);
  for (auto i : cells) s += f[i];
  return s / static_cast<double>(cells.size());
}

double oscillation_norm(const LatticeFunction& b, double e) {
  const Window& w = b.window();
  double best = 0.0;
  for (const Cube& q : w.all_cubes()) {
    const auto cells = w.cells_of(q);
    double mean = 0.0;
    for (auto i : cells) mean += b[i];
    mean /= static_cast<double>(cells.size());
    double osc = 0.0;
    for (auto i : cells) osc += e == 1.0 ? std::abs(b[i] - mean) : std::pow(std::abs(b[i] - mean), e);
    osc /= static_cast<double>(cells.size());
    best = std::max(best, e == 1.0 ? osc : std::pow(osc, 1.0 / e));
  }
  return best;
}

double bmo_norm(const LatticeFunction& b) { return oscillation_norm(b, 1.0); }

double lambda_avg(const LatticeFunction& b, const Cube& q) { return cell_average(b, dilate3(q)); }

// ---------------------------------------------------------------------------

void write_csv(const LatticeFunction& f, std::ostream& out) {
  const Window& w = f.window();
  out << w.level_min() << ',' << w.level_max() << ',' << w.dim() << '\n';
  out.precision(17);
  const int span = w.level_max() - w.level_min();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Index c = w.cell_coords(i);
    for (int a = 0; a < w.dim(); ++a) out << (c[a] + (w.origin_offset()[a] << span)) << ',';
    out << f[i] << '\n';
  }
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

bool skip_line(const std::string& line) {
  const auto p = line.find_first_not_of(" \t\r");
  return p == std::string::npos || line[p] == '#';
}

}  // namespace

LatticeFunction read_csv(std::istream& in) {
  std::string line;
  while (std::getline(in, line) && skip_line(line)) {
  }
  const auto head = split_commas(line);
  if (head.size() != 3) throw std::runtime_error("csv header must be level_min,level_max,dim");
  const int lmin = std::stoi(head[0]), lmax = std::stoi(head[1]), dim = std::stoi(head[2]);
  if (dim < 1 || lmin > lmax) throw std::runtime_error("csv header has an invalid window");
  const int span = lmax - lmin;

  std::vector<std::pair<Index, double>> rows;
  while (std::getline(in, line)) {
    if (skip_line(line)) continue;
    const auto parts = split_commas(line);
    if (static_cast<int>(parts.size()) != dim + 1) throw std::runtime_error("csv row has wrong arity: " + line);
    Index idx(dim);
    for (int a = 0; a < dim; ++a) idx[a] = std::stoll(parts[a]);
    rows.emplace_back(std::move(idx), std::stod(parts[dim]));
  }
  if (rows.empty()) throw std::runtime_error("csv has no cells");

  Index origin(dim);
  std::int64_t extent = 1;
  for (int a = 0; a < dim; ++a) {
    std::int64_t lo = rows[0].first[a], hi = lo;
    for (const auto& r : rows) {
      lo = std::min(lo, r.first[a]);
      hi = std::max(hi, r.first[a]);
    }
    origin[a] = lo >> span;
    extent = std::max(extent, (hi >> span) - origin[a] + 1);
  }
  Window w(dim, lmin, lmax, origin, static_cast<int>(extent));
  if (rows.size() != w.cell_count()) throw std::runtime_error("csv does not cover a full window");
  std::vector<double> values(w.cell_count());
  std::vector<bool> seen(w.cell_count(), false);
  for (const auto& [idx, v] : rows) {
    Index local(dim);
    for (int a = 0; a < dim; ++a) local[a] = idx[a] - (origin[a] << span);
    for (int a = 0; a < dim; ++a)
      if (local[a] < 0 || local[a] >= w.cells_per_axis()) throw std::runtime_error("csv cell outside window");
    const std::size_t lin = w.cell_linear(local);
    if (seen[lin]) throw std::runtime_error("csv repeats a cell");
    seen[lin] = true;
    values[lin] = v;
  }
  return LatticeFunction(w, std::move(values));
}

LatticeFunction read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_csv(in);
}

}  // namespace morrey
