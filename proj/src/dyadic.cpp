#include "morrey/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace morrey {

double Cube::side() const { return std::ldexp(1.0, level); }

double Cube::volume() const { return std::ldexp(1.0, level * dim()); }

double Box::volume() const {
  double v = 1.0;
  for (int a = 0; a < dim(); ++a) v *= std::max(0.0, upper[a] - lower[a]);
  return v;
}

bool Box::empty() const {
  for (int a = 0; a < dim(); ++a)
    if (!(upper[a] > lower[a])) return true;
  return false;
}

bool Box::contains(std::span<const double> x) const {
  for (int a = 0; a < dim(); ++a)
    if (x[a] < lower[a] || x[a] >= upper[a]) return false;
  return true;
}

Box box_of(const Cube& q) {
  Box b;
  for (auto m : q.index) {
    b.lower.push_back(std::ldexp(static_cast<double>(m), q.level));
    b.upper.push_back(std::ldexp(static_cast<double>(m + 1), q.level));
  }
  return b;
}

std::vector<Cube> children(const Cube& q) {
  const int n = q.dim();
  std::vector<Cube> out;
  out.reserve(std::size_t{1} << n);
  for (unsigned corner = 0; corner < (1u << n); ++corner) {
    Cube c{q.level - 1, q.index};
    for (int a = 0; a < n; ++a)
      c.index[a] = 2 * q.index[a] + ((corner >> (n - 1 - a)) & 1u);
    out.push_back(std::move(c));
  }
  return out;
}

Cube parent(const Cube& q) {
  Cube p{q.level + 1, q.index};
  for (auto& m : p.index) m >>= 1;  // arithmetic shift floors negatives
  return p;
}

bool contains(const Cube& outer, const Cube& inner) {
  if (inner.level > outer.level || inner.dim() != outer.dim()) return false;
  const int shift = outer.level - inner.level;
  for (int a = 0; a < inner.dim(); ++a)
    if ((inner.index[a] >> shift) != outer.index[a]) return false;
  return true;
}

bool disjoint(const Cube& a, const Cube& b) { return !contains(a, b) && !contains(b, a); }

Box intersect(const Box& a, const Box& b) {
  Box r;
  for (int i = 0; i < a.dim(); ++i) {
    r.lower.push_back(std::max(a.lower[i], b.lower[i]));
    r.upper.push_back(std::min(a.upper[i], b.upper[i]));
  }
  return r;
}

Box dilate3(const Cube& q) {
  Box b = box_of(q);
  const double s = q.side();
  for (int a = 0; a < q.dim(); ++a) {
    b.lower[a] -= s;
    b.upper[a] += s;
  }
  return b;
}

Window::Window(int dim, int level_min, int level_max)
    : Window(dim, level_min, level_max, Index(static_cast<std::size_t>(std::max(dim, 0)), -1), 2) {}

Window::Window(int dim, int level_min, int level_max, Index origin_offset, int top_extent)
    : dim_(dim), level_min_(level_min), level_max_(level_max), origin_(std::move(origin_offset)),
      top_extent_(top_extent) {
  if (dim_ < 1) throw std::invalid_argument("window dimension must be at least 1");
  if (level_min_ > level_max_) throw std::invalid_argument("window needs level_min <= level_max");
  if (level_max_ - level_min_ > 40) throw std::invalid_argument("window level span too large");
  if (static_cast<int>(origin_.size()) != dim_)
    throw std::invalid_argument("window origin offset has wrong length");
  if (top_extent_ < 1) throw std::invalid_argument("window top extent must be positive");
}

double Window::cell_side() const { return std::ldexp(1.0, level_min_); }

double Window::cell_volume() const { return std::ldexp(1.0, level_min_ * dim_); }

Box Window::box() const {
  Box b;
  for (int a = 0; a < dim_; ++a) {
    b.lower.push_back(std::ldexp(static_cast<double>(origin_[a]), level_max_));
    b.upper.push_back(std::ldexp(static_cast<double>(origin_[a] + top_extent_), level_max_));
  }
  return b;
}

std::int64_t Window::cubes_per_axis(int level) const {
  return static_cast<std::int64_t>(top_extent_) << (level_max_ - level);
}

std::size_t Window::cube_count(int level) const {
  std::size_t c = 1;
  for (int a = 0; a < dim_; ++a) c *= static_cast<std::size_t>(cubes_per_axis(level));
  return c;
}

std::size_t Window::cube_total() const {
  std::size_t c = 0;
  for (int k = level_min_; k <= level_max_; ++k) c += cube_count(k);
  return c;
}

bool Window::contains(const Cube& q) const {
  if (q.dim() != dim_ || q.level < level_min_ || q.level > level_max_) return false;
  const std::int64_t count = cubes_per_axis(q.level);
  for (int a = 0; a < dim_; ++a) {
    const std::int64_t c = q.index[a] - (origin_[a] << (level_max_ - q.level));
    if (c < 0 || c >= count) return false;
  }
  return true;
}

bool Window::contains(std::span<const double> x) const {
  return static_cast<int>(x.size()) == dim_ && box().contains(x);
}

std::size_t Window::local_linear(const Cube& q) const {
  const std::int64_t count = cubes_per_axis(q.level);
  const Index c = local_coords(q);
  std::size_t lin = 0;
  for (int a = 0; a < dim_; ++a) lin = lin * count + static_cast<std::size_t>(c[a]);
  return lin;
}

Index Window::local_coords(const Cube& q) const {
  if (!contains(q)) throw std::out_of_range("cube outside window");
  Index c(dim_);
  for (int a = 0; a < dim_; ++a) c[a] = q.index[a] - (origin_[a] << (level_max_ - q.level));
  return c;
}

Cube Window::cube_at(int level, std::size_t linear) const {
  const std::int64_t count = cubes_per_axis(level);
  Cube q{level, Index(dim_)};
  for (int a = dim_ - 1; a >= 0; --a) {
    q.index[a] = static_cast<std::int64_t>(linear % count) + (origin_[a] << (level_max_ - level));
    linear /= count;
  }
  return q;
}

std::vector<Cube> Window::cubes_at(int level) const {
  std::vector<Cube> out;
  const std::size_t count = cube_count(level);
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(cube_at(level, i));
  return out;
}

std::vector<Cube> Window::all_cubes() const {
  std::vector<Cube> out;
  out.reserve(cube_total());
  for (int k = level_max_; k >= level_min_; --k) {
    auto level = cubes_at(k);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

Index Window::cell_coords(std::size_t cell) const {
  const std::int64_t count = cells_per_axis();
  Index c(dim_);
  for (int a = dim_ - 1; a >= 0; --a) {
    c[a] = static_cast<std::int64_t>(cell % count);
    cell /= count;
  }
  return c;
}

std::size_t Window::cell_linear(std::span<const std::int64_t> coords) const {
  const std::int64_t count = cells_per_axis();
  std::size_t lin = 0;
  for (int a = 0; a < dim_; ++a) lin = lin * count + static_cast<std::size_t>(coords[a]);
  return lin;
}

std::vector<double> Window::cell_center(std::size_t cell) const {
  const Index c = cell_coords(cell);
  const Box b = box();
  std::vector<double> x(dim_);
  for (int a = 0; a < dim_; ++a) x[a] = b.lower[a] + (static_cast<double>(c[a]) + 0.5) * cell_side();
  return x;
}

std::pair<Index, Index> Window::cell_range(const Cube& q) const {
  if (!contains(q)) throw std::out_of_range("cube outside window");
  const int shift = q.level - level_min_;
  Index lo(dim_), hi(dim_);
  for (int a = 0; a < dim_; ++a) {
    const std::int64_t c = q.index[a] - (origin_[a] << (level_max_ - q.level));
    lo[a] = c << shift;
    hi[a] = (c + 1) << shift;
  }
  return {lo, hi};
}

std::vector<std::size_t> Window::cells_of(const Cube& q) const {
  auto [lo, hi] = cell_range(q);
  std::vector<std::size_t> out;
  Index c = lo;
  while (true) {
    out.push_back(cell_linear(c));
    int a = dim_ - 1;
    while (a >= 0 && ++c[a] == hi[a]) {
      c[a] = lo[a];
      --a;
    }
    if (a < 0) break;
  }
  return out;
}

std::pair<Index, Index> Window::dilate3_cell_range(const Cube& q) const {
  auto [lo, hi] = cell_range(q);
  const std::int64_t s = std::int64_t{1} << (q.level - level_min_);
  const std::int64_t n = cells_per_axis();
  for (int a = 0; a < dim_; ++a) {
    lo[a] = std::max<std::int64_t>(0, lo[a] - s);
    hi[a] = std::min<std::int64_t>(n, hi[a] + s);
  }
  return {lo, hi};
}

std::vector<Cube> ancestors(const Cube& q, const Window& w) {
  if (!w.contains(q)) throw std::out_of_range("cube outside window");
  std::vector<Cube> out;
  Cube c = q;
  while (c.level < w.level_max()) {
    c = parent(c);
    out.push_back(c);
  }
  return out;
}

std::vector<Cube> cubes_containing(std::span<const double> x, const Window& w) {
  if (!w.contains(x)) throw std::out_of_range("point outside window");
  std::vector<Cube> out;
  for (int k = w.level_min(); k <= w.level_max(); ++k) {
    Cube q{k, Index(w.dim())};
    for (int a = 0; a < w.dim(); ++a)
      q.index[a] = static_cast<std::int64_t>(std::floor(std::ldexp(x[a], -k)));
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<std::pair<Cube, Cube>> nested_pairs(const Window& w) {
  std::vector<std::pair<Cube, Cube>> out;
  for (const Cube& q : w.all_cubes()) {
    out.emplace_back(q, q);
    for (Cube& anc : ancestors(q, w)) out.emplace_back(q, std::move(anc));
  }
  return out;
}

namespace {

template <class Combine>
CubeTable reduce_levels(const Window& w, std::span<const double> cells, Combine combine, double identity) {
  if (cells.size() != w.cell_count()) throw std::invalid_argument("cell data does not match window");
  const int n = w.dim();
  CubeTable table;
  table.emplace_back(cells.begin(), cells.end());
  for (int k = w.level_min(); k < w.level_max(); ++k) {
    const std::vector<double>& fine = table.back();
    const std::int64_t fine_count = w.cubes_per_axis(k);
    const std::int64_t coarse_count = fine_count / 2;
    std::vector<double> coarse(w.cube_count(k + 1), identity);
    Index c(n, 0);
    for (double value : fine) {
      std::size_t lin = 0;
      for (int a = 0; a < n; ++a) lin = lin * coarse_count + static_cast<std::size_t>(c[a] >> 1);
      coarse[lin] = combine(coarse[lin], value);
      for (int a = n - 1; a >= 0; --a) {
        if (++c[a] < fine_count) break;
        c[a] = 0;
      }
    }
    table.push_back(std::move(coarse));
  }
  return table;
}

}  // namespace

CubeTable cube_sums(const Window& w, std::span<const double> cells) {
  return reduce_levels(w, cells, [](double a, double b) { return a + b; }, 0.0);
}

CubeTable cube_maxima(const Window& w, std::span<const double> cells) {
  return reduce_levels(w, cells, [](double a, double b) { return std::max(a, b); }, -INFINITY);
}

ClippedSum dilate3_sum(const Window& w, const CubeTable& table, const Cube& q) {
  const Index c = w.local_coords(q);
  const int n = w.dim();
  const std::int64_t count = w.cubes_per_axis(q.level);
  const std::vector<double>& level = table[q.level - w.level_min()];
  ClippedSum out{0.0, 0.0};
  Index off(n, -1);
  while (true) {
    bool inside = true;
    std::size_t lin = 0;
    for (int a = 0; a < n && inside; ++a) {
      const std::int64_t x = c[a] + off[a];
      inside = x >= 0 && x < count;
      lin = lin * count + static_cast<std::size_t>(x);
    }
    if (inside) {
      out.sum += level[lin];
      out.volume += q.volume();
    }
    int a = n - 1;
    while (a >= 0 && ++off[a] == 2) {
      off[a] = -1;
      --a;
    }
    if (a < 0) break;
  }
  return out;
}

}  // namespace morrey
