#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace morrey {

using Index = std::vector<std::int64_t>;

/// Half-open dyadic cube 2^level * (index + [0,1)^n).
struct Cube {
  int level = 0;
  Index index;

  int dim() const { return static_cast<int>(index.size()); }
  double side() const;
  double volume() const;

  friend bool operator==(const Cube&, const Cube&) = default;
  friend bool operator<(const Cube& a, const Cube& b) {
    if (a.level != b.level) return a.level > b.level;
    return a.index < b.index;
  }
};

struct Box {
  std::vector<double> lower;
  std::vector<double> upper;

  int dim() const { return static_cast<int>(lower.size()); }
  double volume() const;
  bool empty() const;
  bool contains(std::span<const double> x) const;
};

Box box_of(const Cube& q);
std::vector<Cube> children(const Cube& q);
Cube parent(const Cube& q);
bool contains(const Cube& outer, const Cube& inner);
bool disjoint(const Cube& a, const Cube& b);
Box intersect(const Box& a, const Box& b);

// Concentric box with three times the side length.
Box dilate3(const Cube& q);

// A truncated dyadic grid: the top cubes (level_max) with index in
// origin_offset + [0, top_extent)^n, refined down to level_min cells.
class Window {
 public:
  // The 2^n top cubes surrounding the origin.
  Window(int dim, int level_min, int level_max);
  Window(int dim, int level_min, int level_max, Index origin_offset, int top_extent = 1);

  int dim() const { return dim_; }
  int level_min() const { return level_min_; }
  int level_max() const { return level_max_; }
  int level_count() const { return level_max_ - level_min_ + 1; }
  const Index& origin_offset() const { return origin_; }
  int top_extent() const { return top_extent_; }

  std::int64_t cells_per_axis() const { return cubes_per_axis(level_min_); }
  std::size_t cell_count() const { return cube_count(level_min_); }
  double cell_side() const;
  double cell_volume() const;
  Box box() const;

  bool contains(const Cube& q) const;
  bool contains(std::span<const double> x) const;

  std::int64_t cubes_per_axis(int level) const;
  std::size_t cube_count(int level) const;
  std::size_t cube_total() const;

  // Cubes of one level are numbered row-major (last axis fastest) by their
  // position relative to the window's lower corner.
  std::size_t local_linear(const Cube& q) const;
  Index local_coords(const Cube& q) const;
  Cube cube_at(int level, std::size_t linear) const;
  std::vector<Cube> cubes_at(int level) const;
  // Every cube, coarsest level first.
  std::vector<Cube> all_cubes() const;

  Index cell_coords(std::size_t cell) const;
  std::size_t cell_linear(std::span<const std::int64_t> coords) const;
  Cube cell_cube(std::size_t cell) const { return cube_at(level_min_, cell); }
  std::vector<double> cell_center(std::size_t cell) const;
  // Local cell coordinates [lo, hi) covered by a window cube.
  std::pair<Index, Index> cell_range(const Cube& q) const;
  std::vector<std::size_t> cells_of(const Cube& q) const;
  // Local cell coordinates of the window-clipped 3Q.
  std::pair<Index, Index> dilate3_cell_range(const Cube& q) const;

  friend bool operator==(const Window&, const Window&) = default;

 private:
  int dim_;
  int level_min_;
  int level_max_;
  Index origin_;
  int top_extent_;
};

// Strict ancestors of q inside w, finest first; empty at level_max.
std::vector<Cube> ancestors(const Cube& q, const Window& w);
// One cube per level, finest first.
std::vector<Cube> cubes_containing(std::span<const double> x, const Window& w);
// Every (Q, Q') with Q inside Q', including Q' = Q.
std::vector<std::pair<Cube, Cube>> nested_pairs(const Window& w);

// Per-level reductions of cell data over all window cubes.  Entry
// [level - level_min][local_linear] holds the value for that cube.
using CubeTable = std::vector<std::vector<double>>;
CubeTable cube_sums(const Window& w, std::span<const double> cells);
CubeTable cube_maxima(const Window& w, std::span<const double> cells);

// Sum of a cube table over the window-clipped 3Q (the same-level neighbours
// of q that lie in the window) and the clipped volume.
struct ClippedSum {
  double sum;
  double volume;
};
ClippedSum dilate3_sum(const Window& w, const CubeTable& table, const Cube& q);

// Visits every multi-index in the inclusive box [lo, hi], last axis fastest.
template <class Fn>
void for_each_index(const Index& lo, const Index& hi, Fn&& fn) {
  const std::size_t n = lo.size();
  for (std::size_t a = 0; a < n; ++a)
    if (lo[a] > hi[a]) return;
  Index c = lo;
  while (true) {
    fn(static_cast<const Index&>(c));
    std::size_t a = n;
    while (a > 0) {
      --a;
      if (++c[a] <= hi[a]) break;
      c[a] = lo[a];
      if (a == 0) return;
    }
    if (n == 0) return;
  }
}

}  // namespace morrey
