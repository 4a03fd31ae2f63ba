#include <doctest.h>

#include <random>

#include "morrey/dyadic.hpp"
#include "oracle.hpp"

using namespace morrey;

TEST_CASE("children and parent invert each other") {
  const Cube q{-2, Index{3, -5}};
  const auto kids = children(q);
  CHECK(kids.size() == 4);
  for (const Cube& c : kids) {
    CHECK(c.level == -3);
    CHECK(parent(c) == q);
    CHECK(contains(q, c));
    CHECK_FALSE(contains(c, q));
  }
  CHECK(disjoint(kids[0], kids[3]));
  CHECK(parent(Cube{0, Index{-1}}) == Cube{1, Index{-1}});
}

TEST_CASE("dyadic cubes are nested or disjoint") {
  const Window w(1, -4, 0);
  const auto all = w.all_cubes();
  for (const Cube& a : all)
    for (const Cube& b : all) {
      const bool nested = contains(a, b) || contains(b, a);
      CHECK(nested != disjoint(a, b));
    }
}

TEST_CASE("default window is the top cubes around the origin") {
  const Window w(2, -3, 0);
  const Box b = w.box();
  CHECK(b.lower == std::vector<double>{-1, -1});
  CHECK(b.upper == std::vector<double>{1, 1});
  CHECK(w.cells_per_axis() == 16);
  CHECK(w.cell_count() == 256);
  CHECK(w.cube_count(0) == 4);
  CHECK(w.cube_total() == 256 + 64 + 16 + 4);
  CHECK(w.all_cubes().size() == w.cube_total());
  CHECK(w.all_cubes().front().level == 0);
}

TEST_CASE("linear numbering is row-major with the last axis fastest") {
  const Window w(2, -1, 0);
  CHECK(w.cell_coords(0) == Index{0, 0});
  CHECK(w.cell_coords(1) == Index{0, 1});
  CHECK(w.cell_coords(4) == Index{1, 0});
  for (std::size_t i = 0; i < w.cell_count(); ++i) {
    CHECK(w.local_linear(w.cell_cube(i)) == i);
    CHECK(w.cell_linear(w.cell_coords(i)) == i);
  }
  const auto x = w.cell_center(0);
  CHECK(x == std::vector<double>{-0.75, -0.75});
}

TEST_CASE("cells_of and ancestors agree with point membership") {
  for (const Window& w : oracle::small_windows())
    for (const Cube& q : w.all_cubes()) {
      CHECK(w.cells_of(q) == oracle::cells(w, q));
      for (const Cube& a : ancestors(q, w)) CHECK(oracle::inside(q, a));
      CHECK(ancestors(q, w).size() == static_cast<std::size_t>(w.level_max() - q.level));
    }
}

TEST_CASE("cube_sums and cube_maxima match brute force") {
  std::mt19937_64 rng(3);
  for (const Window& w : oracle::small_windows()) {
    const auto v = oracle::random_values(rng, w.cell_count(), -1, 1);
    const CubeTable s = cube_sums(w, v), m = cube_maxima(w, v);
    for (const Cube& q : oracle::cubes(w)) {
      double sum = 0, mx = -INFINITY;
      for (auto c : oracle::cells(w, q)) {
        sum += v[c];
        mx = std::max(mx, v[c]);
      }
      CHECK(s[q.level - w.level_min()][w.local_linear(q)] == doctest::Approx(sum).epsilon(1e-13));
      CHECK(m[q.level - w.level_min()][w.local_linear(q)] == mx);
    }
  }
}

TEST_CASE("dilate3_sum clips to the window") {
  const Window w(1, -2, 0);  // cells of side 1/4 on [-1, 1)
  const std::vector<double> ones(w.cell_count(), 1.0);
  const CubeTable t = cube_sums(w, ones);
  // A corner cell sees itself and one neighbour.
  const ClippedSum corner = dilate3_sum(w, t, w.cell_cube(0));
  CHECK(corner.sum == 2.0);
  CHECK(corner.volume == doctest::Approx(0.5));
  const ClippedSum mid = dilate3_sum(w, t, w.cell_cube(3));
  CHECK(mid.sum == 3.0);
  CHECK(mid.volume == doctest::Approx(0.75));
  // A top cube: 3Q covers the whole window.
  const ClippedSum top = dilate3_sum(w, t, w.cube_at(0, 0));
  CHECK(top.sum == 8.0);
  CHECK(top.volume == doctest::Approx(2.0));
}

TEST_CASE("dilate3 is concentric with triple side") {
  const Box b = dilate3(Cube{-1, Index{1}});
  CHECK(b.lower[0] == 0.0);
  CHECK(b.upper[0] == 1.5);
}

TEST_CASE("nested_pairs counts every Q inside Q'") {
  const Window w(1, -2, 0);
  std::size_t expected = 0;
  for (const Cube& q : w.all_cubes()) expected += 1 + ancestors(q, w).size();
  CHECK(nested_pairs(w).size() == expected);
}

TEST_CASE("cubes_containing walks one cube per level") {
  const Window w(2, -3, 0);
  const std::vector<double> x{0.3, -0.6};
  const auto cs = cubes_containing(x, w);
  CHECK(cs.size() == 4);
  for (const Cube& c : cs) CHECK(box_of(c).contains(x));
}

TEST_CASE("for_each_index visits the inclusive box") {
  std::vector<Index> seen;
  for_each_index(Index{0, 1}, Index{1, 2}, [&](const Index& i) { seen.push_back(i); });
  CHECK(seen == std::vector<Index>{{0, 1}, {0, 2}, {1, 1}, {1, 2}});
  int count = 0;
  for_each_index(Index{1}, Index{0}, [&](const Index&) { ++count; });
  CHECK(count == 0);
}
