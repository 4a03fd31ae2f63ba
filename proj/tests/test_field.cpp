#include <doctest.h>

#include <random>
#include <sstream>

#include "morrey/field.hpp"
#include "oracle.hpp"

using namespace morrey;

TEST_CASE("LatticeFunction rejects bad sizes and non-finite values") {
  const Window w(1, -2, 0);
  CHECK_THROWS_AS(LatticeFunction(w, std::vector<double>(3, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(LatticeFunction(w, std::vector<double>(8, NAN)), std::invalid_argument);
}

TEST_CASE("at() looks up the containing cell and is zero outside") {
  const Window w(1, -2, 0);
  std::vector<double> v(8);
  for (int i = 0; i < 8; ++i) v[i] = i;
  const LatticeFunction f(w, v);
  CHECK(f.at(std::vector<double>{-1.0}) == 0.0);
  CHECK(f.at(std::vector<double>{-0.8}) == 0.0);
  CHECK(f.at(std::vector<double>{0.0}) == 4.0);
  CHECK(f.at(std::vector<double>{0.99}) == 7.0);
  CHECK(f.at(std::vector<double>{1.0}) == 0.0);
  CHECK(f.at(std::vector<double>{-1.5}) == 0.0);
}

TEST_CASE("indicator takes exact overlap fractions") {
  const Window w(1, -2, 0);
  const LatticeFunction f = LatticeFunction::indicator(w, Box{{-0.125}, {0.5}});
  CHECK(f[3] == doctest::Approx(0.5));
  CHECK(f[4] == 1.0);
  CHECK(f[5] == 1.0);
  CHECK(f[6] == 0.0);
}

TEST_CASE("power weight averages are exact cell integrals") {
  const Window w(1, -3, 0);
  const Weight wt = Weight::power(-0.5, w);
  const auto& a = *wt.averages(1.0);
  for (std::size_t i = 0; i < w.cell_count(); ++i) {
    const Box b = box_of(w.cell_cube(i));
    CHECK(a[i] == doctest::Approx(oracle::power_integral_1d(-0.5, b.lower[0], b.upper[0]) / w.cell_volume())
                      .epsilon(1e-13));
  }
  // Powers of a power weight are again exact: |x|^{-0.5 * 1.5}.
  const auto& b = *wt.averages(1.5);
  // Cell 8 is [0, 1/8).
  CHECK(b[8] == doctest::Approx(oracle::power_integral_1d(-0.75, 0.0, 0.125) / 0.125).epsilon(1e-13));
  // gamma e <= -n on a cell touching the origin is infinite.
  CHECK(std::isinf((*wt.averages(2.0))[8]));
  CHECK(std::isinf((*wt.averages(2.0))[7]));
  CHECK(std::isfinite((*wt.averages(2.0))[0]));
  CHECK_THROWS_AS(Weight::power(-1.0, w), std::invalid_argument);
}

TEST_CASE("sampled power weights use cell centers") {
  const Window w(2, -2, 0);
  const Weight wt = Weight::sampled_power(-2.0, w);
  const auto x = w.cell_center(0);
  CHECK(wt.values()[0] == doctest::Approx(1.0 / (x[0] * x[0] + x[1] * x[1])));
}

TEST_CASE("pow and product stay symbolic for power weights") {
  const Window w(1, -3, 0);
  const Weight a = Weight::power(0.4, w), b = Weight::power(-0.2, w);
  const Weight p = Weight::product(a, 0.5, b, 2.0);
  REQUIRE(p.is_power());
  CHECK(*p.power_exponent() == doctest::Approx(0.2 - 0.4));
  CHECK(*a.pow(3.0).power_exponent() == doctest::Approx(1.2));
  // Lattice weights multiply cellwise.
  const Weight l = Weight::from_values(LatticeFunction::constant(w, 4.0));
  const Weight q = Weight::product(l, 0.5, l, 1.0);
  CHECK(q.values()[2] == doctest::Approx(8.0));
  CHECK_THROWS_AS(Weight::from_values(LatticeFunction::constant(w, 0.0)), std::invalid_argument);
}

TEST_CASE("cell_sup bounds the power weight on each cell") {
  const Window w(1, -2, 0);
  const Weight wt = Weight::power(0.5, w);
  const auto s = wt.cell_sup(1.0);
  CHECK(s[7] == doctest::Approx(1.0));
  CHECK(s[4] == doctest::Approx(0.5));
  const auto inv = wt.cell_sup(-1.0);
  CHECK(std::isinf(inv[4]));
  CHECK(inv[7] == doctest::Approx(1.0 / std::sqrt(0.75)));
}

TEST_CASE("power_avg and cell_average over partial boxes") {
  const Window w(1, -2, 0);
  std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8};
  const LatticeFunction f(w, v);
  CHECK(cell_average(f, Box{{-1.0}, {-0.5}}) == doctest::Approx(1.5));
  CHECK(cell_average(f, Box{{-1.125}, {-0.875}}) == doctest::Approx(1.0));  // clipped
  CHECK(power_avg(f, Box{{0.0}, {0.5}}, 2.0) == doctest::Approx(std::sqrt((25 + 36) / 2.0)));
  CHECK(power_avg(f, Box{{0.1}, {0.6}}, INFINITY) == 7.0);
}

TEST_CASE("BMO and oscillation norms match brute force") {
  std::mt19937_64 rng(11);
  for (const Window& w : oracle::small_windows()) {
    const LatticeFunction b(w, oracle::random_values(rng, w.cell_count(), -3, 3));
    for (double e : {1.0, 2.0, 4.0}) {
      double best = 0;
      for (const Cube& q : oracle::cubes(w)) {
        const auto cs = oracle::cells(w, q);
        double m = 0;
        for (auto c : cs) m += b[c];
        m /= cs.size();
        double s = 0;
        for (auto c : cs) s += std::pow(std::abs(b[c] - m), e);
        best = std::max(best, std::pow(s / cs.size(), 1 / e));
      }
      CHECK(oscillation_norm(b, e) == doctest::Approx(best).epsilon(1e-12));
    }
    CHECK(bmo_norm(b) == oscillation_norm(b, 1.0));
  }
}

TEST_CASE("BMO norm of log|x| stabilizes under refinement") {
  auto logabs = [](std::span<const double> x) { return std::log(std::abs(x[0])); };
  const double a = bmo_norm(LatticeFunction::sample(Window(1, -8, 0), logabs));
  const double b = bmo_norm(LatticeFunction::sample(Window(1, -10, 0), logabs));
  CHECK(std::abs(a - b) < 0.01);
  CHECK(a < 1.0);
}

TEST_CASE("cube_mean and lambda_avg") {
  const Window w(1, -2, 0);
  const LatticeFunction f(w, {1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(cube_mean(f, Cube{-1, Index{0}}) == doctest::Approx(5.5));
  // 3Q of the cell [0, 1/4) is [-1/4, 1/2).
  CHECK(lambda_avg(f, w.cell_cube(4)) == doctest::Approx(5.0));
}

TEST_CASE("CSV round trip") {
  const Window w(2, -2, -1, Index{0, -1}, 2);
  std::mt19937_64 rng(1);
  const LatticeFunction f(w, oracle::random_values(rng, w.cell_count(), -1, 1));
  std::stringstream s;
  write_csv(f, s);
  const LatticeFunction g = read_csv(s);
  CHECK(g.window() == w);
  CHECK(g.values() == f.values());
}
