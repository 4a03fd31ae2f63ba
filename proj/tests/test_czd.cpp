#include <doctest.h>

#include <algorithm>
#include <json.hpp>
#include <random>

#include "morrey/czd.hpp"
#include "morrey/maximal.hpp"
#include "morrey/weights_norms.hpp"
#include "oracle.hpp"

using namespace morrey;

namespace {

// Uniform background with shared spikes of geometric heights.
std::pair<LatticeFunction, LatticeFunction> spiky(std::mt19937_64& rng, const Window& w, int spikes, double height) {
  auto f = oracle::random_values(rng, w.cell_count(), 0, 1);
  auto g = oracle::random_values(rng, w.cell_count(), 0, 1);
  std::uniform_int_distribution<std::size_t> pick(0, w.cell_count() - 1);
  for (int k = 0; k < spikes; ++k) {
    const std::size_t c = pick(rng);
    f[c] = g[c] = height * (k + 1);
  }
  return {LatticeFunction(w, f), LatticeFunction(w, g)};
}

}  // namespace

TEST_CASE("decompositions of spiky inputs satisfy every invariant") {
  std::mt19937_64 rng(41);
  int nontrivial = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const Window w = trial % 2 ? Window(1, -11, 0) : Window(2, -6, 0);
    auto [f, g] = spiky(rng, w, 6, w.dim() == 1 ? 1e3 : 1e5);
    const Cube q0 = w.cube_at(w.level_max(), trial % w.cube_count(w.level_max()));
    const Decomposition a = cz_decompose(f, g, q0, w.dim() == 1 ? 2.0 : 4.0, w.dim() == 1 ? 2.0 : 4.0);
    const Decomposition b = cz_decompose_alpha(f, g, q0, 2.0, 2.0, 0.05);
    for (const Decomposition* d : {&a, &b}) {
      const auto bad = check_decomposition(*d, f, g);
      for (const auto& m : bad) FAIL_CHECK(m);
      if (!d->levels.empty()) ++nontrivial;
      CHECK_FALSE(d->capped);
    }
  }
  CHECK(nontrivial > 10);
}

TEST_CASE("threshold factor and base value") {
  const Window w(1, -4, 0);
  const LatticeFunction one = LatticeFunction::constant(w, 1.0);
  const Decomposition d = cz_decompose(one, one, w.cube_at(0, 1), 2.0, 2.0);
  CHECK(d.factor == doctest::Approx(72.0));
  CHECK(d.gamma == doctest::Approx(1.0));
  CHECK(d.levels.empty());
  CHECK(d.e0.size() == 16);
  CHECK(check_decomposition(d, one, one).empty());
  const Decomposition z = cz_decompose(LatticeFunction::constant(w, 0.0), one, w.cube_at(0, 1), 2.0, 2.0);
  CHECK(z.gamma == 0.0);
  CHECK(z.e0.size() == 16);
}

TEST_CASE("a single tall spike produces a nested chain") {
  const Window w(1, -14, 0);
  std::vector<double> v(w.cell_count(), 1.0);
  const std::size_t c = w.cell_count() * 3 / 4 + 17;
  v[c] = 1e6;
  const LatticeFunction f(w, v);
  const Decomposition d = cz_decompose(f, f, w.cube_at(0, 1), 2.0, 2.0);
  REQUIRE(d.levels.size() >= 1);
  // Every level has a cube over the spike.
  for (const auto& level : d.levels)
    CHECK(std::any_of(level.begin(), level.end(), [&](const Cube& q) { return contains(q, w.cell_cube(c)); }));
  CHECK(check_decomposition(d, f, f).empty());
}

TEST_CASE("checker catches a corrupted decomposition") {
  std::mt19937_64 rng(42);
  const Window w(1, -11, 0);
  auto [f, g] = spiky(rng, w, 4, 1e3);
  Decomposition d = cz_decompose(f, g, w.cube_at(0, 1), 2.0, 2.0);
  d.e0.push_back(d.e0.front());
  bool partition = false;
  for (const auto& m : check_decomposition(d, f, g)) partition |= m.rfind("partition", 0) == 0;
  CHECK(partition);
  d = cz_decompose(f, g, w.cube_at(0, 1), 2.0, 2.0);
  d.gamma *= 10;
  CHECK_FALSE(check_decomposition(d, f, g).empty());
}

TEST_CASE("argument checks") {
  const Window w(1, -3, 0);
  const LatticeFunction one = LatticeFunction::constant(w, 1.0);
  CHECK_THROWS_AS(cz_decompose(one, one, w.cube_at(0, 0), 1.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(cz_decompose_alpha(one, one, w.cube_at(0, 0), 2.0, 3.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(cz_decompose_alpha(one, one, w.cube_at(0, 0), 2.0, 2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(cz_decompose(one, one, Cube{2, Index{0}}, 2.0, 2.0), std::out_of_range);
}

TEST_CASE("JSON layout") {
  std::mt19937_64 rng(43);
  const Window w(1, -11, 0);
  auto [f, g] = spiky(rng, w, 4, 1e3);
  const Decomposition d = cz_decompose(f, g, w.cube_at(0, 1), 2.0, 2.0);
  const auto j = nlohmann::json::parse(decomposition_json(d, w));
  CHECK(j["base"]["level"] == 0);
  CHECK(j["levels"].size() == d.levels.size());
  std::size_t cells = 0;
  for (const auto& e : j["e_cells"]) cells += e["cells"].size();
  CHECK(cells == w.cells_of(d.base).size());
  CHECK(j["e_cells"][0]["k"] == 0);
}

TEST_CASE("extremal pair realizes the lambda level on Q'") {
  const Window w(1, -6, 0);
  ExponentSet e;
  e.regime = Regime::T27;
  e.alpha = 0.25;
  e.q1 = e.q2 = 4;
  e.p = 2.5;
  e.r1 = e.r2 = 2;
  e = e.completed();
  const Weight w1 = Weight::power(-0.05, w), w2 = Weight::power(-0.05, w);
  const Cube qp = w.cube_at(-2, 5);
  const NecessityPair ext = necessity_pair(w1, w2, qp, e);
  const auto inside = w.cells_of(qp);
  for (std::size_t i = 0; i < w.cell_count(); ++i)
    if (std::find(inside.begin(), inside.end(), i) == inside.end()) CHECK(ext.f[i] == 0.0);
  // M_{alpha,R}(f,g) >= 2 lambda on Q' since Q' is one of the cubes.
  const LatticeFunction M = m_alpha_r(ext.f, ext.g, e.alpha, e.r1, e.r2);
  for (auto i : inside) CHECK(M[i] >= 2 * ext.lambda * (1 - 1e-12));
  e.r1 = 4;
  CHECK_THROWS_AS(necessity_pair(w1, w2, qp, e), std::invalid_argument);
}
