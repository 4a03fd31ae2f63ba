#include <doctest.h>

#include <random>

#include "equivalence.hpp"
#include "morrey/weights_norms.hpp"

using namespace morrey;

TEST_CASE("maximal function, Morrey norms and weight constants match brute force") {
  const auto r = oracle::run_equivalence(48);
  CHECK(r.comparisons > 0);
  for (const auto& f : r.failures) FAIL_CHECK(f);
}

TEST_CASE("every weight condition kind matches its definition with power weights") {
  const Window w(1, -3, 0);
  for (const auto& kc : oracle::kind_cases()) {
    const ExponentSet e = oracle::for_dim(kc.exponents, 1);
    // Scale-invariant exponents away from the integrability edges.
    const Weight v = Weight::sampled_power(-0.1, w), w1 = Weight::sampled_power(-0.05, w),
                 w2 = Weight::sampled_power(-0.05, w);
    CAPTURE(to_string(kc.kind));
    CHECK(oracle::close(two_weight_constant(kc.kind, v, w1, w2, e),
                        oracle::two_weight(kc.kind, w, v.values(), w1.values(), w2.values(), e)));
  }
}

TEST_CASE("unit weights give the pure scaling factor") {
  const Window w(1, -4, 0);
  const Weight one = Weight::unit(w);
  const ExponentSet e = oracle::for_dim(oracle::kind_cases()[3].exponents, 1);  // C27
  // (|Q|/|Q'|)^{1/s} with Q = Q' maximizes at 1 when r = inf.
  CHECK(two_weight_constant(WeightConditionKind::C27, one, one, one, e) == doctest::Approx(1.0));
}

TEST_CASE("violated regimes are rejected unless allowed") {
  const Window w(1, -3, 0);
  const Weight one = Weight::unit(w);
  ExponentSet e = oracle::for_dim(oracle::kind_cases()[0].exponents, 1);  // T21 set, s < 1
  CHECK_THROWS_AS(two_weight_constant(WeightConditionKind::C23, one, one, one, e), std::invalid_argument);
  CHECK_NOTHROW(two_weight_constant(WeightConditionKind::C23, one, one, one, e, {"s>=1"}));
  e.a = 3.0;
  CHECK_THROWS_AS(two_weight_constant(WeightConditionKind::C22, one, one, one, e), std::invalid_argument);
  CHECK(weight_kind_from_string("CBH") == WeightConditionKind::CBH);
  CHECK(regime_of(WeightConditionKind::C24) == Regime::T22);
}

TEST_CASE("morrey norm basics") {
  const Window w(1, -3, 0);
  const LatticeFunction one = LatticeFunction::constant(w, 1.0);
  // |Q|^{1/p} is largest on a top cube of side 1.
  CHECK(morrey_norm(one, 2.0, 1.0) == doctest::Approx(1.0));
  CHECK(morrey_norm(one, 2.0, 2.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(morrey_norm(one, 1.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(morrey_norm(one, INFINITY, 2.0), std::invalid_argument);
  // A spike on one cell of side 1/8: sup over the cubes containing it.
  std::vector<double> v(16, 0.0);
  v[0] = 8.0;
  const LatticeFunction s(w, v);
  CHECK(morrey_norm(s, 2.0, 1.0) == doctest::Approx(std::sqrt(0.125) * 8));
}

TEST_CASE("weighted norm with a power weight uses exact weight averages") {
  const Window w(1, -2, 0);
  const LatticeFunction one = LatticeFunction::constant(w, 1.0);
  const Weight wt = Weight::power(0.5, w);
  // Top cube [0,1): |Q|^{1/2} (int_0^1 x^{1/2})^{1/1} = 2/3.
  CHECK(morrey_norm(one, 2.0, 1.0, wt) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("bilinear Morrey table and the sup above a cube") {
  std::mt19937_64 rng(31);
  const Window w(1, -3, 0);
  const LatticeFunction f(w, oracle::random_values(rng, w.cell_count(), 0, 1));
  const LatticeFunction g(w, oracle::random_values(rng, w.cell_count(), 0, 1));
  const Weight w1 = Weight::from_values(LatticeFunction(w, oracle::random_values(rng, w.cell_count(), 0.5, 2)));
  const Weight w2 = Weight::unit(w);
  double best = 0;
  std::vector<double> fw(f.size()), gw(g.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    fw[i] = f[i] * w1.values()[i];
    gw[i] = g[i];
  }
  const Cube q0 = w.cell_cube(5);
  double above = 0;
  for (const Cube& q : oracle::cubes(w)) {
    const double val = std::pow(oracle::volume(q), 1 / 2.5) * oracle::mean_pow(w, fw, q, 3) * oracle::mean_pow(w, gw, q, 2);
    best = std::max(best, val);
    if (oracle::inside(q0, q)) above = std::max(above, val);
  }
  CHECK(rhs_bilinear_morrey(f, g, w1, w2, 2.5, 3, 2) == doctest::Approx(best).epsilon(1e-12));
  CHECK(rhs_bilinear_morrey_above(f, g, w1, w2, 2.5, 3, 2, q0) == doctest::Approx(above).epsilon(1e-12));
}

TEST_CASE("weak Morrey functional matches a scan over thresholds") {
  std::mt19937_64 rng(32);
  const Window w(1, -4, 0);
  LatticeFunction F(w, oracle::random_values(rng, w.cell_count(), 0, 3));
  // Ties must be counted together.
  std::vector<double> vals = F.values();
  vals[1] = vals[2] = vals[3];
  F = LatticeFunction(w, vals);
  const Weight v = Weight::from_values(LatticeFunction(w, oracle::random_values(rng, w.cell_count(), 0.5, 2)));
  const double t = 1.5, s = 3.0;
  for (const Cube& q0 : {w.cube_at(0, 0), w.cube_at(-2, 1), w.cell_cube(3)}) {
    const auto cs = oracle::cells(w, q0);
    double best = 0;
    for (auto c : cs) {
      const double lambda = F[c];
      double m = 0;
      for (auto d : cs)
        if (F[d] >= lambda) m += std::pow(v.values()[d], t) * w.cell_volume();
      best = std::max(best, lambda * std::pow(m, 1 / t));
    }
    best *= std::pow(oracle::volume(q0), 1 / s - 1 / t);
    CHECK(weak_morrey_functional(F, v, t, s, q0) == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("A_p constants") {
  const Window w(1, -6, 0);
  CHECK(ap_constant(Weight::unit(w), 2.0) == doctest::Approx(1.0));
  // |x|^{1/2} is in A_2 with constant (int_0^1 x^{1/2})(int_0^1 x^{-1/2}) = 4/3.
  CHECK(ap_constant(Weight::power(0.5, w), 2.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  // |x|^{-2} in the plane is not locally integrable.  The cell sum over a
  // cube at the origin grows like log(1/h), so every two levels of
  // refinement add the same amount to the sampled constant.
  std::vector<double> c;
  for (int level : {-3, -5, -7, -9})
    c.push_back(ap_constant(Weight::sampled_power(-2.0, Window(2, level, 0)), 2.0));
  for (std::size_t i = 1; i + 1 < c.size(); ++i) {
    CHECK(c[i] - c[i - 1] > 1.0);
    CHECK(c[i + 1] - c[i] == doctest::Approx(c[i] - c[i - 1]).epsilon(0.05));
  }
  CHECK(rh_constant(Weight::unit(w), 2.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(ap_constant(Weight::unit(w), 1.0), std::invalid_argument);
}

TEST_CASE("joint condition for power weights") {
  const Window w(1, -6, 0);
  const Lemma39Report r = lemma39_check(Weight::power(0.3, w), Weight::power(-0.3, w), 2.0, 2.0, 1.0);
  CHECK(std::isfinite(r.joint));
  CHECK(r.product_ap == doctest::Approx(1.0));  // w1 w2 = 1
  CHECK(r.first_ap > 1.0);
  CHECK(std::isfinite(r.second_ap));
  CHECK_THROWS_AS(lemma39_check(Weight::unit(w), Weight::unit(w), 2.0, 2.0, 0.5), std::invalid_argument);
}
