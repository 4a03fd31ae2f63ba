#pragma once

// Seeded comparison of m_alpha_r, morrey_norm and two_weight_constant
// against the brute-force references on every small window.

#include <random>
#include <string>
#include <vector>

#include "morrey/maximal.hpp"
#include "morrey/weights_norms.hpp"
#include "oracle.hpp"

namespace oracle {

struct KindCase {
  morrey::WeightConditionKind kind;
  morrey::ExponentSet exponents;  // alpha given for n = 1, scaled by n
};

inline morrey::ExponentSet make_set(morrey::Regime regime, double alpha, double q1, double q2, double p, double a,
                                    double r1 = NAN, double r2 = NAN) {
  morrey::ExponentSet e;
  e.regime = regime;
  e.alpha = alpha;
  e.q1 = q1;
  e.q2 = q2;
  e.p = p;
  e.a = a;
  e.r1 = r1;
  e.r2 = r2;
  return e;
}

inline std::vector<KindCase> kind_cases() {
  using K = morrey::WeightConditionKind;
  using R = morrey::Regime;
  return {
      {K::C22, make_set(R::T21, 0.3, 1.5, 1.5, 0.76, 1.2)},
      {K::C23, make_set(R::T21, 0.1, 1.5, 1.5, 2.0, 1.2)},
      {K::C24, make_set(R::T22, 0.5, 3, 3, 1.5, 2.75, 2, 2)},
      {K::C27, make_set(R::T27, 0.25, 4, 4, 2.5, 1.2, 2, 2)},
      {K::C29, make_set(R::T28, 0.25, 4, 4, 2.5, 1.5, 2, 2)},
      {K::CBH, make_set(R::BH, 0.0, 4, 4, 3, 1.5, 2, 2)},
      {K::C210, make_set(R::T29, 0.25, 4, 4, 2.5, 1.5, 2, 2)},
      {K::C211, make_set(R::T29, 0.25, 4, 4, 2.5, 1.5, 2, 2)},
  };
}

inline morrey::ExponentSet for_dim(morrey::ExponentSet e, int n) {
  e.n = n;
  e.alpha *= n;
  return e.completed();
}

// The condition straight from its definition.
inline double two_weight(morrey::WeightConditionKind kind, const Window& w, const std::vector<double>& v,
                         const std::vector<double>& w1, const std::vector<double>& w2, const morrey::ExponentSet& e) {
  using K = morrey::WeightConditionKind;
  const double s = e.s, t = e.t, a = e.a, inv_r = std::isinf(e.r) ? 0.0 : 1.0 / e.r;
  if (kind == K::C210 || kind == K::C211) {
    double r1 = e.r1, r2 = e.r2;
    if (kind == K::C211) {
      const double q = 1 / (1 / e.q1 + 1 / e.q2);
      r1 = e.q1 / q;
      r2 = e.q2 / q;
    }
    std::vector<double> joint(v.size()), d1(v.size()), d2(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      joint[i] = std::pow(w1[i], s / e.q1) * std::pow(w2[i], s / e.q2);
      d1[i] = std::pow(w1[i], -r1 / (e.q1 - r1));
      d2[i] = std::pow(w2[i], -r2 / (e.q2 - r2));
    }
    double best = 0;
    for (const Cube& q : cubes(w))
      best = std::max(best, std::pow(mean_pow(w, joint, q, 1.0), 1 / s) *
                                std::pow(mean_pow(w, d1, q, 1.0), (e.q1 - r1) / (r1 * e.q1)) *
                                std::pow(mean_pow(w, d2, q, 1.0), (e.q2 - r2) / (r2 * e.q2)));
    return best;
  }
  double rho = 0, ve = 0, d1 = 0, d2 = 0, ir = inv_r;
  switch (kind) {
    case K::C22:
    case K::C23:
      rho = kind == K::C22 ? (1 - s) / (a * s) : (1 - a * s) / (a * s);
      ve = t == 1.0 ? INFINITY : a * t / (1 - t);
      d1 = conj(e.q1 / a);
      d2 = conj(e.q2 / a);
      break;
    case K::C24:
      rho = 1 / (a * s);
      ve = a * t;
      d1 = conj(e.q1 / a);
      d2 = conj(e.q2 / a);
      break;
    case K::C27:
      rho = 1 / s;
      ve = t;
      d1 = e.r1 * conj(e.q1 / e.r1);
      d2 = e.r2 * conj(e.q2 / e.r2);
      break;
    default:  // C29, CBH
      rho = 1 / s;
      ve = t;
      d1 = e.r1 * conj(e.q1 / (a * e.r1));
      d2 = e.r2 * conj(e.q2 / (a * e.r2));
      if (kind == K::CBH) ir = 0;
      break;
  }
  return nested_sup(w, v, w1, w2, rho, ir, ve, d1, d2);
}

struct EquivalenceResult {
  int comparisons = 0;
  std::vector<std::string> failures;
};

inline EquivalenceResult run_equivalence(int seeds) {
  using namespace morrey;
  EquivalenceResult out;
  const auto windows = small_windows();
  const auto cases = kind_cases();
  auto fail = [&](const std::string& what, int seed, double got, double want) {
    out.failures.push_back(what + " seed " + std::to_string(seed) + ": got " + std::to_string(got) + " want " +
                           std::to_string(want));
  };
  for (int seed = 0; seed < seeds; ++seed) {
    std::mt19937_64 rng(1000 + seed);
    const Window& w = windows[seed % windows.size()];
    const LatticeFunction f(w, random_values(rng, w.cell_count(), -1, 1));
    const LatticeFunction g(w, random_values(rng, w.cell_count(), -1, 1));
    const auto vv = random_values(rng, w.cell_count(), 0.25, 4);
    const auto w1v = random_values(rng, w.cell_count(), 0.25, 4);
    const auto w2v = random_values(rng, w.cell_count(), 0.25, 4);
    const Weight v = Weight::from_values(LatticeFunction(w, vv));
    const Weight w1 = Weight::from_values(LatticeFunction(w, w1v));
    const Weight w2 = Weight::from_values(LatticeFunction(w, w2v));

    const double alpha = 0.5 * w.dim() * (seed % 3) / 2.0;
    const double r1 = 1.0 + (seed % 5) * 0.5, r2 = seed % 2 ? INFINITY : 1.5;
    const auto want_m = dyadic_maximal(f, g, alpha, r1, r2);
    const LatticeFunction got_m = m_alpha_r(f, g, alpha, r1, r2);
    for (std::size_t i = 0; i < want_m.size(); ++i) {
      ++out.comparisons;
      if (!close(got_m[i], want_m[i])) fail("m_alpha_r", seed, got_m[i], want_m[i]);
    }

    const double q = 1.0 + (seed % 4) * 0.5, p = q + (seed % 3);
    const double nm = morrey_norm(f, p, q), want_nm = morrey(f, p, q);
    const double wm = morrey_norm(f, p, q, w1), want_wm = morrey(f, p, q, w1v);
    out.comparisons += 2;
    if (!close(nm, want_nm)) fail("morrey_norm", seed, nm, want_nm);
    if (!close(wm, want_wm)) fail("weighted morrey_norm", seed, wm, want_wm);

    const KindCase& kc = cases[seed % cases.size()];
    const ExponentSet e = for_dim(kc.exponents, w.dim());
    const double k = two_weight_constant(kc.kind, v, w1, w2, e);
    const double want_k = two_weight(kc.kind, w, vv, w1v, w2v, e);
    ++out.comparisons;
    if (!close(k, want_k)) fail("two_weight_constant " + to_string(kc.kind), seed, k, want_k);
  }
  return out;
}

}  // namespace oracle
