#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace morrey {

// Which family of hypotheses an exponent set is checked against.
//   T21     two-weight bound for B_alpha and commutators, t <= 1
//   T22     the same with t > 1 and a Hoelder pair (r1, r2)
//   T27     weak-type maximal characterization
//   T28     strong-type maximal bound with weights (v, w1, w2)
//   T29     strong-type maximal bound with weights (u1, u2)
//   BH      bilinear Hilbert maximal bound
//   SW      bilinear Stein-Weiss with power weights
//   Control maximal control of B_alpha in a weighted Morrey space
enum class Regime { T21, T22, T27, T28, T29, BH, SW, Control, None };

std::string to_string(Regime r);
Regime regime_from_string(const std::string& s);

struct ExponentSet {
  static constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

  int n = 1;
  double alpha = 0.0;
  double q1 = 2.0, q2 = 2.0;
  double p = 1.0;
  double r = std::numeric_limits<double>::infinity();
  double s = kUnset, t = kUnset;
  double a = kUnset;
  double r1 = kUnset, r2 = kUnset;
  Regime regime = Regime::None;
  // Restricts t to [1/2, 1] and asks s < r (commutator form of T21).
  bool commutator = false;
  // Stein-Weiss data; p is then derived from p1, p2.
  double p1 = kUnset, p2 = kUnset;
  double beta = 0.0, gamma1 = 0.0, gamma2 = 0.0;

  double q() const { return 1.0 / (1.0 / q1 + 1.0 / q2); }
  double inv_r() const { return std::isinf(r) ? 0.0 : 1.0 / r; }

  // Fills unset s, t (from the regime's defining identities) and r1, r2
  // (default Hoelder pair).  Throws when s would be undefined.
  ExponentSet completed() const;

  // Flat key/value form used by the experiment config files.
  std::map<std::string, std::string> to_keys() const;
  static ExponentSet from_keys(const std::map<std::string, std::string>& keys);
};

struct Violation {
  std::string constraint;
  std::string detail;
};

// s = (1/p + 1/r - alpha/n)^{-1}, t = s q / p.
std::pair<double, double> solve_st(int n, double alpha, double p, double q, double r);

std::vector<Violation> validate(const ExponentSet& e);
bool has_violation(const std::vector<Violation>& v, const std::string& constraint);

// (q1/q, q2/q).
std::pair<double, double> default_holder_pair(double q1, double q2);

// Auxiliary indices for the t <= 1 argument (theta_1..theta_5, a_*) or the
// t > 1 argument (vartheta_1..vartheta_5, a_*, L, e).
struct AuxiliaryIndices {
  Regime regime = Regime::T21;
  std::array<double, 5> theta{};
  double a_star = 0.0;
  double L = 0.0;
  double e = 0.0;
};

struct AuxiliarySearch {
  std::optional<AuxiliaryIndices> witness;
  std::string empty_interval;  // first empty interval when infeasible
};

AuxiliarySearch feasible_auxiliary_indices(const ExponentSet& e);
// Independent recheck of every inequality the witness must satisfy.
std::vector<Violation> check_auxiliary(const ExponentSet& e, const AuxiliaryIndices& w);

}  // namespace morrey
