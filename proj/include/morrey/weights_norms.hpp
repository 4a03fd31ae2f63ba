#pragma once

#include <optional>
#include <string>
#include <vector>

#include "morrey/exponents.hpp"
#include "morrey/field.hpp"

namespace morrey {

// Variants of the multi-weight conditions.  All but C210/C211 are sups over
// nested pairs Q inside Q' of
//   (|Q|/|Q'|)^rho |Q'|^{1/r} V(Q) W_1(Q') W_2(Q')
//   C22  rho = (1-s)/(as), V = (fint v^{at/(1-t)})^{(1-t)/(at)}, sup v at t = 1,
//        W_i = (fint w_i^{-d_i})^{1/d_i} with d_i = (q_i/a)'
//   C23  as C22 with rho = (1-as)/(as)
//   C24  rho = 1/(as), V = (fint v^{at})^{1/(at)}, d_i = (q_i/a)'
//   C27  rho = 1/s, V = (fint v^t)^{1/t}, d_i = r_i (q_i/r_i)', sup w_i^{-1} if q_i = r_i
//   C29  as C27 with d_i = r_i (q_i/(a r_i))'
//   CBH  C29 without |Q'|^{1/r}
// C210 is the single-cube sup of
//   (fint u1^{s/q1} u2^{s/q2})^{1/s} prod (fint u_i^{-r_i/(q_i-r_i)})^{(q_i-r_i)/(r_i q_i)}
// with u_i = w_i, and C211 is C210 at r_i = q_i/q.
enum class WeightConditionKind { C22, C23, C24, C27, C29, C210, C211, CBH };

std::string to_string(WeightConditionKind k);
WeightConditionKind weight_kind_from_string(const std::string& s);
// Regime whose hypotheses the kind's exponents must satisfy.
Regime regime_of(WeightConditionKind k);

// max over window cubes of |Q|^{1/p} (|Q|^{-1} int_Q |f|^q w)^{1/q}.
double morrey_norm(const LatticeFunction& f, double p, double q, const std::optional<Weight>& w = std::nullopt);

// Per-cube |Q|^{1/p} (fint (|f| w1)^q1)^{1/q1} (fint (|g| w2)^q2)^{1/q2}.
CubeTable bilinear_morrey_table(const LatticeFunction& f, const LatticeFunction& g, const Weight& w1,
                                const Weight& w2, double p, double q1, double q2);
double rhs_bilinear_morrey(const LatticeFunction& f, const LatticeFunction& g, const Weight& w1, const Weight& w2,
                           double p, double q1, double q2);
// The same sup restricted to window cubes containing q0.
double rhs_bilinear_morrey_above(const LatticeFunction& f, const LatticeFunction& g, const Weight& w1,
                                 const Weight& w2, double p, double q1, double q2, const Cube& q0);

// sup over lambda > 0 of |Q0|^{1/s-1/t} lambda (v^t{x in Q0 : |F| > lambda})^{1/t}.
// The sup is approached as lambda rises to a cell value of |F|, so only
// those thresholds are scanned.
double weak_morrey_functional(const LatticeFunction& F, const Weight& v, double t, double s, const Cube& q0);

// Throws std::invalid_argument when the exponents violate the kind's
// regime, except for constraints named in allowed.
double two_weight_constant(WeightConditionKind kind, const Weight& v, const Weight& w1, const Weight& w2,
                           const ExponentSet& e, const std::vector<std::string>& allowed = {});

// Violations that two_weight_constant would reject.
std::vector<Violation> weight_kind_violations(WeightConditionKind kind, const ExponentSet& e);

// sup_Q (fint w)(fint w^{-1/(p-1)})^{p-1}.
double ap_constant(const Weight& w, double p);
// sup_Q (fint w^nu)^{1/nu} / fint w.
double rh_constant(const Weight& w, double nu);

struct Lemma39Report {
  double joint = 0.0;       // sup_Q (fint (w1 w2)^th)^{1/th} prod (fint w_i^{-q_i'})^{1/q_i'}
  double product_ap = 0.0;  // A_{1+th(2-1/q)} constant of (w1 w2)^th
  double first_ap = 0.0;    // A_{q1'(1/th+2-1/q)} constant of w1^{-q1'}
  double second_ap = 0.0;   // likewise for w2
};
Lemma39Report lemma39_check(const Weight& w1, const Weight& w2, double q1, double q2, double t_hat);

// (fint_Q w^e)^{1/e} for every window cube; e = +inf gives sup_Q w.
CubeTable weight_power_means(const Weight& w, double e);

}  // namespace morrey
