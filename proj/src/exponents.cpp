#include "morrey/exponents.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "morrey/quadrature.hpp"
#include "morrey/text.hpp"

namespace morrey {

namespace {

bool close(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

// a <= b up to rounding in the derived exponents.
bool le(double a, double b) { return a <= b || close(a, b); }

bool unset(double x) { return std::isnan(x); }

struct Checker {
  std::vector<Violation> out;

  void require(bool ok, const std::string& name, std::initializer_list<std::pair<const char*, double>> values) {
    if (ok) return;
    std::ostringstream d;
    bool first = true;
    for (const auto& [k, v] : values) {
      d << (first ? "" : ", ") << k << '=' << format_number(v);
      first = false;
    }
    out.push_back({name, d.str()});
  }
};

}  // namespace

std::string to_string(Regime r) {
  switch (r) {
    case Regime::T21: return "T21";
    case Regime::T22: return "T22";
    case Regime::T27: return "T27";
    case Regime::T28: return "T28";
    case Regime::T29: return "T29";
    case Regime::BH: return "BH";
    case Regime::SW: return "SW";
    case Regime::Control: return "Control";
    case Regime::None: return "None";
  }
  return "None";
}

Regime regime_from_string(const std::string& s) {
  for (Regime r : {Regime::T21, Regime::T22, Regime::T27, Regime::T28, Regime::T29, Regime::BH, Regime::SW,
                   Regime::Control, Regime::None})
    if (to_string(r) == s) return r;
  throw std::invalid_argument("unknown regime '" + s + "'");
}

std::pair<double, double> solve_st(int n, double alpha, double p, double q, double r) {
  if (!(p > 0.0) || !(q > 0.0)) throw std::invalid_argument("solve_st needs p, q > 0");
  if (!(r > 0.0)) throw std::invalid_argument("solve_st needs r > 0");
  const double inv_s = 1.0 / p + (std::isinf(r) ? 0.0 : 1.0 / r) - alpha / n;
  if (!(inv_s > 0.0)) throw std::domain_error("s undefined or infinite: 1/s = " + format_number(inv_s));
  const double s = 1.0 / inv_s;
  return {s, s * q / p};
}

std::pair<double, double> default_holder_pair(double q1, double q2) {
  const double q = 1.0 / (1.0 / q1 + 1.0 / q2);
  return {q1 / q, q2 / q};
}

ExponentSet ExponentSet::completed() const {
  ExponentSet e = *this;
  if (unset(e.r1) || unset(e.r2)) std::tie(e.r1, e.r2) = default_holder_pair(e.q1, e.q2);
  if (e.regime == Regime::SW && !unset(e.p1) && !unset(e.p2)) e.p = 1.0 / (1.0 / e.p1 + 1.0 / e.p2);
  if (!unset(e.s) && !unset(e.t)) return e;

  double inv_s = 0.0, inv_t = 0.0;
  switch (e.regime) {
    case Regime::SW:
      inv_s = 1.0 / e.p + e.inv_r() - (e.n - e.alpha) / e.n;
      inv_t = 1.0 / e.q() + e.inv_r() - (e.n - e.alpha) / e.n;
      break;
    case Regime::T27:
      inv_s = 1.0 / e.p + e.inv_r() - e.alpha / e.n;
      inv_t = 1.0 / e.q() + e.inv_r() - e.alpha / e.n;
      break;
    case Regime::BH:
      inv_s = 1.0 / e.p - e.alpha / e.n;
      inv_t = inv_s * e.p / e.q();
      break;
    default: {
      auto [s, t] = solve_st(e.n, e.alpha, e.p, e.q(), e.r);
      inv_s = 1.0 / s;
      inv_t = 1.0 / t;
    }
  }
  if (!(inv_s > 0.0)) throw std::domain_error("s undefined or infinite: 1/s = " + format_number(inv_s));
  if (!(inv_t > 0.0)) throw std::domain_error("t undefined or infinite: 1/t = " + format_number(inv_t));
  if (unset(e.s)) e.s = 1.0 / inv_s;
  if (unset(e.t)) e.t = 1.0 / inv_t;
  // q = p makes t = s in exact arithmetic; keep it so downstream q <= p checks hold.
  if (close(e.s, e.t)) e.t = e.s;
  return e;
}

std::map<std::string, std::string> ExponentSet::to_keys() const {
  std::map<std::string, std::string> k;
  auto put = [&](const char* key, double v) {
    if (!unset(v)) k[key] = format_number(v);
  };
  k["n"] = std::to_string(n);
  put("alpha", alpha);
  put("q1", q1);
  put("q2", q2);
  put("p", p);
  put("r", r);
  put("s", s);
  put("t", t);
  put("a", a);
  put("r1", r1);
  put("r2", r2);
  k["regime"] = to_string(regime);
  if (commutator) k["commutator"] = "true";
  if (regime == Regime::SW) {
    put("p1", p1);
    put("p2", p2);
    put("beta", beta);
    put("gamma1", gamma1);
    put("gamma2", gamma2);
  }
  return k;
}

ExponentSet ExponentSet::from_keys(const std::map<std::string, std::string>& keys) {
  ExponentSet e;
  auto num = [&](const char* key, double& slot) {
    auto it = keys.find(key);
    if (it != keys.end()) slot = parse_number(it->second);
  };
  if (auto it = keys.find("n"); it != keys.end()) e.n = static_cast<int>(parse_number(it->second));
  num("alpha", e.alpha);
  num("q1", e.q1);
  num("q2", e.q2);
  num("p", e.p);
  num("r", e.r);
  num("s", e.s);
  num("t", e.t);
  num("a", e.a);
  num("r1", e.r1);
  num("r2", e.r2);
  num("p1", e.p1);
  num("p2", e.p2);
  num("beta", e.beta);
  num("gamma1", e.gamma1);
  num("gamma2", e.gamma2);
  if (auto it = keys.find("regime"); it != keys.end()) e.regime = regime_from_string(trim(it->second));
  if (auto it = keys.find("commutator"); it != keys.end()) e.commutator = trim(it->second) == "true";
  return e;
}

bool has_violation(const std::vector<Violation>& v, const std::string& constraint) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.constraint == constraint; });
}

std::vector<Violation> validate(const ExponentSet& e) {
  Checker c;
  const double n = e.n;
  const double q = e.q();
  const double inv_r = e.inv_r();
  const double s = e.s, t = e.t;

  c.require(e.n >= 1, "n>=1", {{"n", n}});
  c.require(e.q1 > 0 && e.q2 > 0, "q1,q2>0", {{"q1", e.q1}, {"q2", e.q2}});
  c.require(e.r > 0, "r>0", {{"r", e.r}});
  if (e.regime == Regime::None) return c.out;

  const bool needs_st = e.regime != Regime::Control;
  if (needs_st) {
    c.require(!unset(s) && !unset(t), "s,t defined", {{"s", s}, {"t", t}});
    if (unset(s) || unset(t)) return c.out;
  }
  const bool needs_pair = e.regime != Regime::T21;
  if (needs_pair) {
    c.require(!unset(e.r1) && !unset(e.r2), "r1,r2 defined", {{"r1", e.r1}, {"r2", e.r2}});
    if (unset(e.r1) || unset(e.r2)) return c.out;
  }
  auto a_range = [&](double hi, const char* name) {
    c.require(!unset(e.a) && e.a > 1.0 && e.a < hi, name, {{"a", e.a}, {"bound", hi}});
  };
  auto st_identity = [&] {
    c.require(close(1.0 / s, 1.0 / e.p + inv_r - e.alpha / n), "1/s=1/p+1/r-alpha/n",
              {{"s", s}, {"p", e.p}, {"r", e.r}, {"alpha", e.alpha}});
    c.require(close(t / s, q / e.p), "t/s=q/p", {{"t", t}, {"s", s}, {"q", q}, {"p", e.p}});
  };
  auto morrey_range = [&] { c.require(q > 0 && q <= e.p && std::isfinite(e.p), "0<q<=p<inf", {{"q", q}, {"p", e.p}}); };
  auto holder = [&] {
    c.require(close(1.0 / e.r1 + 1.0 / e.r2, 1.0), "1/r1+1/r2=1", {{"r1", e.r1}, {"r2", e.r2}});
  };

  switch (e.regime) {
    case Regime::T21:
      c.require(e.alpha > 0 && e.alpha < n, "0<alpha<n", {{"alpha", e.alpha}});
      c.require(e.q1 > 1 && e.q2 > 1, "1<q1,q2", {{"q1", e.q1}, {"q2", e.q2}});
      morrey_range();
      c.require(t > 0 && le(t, s) && std::isfinite(s), "0<t<=s<inf", {{"t", t}, {"s", s}});
      a_range(std::min(e.q1, e.q2), "1<a<min(q1,q2)");
      c.require(e.alpha / n > inv_r, "alpha/n>1/r", {{"alpha", e.alpha}, {"r", e.r}});
      st_identity();
      if (e.commutator) {
        c.require(t >= 0.5 && t <= 1.0, "1/2<=t<=1", {{"t", t}});
        c.require(s < e.r, "s<r", {{"s", s}, {"r", e.r}});
      } else {
        c.require(t > 0 && t <= 1.0, "0<t<=1", {{"t", t}});
      }
      break;
    case Regime::T22:
      c.require(e.alpha > 0 && e.alpha < n, "0<alpha<n", {{"alpha", e.alpha}});
      morrey_range();
      c.require(t > 1 && le(t, s), "1<t<=s", {{"t", t}, {"s", s}});
      c.require(s < e.r, "s<r", {{"s", s}, {"r", e.r}});
      c.require(e.r1 > 1 && e.r1 < e.q1, "1<r1<q1", {{"r1", e.r1}, {"q1", e.q1}});
      c.require(e.r2 > 1 && e.r2 < e.q2, "1<r2<q2", {{"r2", e.r2}, {"q2", e.q2}});
      holder();
      a_range(std::min(e.q1, e.q2), "1<a<min(q1,q2)");
      c.require(e.alpha / n > inv_r, "alpha/n>1/r", {{"alpha", e.alpha}, {"r", e.r}});
      st_identity();
      break;
    case Regime::T27:
      c.require(e.alpha >= 0 && e.alpha < n, "0<=alpha<n", {{"alpha", e.alpha}});
      morrey_range();
      c.require(t > 0 && le(t, s), "0<t<=s", {{"t", t}, {"s", s}});
      c.require(s < e.r, "s<r", {{"s", s}, {"r", e.r}});
      c.require(e.r1 > 0 && e.r1 <= e.q1, "0<r1<=q1", {{"r1", e.r1}, {"q1", e.q1}});
      c.require(e.r2 > 0 && e.r2 <= e.q2, "0<r2<=q2", {{"r2", e.r2}, {"q2", e.q2}});
      c.require(e.alpha / n >= inv_r, "alpha/n>=1/r", {{"alpha", e.alpha}, {"r", e.r}});
      c.require(close(1.0 / s, 1.0 / e.p + inv_r - e.alpha / n), "1/s=1/p+1/r-alpha/n",
                {{"s", s}, {"p", e.p}, {"r", e.r}, {"alpha", e.alpha}});
      c.require(close(1.0 / t, 1.0 / q + inv_r - e.alpha / n), "1/t=1/q+1/r-alpha/n",
                {{"t", t}, {"q", q}, {"r", e.r}, {"alpha", e.alpha}});
      break;
    case Regime::T28:
      c.require(e.alpha >= 0 && e.alpha < n, "0<=alpha<n", {{"alpha", e.alpha}});
      morrey_range();
      c.require(t > 0 && le(t, s), "0<t<=s", {{"t", t}, {"s", s}});
      c.require(s < e.r, "s<r", {{"s", s}, {"r", e.r}});
      c.require(e.r1 > 0 && e.r1 < e.q1, "0<r1<q1", {{"r1", e.r1}, {"q1", e.q1}});
      c.require(e.r2 > 0 && e.r2 < e.q2, "0<r2<q2", {{"r2", e.r2}, {"q2", e.q2}});
      a_range(std::min(e.q1 / e.r1, e.q2 / e.r2), "1<a<min(q1/r1,q2/r2)");
      c.require(e.alpha / n >= inv_r, "alpha/n>=1/r", {{"alpha", e.alpha}, {"r", e.r}});
      st_identity();
      break;
    case Regime::T29:
      c.require(e.alpha >= 0 && e.alpha < n, "0<=alpha<n", {{"alpha", e.alpha}});
      morrey_range();
      c.require(t > 0 && le(t, s) && std::isfinite(s), "0<t<=s<inf", {{"t", t}, {"s", s}});
      c.require(e.r1 > 0 && e.r1 < e.q1, "0<r1<q1", {{"r1", e.r1}, {"q1", e.q1}});
      c.require(e.r2 > 0 && e.r2 < e.q2, "0<r2<q2", {{"r2", e.r2}, {"q2", e.q2}});
      st_identity();
      break;
    case Regime::BH:
      c.require(e.alpha == 0.0, "alpha=0", {{"alpha", e.alpha}});
      morrey_range();
      c.require(t > 0 && le(t, s) && std::isfinite(s), "0<t<=s<inf", {{"t", t}, {"s", s}});
      holder();
      c.require(e.r1 > 1 && e.r1 < e.q1, "1<r1<q1", {{"r1", e.r1}, {"q1", e.q1}});
      c.require(e.r2 > 1 && e.r2 < e.q2, "1<r2<q2", {{"r2", e.r2}, {"q2", e.q2}});
      a_range(std::min(e.q1 / e.r1, e.q2 / e.r2), "1<a<min(q1/r1,q2/r2)");
      c.require(close(1.0 / s, 1.0 / e.p - e.alpha / n), "1/s=1/p-alpha/n", {{"s", s}, {"p", e.p}});
      c.require(close(t / s, q / e.p), "t/s=q/p", {{"t", t}, {"s", s}, {"q", q}, {"p", e.p}});
      break;
    case Regime::SW: {
      c.require(e.alpha > 0 && e.alpha < n, "0<alpha<n", {{"alpha", e.alpha}});
      c.require(!unset(e.p1) && !unset(e.p2), "p1,p2 defined", {{"p1", e.p1}, {"p2", e.p2}});
      c.require(e.q1 > 1 && e.q1 <= e.p1, "1<q1<=p1", {{"q1", e.q1}, {"p1", e.p1}});
      c.require(e.q2 > 1 && e.q2 <= e.p2, "1<q2<=p2", {{"q2", e.q2}, {"p2", e.p2}});
      c.require(close(1.0 / e.p, 1.0 / e.p1 + 1.0 / e.p2), "1/p=1/p1+1/p2", {{"p", e.p}, {"p1", e.p1}, {"p2", e.p2}});
      c.require(t > 1 && le(t, s) && std::isfinite(s), "1<t<=s<inf", {{"t", t}, {"s", s}});
      c.require(n / (n - e.alpha) < e.r, "n/(n-alpha)<r", {{"alpha", e.alpha}, {"r", e.r}});
      const double dual = (n - e.alpha) / n;
      c.require(close(1.0 / s, 1.0 / e.p + inv_r - dual), "1/s=1/p+1/r-(n-alpha)/n", {{"s", s}, {"p", e.p}});
      c.require(close(1.0 / t, 1.0 / q + inv_r - dual), "1/t=1/q+1/r-(n-alpha)/n", {{"t", t}, {"q", q}});
      c.require(e.beta < n / s, "beta<n/s", {{"beta", e.beta}, {"n/s", n / s}});
      c.require(e.gamma1 < n / conjugate(e.q1), "gamma1<n/q1'", {{"gamma1", e.gamma1}});
      c.require(e.gamma2 < n / conjugate(e.q2), "gamma2<n/q2'", {{"gamma2", e.gamma2}});
      c.require(close(e.alpha + e.beta + e.gamma1 + e.gamma2, n + n / t - n / q), "alpha+beta+gamma1+gamma2=n+n/t-n/q",
                {{"lhs", e.alpha + e.beta + e.gamma1 + e.gamma2}, {"rhs", n + n / t - n / q}});
      c.require(e.beta + e.gamma1 + e.gamma2 >= -1e-12, "beta+gamma1+gamma2>=0",
                {{"sum", e.beta + e.gamma1 + e.gamma2}});
      break;
    }
    case Regime::Control:
      c.require(e.alpha > 0 && e.alpha < n, "0<alpha<n", {{"alpha", e.alpha}});
      morrey_range();
      holder();
      c.require(e.r1 > 1 && e.r2 > 1, "r1,r2>1", {{"r1", e.r1}, {"r2", e.r2}});
      break;
    case Regime::None:
      break;
  }
  return c.out;
}

// ---------------------------------------------------------------------------

namespace {

// Largest admissible value is hi (inclusive) or just below hi (exclusive);
// the search always takes the midpoint of (lo, hi).
double midpoint(double lo, double hi) { return 0.5 * (lo + hi); }

bool empty_interval(double lo, double hi) { return !(hi - lo > 1e-12 * std::max(1.0, std::abs(hi))); }

// q / (x (q/x')')' simplifies to q - q/x + x' with x' = a_* (or 1), so
//   a >= q - q/x + a_*   <=>   x <= 1 / (1 - (a - a_*)/q).
double largest_index(double q, double a, double a_star) {
  const double slack = (a - a_star) / q;
  if (slack >= 1.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (1.0 - slack);
}

}  // namespace

AuxiliarySearch feasible_auxiliary_indices(const ExponentSet& e) {
  AuxiliarySearch out;
  AuxiliaryIndices w;
  w.regime = e.regime;
  const double a = e.a;
  if (e.regime == Regime::T21) {
    if (empty_interval(1.0, a)) return {std::nullopt, "theta3 in (1, a]"};
    w.theta[2] = midpoint(1.0, a);
    w.a_star = midpoint(1.0, a);
    // theta1 in (1, min(q1/a_*, largest)), likewise theta2; theta4/theta5 with a_* replaced by 1.
    const double qs[2] = {e.q1, e.q2};
    for (int i = 0; i < 2; ++i) {
      const double hi = std::min(qs[i] / w.a_star, largest_index(qs[i], a, w.a_star));
      if (empty_interval(1.0, hi)) return {std::nullopt, i == 0 ? "theta1" : "theta2"};
      w.theta[i] = midpoint(1.0, hi);
      const double hi2 = std::min(qs[i], largest_index(qs[i], a, 1.0));
      if (empty_interval(1.0, hi2)) return {std::nullopt, i == 0 ? "theta4" : "theta5"};
      w.theta[3 + i] = midpoint(1.0, hi2);
    }
  } else if (e.regime == Regime::T22) {
    const double t = e.t;
    if (!(t > 1.0) || !(t < e.r)) return {std::nullopt, "t in (1, r)"};
    // e in (t, min(r, a t)) so that L can sit in (e/t, a].
    const double e_hi = std::min(e.r, a * t);
    if (empty_interval(t, e_hi)) return {std::nullopt, "e in (t, min(r, a t))"};
    w.e = midpoint(t, e_hi);
    if (empty_interval(w.e / t, a)) return {std::nullopt, "L in (e/t, a]"};
    w.L = midpoint(w.e / t, a);
    const double th3_hi = std::min({w.L * t / w.e, conjugate(t) / conjugate(w.e), a});
    if (empty_interval(1.0, th3_hi)) return {std::nullopt, "vartheta3"};
    w.theta[2] = midpoint(1.0, th3_hi);
    // a >= q - q/(x r) + a_* needs a - a_* > q / r' ; share the slack between a_* and x.
    const double qs[2] = {e.q1, e.q2};
    const double rs[2] = {e.r1, e.r2};
    double a_star_hi = a;
    for (int i = 0; i < 2; ++i) a_star_hi = std::min(a_star_hi, a - qs[i] / conjugate(rs[i]));
    if (empty_interval(1.0, a_star_hi)) return {std::nullopt, "a_* in (1, a - q_i/r_i')"};
    w.a_star = midpoint(1.0, a_star_hi);
    for (int i = 0; i < 2; ++i) {
      const double hi = std::min(qs[i] / (w.a_star * rs[i]), largest_index(qs[i], a, w.a_star) / rs[i]);
      if (empty_interval(1.0, hi)) return {std::nullopt, i == 0 ? "vartheta1" : "vartheta2"};
      w.theta[i] = midpoint(1.0, hi);
      const double hi2 = std::min(qs[i] / rs[i], largest_index(qs[i], a, 1.0) / rs[i]);
      if (empty_interval(1.0, hi2)) return {std::nullopt, i == 0 ? "vartheta4" : "vartheta5"};
      w.theta[3 + i] = midpoint(1.0, hi2);
    }
  } else {
    return {std::nullopt, "regime has no auxiliary indices"};
  }
  out.witness = w;
  return out;
}

std::vector<Violation> check_auxiliary(const ExponentSet& e, const AuxiliaryIndices& w) {
  Checker c;
  const double a = e.a;
  const auto& th = w.theta;
  auto cj = [](double x) { return conjugate(x); };
  if (w.regime == Regime::T21) {
    c.require(th[0] > 1 && th[0] < e.q1, "theta1 in (1,q1)", {{"theta1", th[0]}});
    c.require(th[3] > 1 && th[3] < e.q1, "theta4 in (1,q1)", {{"theta4", th[3]}});
    c.require(th[1] > 1 && th[1] < e.q2, "theta2 in (1,q2)", {{"theta2", th[1]}});
    c.require(th[4] > 1 && th[4] < e.q2, "theta5 in (1,q2)", {{"theta5", th[4]}});
    c.require(th[2] > 1, "theta3>1", {{"theta3", th[2]}});
    c.require(w.a_star > 1, "a*>1", {{"a*", w.a_star}});
    c.require(w.a_star * th[0] < e.q1, "a*theta1<q1", {{"a*theta1", w.a_star * th[0]}});
    c.require(w.a_star * th[1] < e.q2, "a*theta2<q2", {{"a*theta2", w.a_star * th[1]}});
    const double b1 = e.q1 / cj(th[0] * cj(e.q1 / (w.a_star * th[0])));
    const double b2 = e.q2 / cj(th[1] * cj(e.q2 / (w.a_star * th[1])));
    const double b4 = e.q1 / cj(th[3] * cj(e.q1 / th[3]));
    const double b5 = e.q2 / cj(th[4] * cj(e.q2 / th[4]));
    c.require(a >= th[2], "a>=theta3", {{"a", a}, {"theta3", th[2]}});
    c.require(a >= b1 * (1 - 1e-12), "a>=q1/(theta1(q1/(a*theta1))')'", {{"a", a}, {"bound", b1}});
    c.require(a >= b2 * (1 - 1e-12), "a>=q2/(theta2(q2/(a*theta2))')'", {{"a", a}, {"bound", b2}});
    c.require(a >= b4 * (1 - 1e-12), "a>=q1/(theta4(q1/theta4)')'", {{"a", a}, {"bound", b4}});
    c.require(a >= b5 * (1 - 1e-12), "a>=q2/(theta5(q2/theta5)')'", {{"a", a}, {"bound", b5}});
    // The resulting bound on the dual exponents, checked directly.
    const double cap1 = cj(e.q1 / a) * (1 + 1e-12), cap2 = cj(e.q2 / a) * (1 + 1e-12);
    c.require(std::max(th[0] * cj(e.q1 / (w.a_star * th[0])), th[3] * cj(e.q1 / th[3])) <= cap1,
              "max{...}<=(q1/a)'", {{"cap", cap1}});
    c.require(std::max(th[1] * cj(e.q2 / (w.a_star * th[1])), th[4] * cj(e.q2 / th[4])) <= cap2,
              "max{...}<=(q2/a)'", {{"cap", cap2}});
  } else if (w.regime == Regime::T22) {
    const double r1 = e.r1, r2 = e.r2, t = e.t;
    c.require(th[0] * r1 > r1 && th[0] * r1 < e.q1, "vartheta1 r1 in (r1,q1)", {{"vartheta1", th[0]}});
    c.require(th[3] * r1 > r1 && th[3] * r1 < e.q1, "vartheta4 r1 in (r1,q1)", {{"vartheta4", th[3]}});
    c.require(th[1] * r2 > r2 && th[1] * r2 < e.q2, "vartheta2 r2 in (r2,q2)", {{"vartheta2", th[1]}});
    c.require(th[4] * r2 > r2 && th[4] * r2 < e.q2, "vartheta5 r2 in (r2,q2)", {{"vartheta5", th[4]}});
    c.require(th[2] > 1, "vartheta3>1", {{"vartheta3", th[2]}});
    c.require(w.L > 1, "L>1", {{"L", w.L}});
    c.require(w.e > t && w.e < e.r, "e in (t,r)", {{"e", w.e}, {"t", t}, {"r", e.r}});
    c.require(w.e * th[2] < w.L * t, "e vartheta3<L t", {{"e", w.e}, {"L", w.L}});
    c.require(cj(w.e) * th[2] < cj(t), "e' vartheta3<t'", {{"e", w.e}});
    c.require(w.a_star > 1, "a*>1", {{"a*", w.a_star}});
    c.require(w.a_star * th[0] * r1 < e.q1, "a*vartheta1 r1<q1", {{"value", w.a_star * th[0] * r1}});
    c.require(w.a_star * th[1] * r2 < e.q2, "a*vartheta2 r2<q2", {{"value", w.a_star * th[1] * r2}});
    const double x1 = th[0] * r1, x2 = th[1] * r2, x4 = th[3] * r1, x5 = th[4] * r2;
    const double b1 = e.q1 / cj(x1 * cj(e.q1 / (w.a_star * x1)));
    const double b2 = e.q2 / cj(x2 * cj(e.q2 / (w.a_star * x2)));
    const double b4 = e.q1 / cj(x4 * cj(e.q1 / x4));
    const double b5 = e.q2 / cj(x5 * cj(e.q2 / x5));
    c.require(a >= th[2], "a>=vartheta3", {{"a", a}, {"vartheta3", th[2]}});
    c.require(a >= w.L, "a>=L", {{"a", a}, {"L", w.L}});
    c.require(a >= b1 * (1 - 1e-12), "a>=q1/(vartheta1 r1(q1/(a*vartheta1 r1))')'", {{"a", a}, {"bound", b1}});
    c.require(a >= b2 * (1 - 1e-12), "a>=q2/(vartheta2 r2(q2/(a*vartheta2 r2))')'", {{"a", a}, {"bound", b2}});
    c.require(a >= b4 * (1 - 1e-12), "a>=q1/(vartheta4 r1(q1/(vartheta4 r1))')'", {{"a", a}, {"bound", b4}});
    c.require(a >= b5 * (1 - 1e-12), "a>=q2/(vartheta5 r2(q2/(vartheta5 r2))')'", {{"a", a}, {"bound", b5}});
    const double cap1 = cj(e.q1 / a) * (1 + 1e-12), cap2 = cj(e.q2 / a) * (1 + 1e-12);
    c.require(std::max(x1 * cj(e.q1 / (w.a_star * x1)), x4 * cj(e.q1 / x4)) <= cap1, "max{...}<=(q1/a)'",
              {{"cap", cap1}});
    c.require(std::max(x2 * cj(e.q2 / (w.a_star * x2)), x5 * cj(e.q2 / x5)) <= cap2, "max{...}<=(q2/a)'",
              {{"cap", cap2}});
  } else {
    c.require(false, "regime has auxiliary indices", {});
  }
  return c.out;
}

}  // namespace morrey
