#include "morrey/weights_norms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "morrey/maximal.hpp"
#include "morrey/quadrature.hpp"

namespace morrey {

std::string to_string(WeightConditionKind k) {
  switch (k) {
    case WeightConditionKind::C22: return "C22";
    case WeightConditionKind::C23: return "C23";
    case WeightConditionKind::C24: return "C24";
    case WeightConditionKind::C27: return "C27";
    case WeightConditionKind::C29: return "C29";
    case WeightConditionKind::C210: return "C210";
    case WeightConditionKind::C211: return "C211";
    case WeightConditionKind::CBH: return "CBH";
  }
  return "C22";
}

WeightConditionKind weight_kind_from_string(const std::string& s) {
  for (auto k : {WeightConditionKind::C22, WeightConditionKind::C23, WeightConditionKind::C24,
                 WeightConditionKind::C27, WeightConditionKind::C29, WeightConditionKind::C210,
                 WeightConditionKind::C211, WeightConditionKind::CBH})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown weight condition '" + s + "'");
}

Regime regime_of(WeightConditionKind k) {
  switch (k) {
    case WeightConditionKind::C22:
    case WeightConditionKind::C23: return Regime::T21;
    case WeightConditionKind::C24: return Regime::T22;
    case WeightConditionKind::C27: return Regime::T27;
    case WeightConditionKind::C29: return Regime::T28;
    case WeightConditionKind::C210:
    case WeightConditionKind::C211: return Regime::T29;
    case WeightConditionKind::CBH: return Regime::BH;
  }
  return Regime::None;
}

namespace {

double cells_in(const Window& w, int level) { return std::ldexp(1.0, w.dim() * (level - w.level_min())); }

// (fint_Q w^e)^outer for every window cube.
CubeTable means(const Weight& w, double e, double outer) {
  const Window& win = w.window();
  CubeTable t = cube_sums(win, *w.averages(e));
  for (int k = win.level_min(); k <= win.level_max(); ++k) {
    const double count = cells_in(win, k);
    for (double& x : t[k - win.level_min()]) x = outer == 1.0 ? x / count : std::pow(x / count, outer);
  }
  return t;
}

double table_max(const CubeTable& t) {
  double m = 0.0;
  for (const auto& row : t)
    for (double x : row) m = std::max(m, x);
  return m;
}

void require_window(const Window& a, const Window& b) {
  if (!(a == b)) throw std::invalid_argument("inputs live on different windows");
}

}  // namespace

CubeTable weight_power_means(const Weight& w, double e) {
  if (e == 0.0) throw std::invalid_argument("power mean needs a nonzero exponent");
  if (std::isinf(e) && e > 0) return cube_maxima(w.window(), w.cell_sup(1.0));
  return means(w, e, 1.0 / e);
}

double morrey_norm(const LatticeFunction& f, double p, double q, const std::optional<Weight>& w) {
  if (!(q > 0.0) || !(q <= p) || !std::isfinite(p)) throw std::invalid_argument("morrey norm needs 0 < q <= p < inf");
  const Window& win = f.window();
  std::vector<double> cells(f.size());
  const std::vector<double>* wv = nullptr;
  if (w) {
    require_window(win, w->window());
    wv = &w->values();
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const double x = std::pow(std::abs(f[i]), q);
    cells[i] = wv ? guarded_product(x, (*wv)[i]) : x;
  }
  const CubeTable t = cube_sums(win, cells);
  double best = 0.0;
  for (int k = win.level_min(); k <= win.level_max(); ++k) {
    const double count = cells_in(win, k);
    const double scale = std::exp2(k * win.dim() / p);
    for (double s : t[k - win.level_min()]) best = std::max(best, scale * std::pow(s / count, 1.0 / q));
  }
  return best;
}

CubeTable bilinear_morrey_table(const LatticeFunction& f, const LatticeFunction& g, const Weight& w1,
                                const Weight& w2, double p, double q1, double q2) {
  const Window& win = f.window();
  require_window(win, g.window());
  require_window(win, w1.window());
  require_window(win, w2.window());
  if (!(q1 > 0.0 && q2 > 0.0)) throw std::invalid_argument("q1, q2 must be positive");
  if (!(p > 0.0)) throw std::invalid_argument("p must be positive");
  const auto& a1 = *w1.averages(q1);
  const auto& a2 = *w2.averages(q2);
  std::vector<double> fc(f.size()), gc(g.size());
  for (std::size_t i = 0; i < fc.size(); ++i) {
    fc[i] = guarded_product(std::pow(std::abs(f[i]), q1), a1[i]);
    gc[i] = guarded_product(std::pow(std::abs(g[i]), q2), a2[i]);
  }
  CubeTable ft = cube_sums(win, fc);
  const CubeTable gt = cube_sums(win, gc);
  for (int k = win.level_min(); k <= win.level_max(); ++k) {
    const double count = cells_in(win, k);
    const double scale = std::exp2(k * win.dim() / p);
    auto& row = ft[k - win.level_min()];
    for (std::size_t i = 0; i < row.size(); ++i)
      row[i] = scale * guarded_product(std::pow(row[i] / count, 1.0 / q1),
                                       std::pow(gt[k - win.level_min()][i] / count, 1.0 / q2));
  }
  return ft;
}

double rhs_bilinear_morrey(const LatticeFunction& f, const LatticeFunction& g, const Weight& w1, const Weight& w2,
                           double p, double q1, double q2) {
  return table_max(bilinear_morrey_table(f, g, w1, w2, p, q1, q2));
}

double rhs_bilinear_morrey_above(const LatticeFunction& f, const LatticeFunction& g, const Weight& w1,
                                 const Weight& w2, double p, double q1, double q2, const Cube& q0) {
  const Window& win = f.window();
  const CubeTable t = bilinear_morrey_table(f, g, w1, w2, p, q1, q2);
  double best = t[q0.level - win.level_min()][win.local_linear(q0)];
  for (const Cube& a : ancestors(q0, win)) best = std::max(best, t[a.level - win.level_min()][win.local_linear(a)]);
  return best;
}

double weak_morrey_functional(const LatticeFunction& F, const Weight& v, double t, double s, const Cube& q0) {
  if (!(t > 0.0) || !(s > 0.0)) throw std::invalid_argument("t, s must be positive");
  const Window& win = F.window();
  require_window(win, v.window());
  if (!win.contains(q0)) throw std::out_of_range("Q0 outside window");
  const auto& vt = *v.averages(t);
  const double cell_volume = win.cell_volume();
  std::vector<std::pair<double, double>> cells;  // (|F|, v^t measure)
  for (std::size_t i : win.cells_of(q0)) cells.emplace_back(std::abs(F[i]), vt[i] * cell_volume);
  std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  double measure = 0.0, best = 0.0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    measure += cells[i].second;
    const bool last_of_value = i + 1 == cells.size() || cells[i + 1].first != cells[i].first;
    if (last_of_value && cells[i].first > 0.0) best = std::max(best, cells[i].first * std::pow(measure, 1.0 / t));
  }
  return std::pow(q0.volume(), 1.0 / s - 1.0 / t) * best;
}

std::vector<Violation> weight_kind_violations(WeightConditionKind kind, const ExponentSet& e) {
  ExponentSet x = e;
  x.regime = regime_of(kind);
  if (kind == WeightConditionKind::C211) std::tie(x.r1, x.r2) = default_holder_pair(x.q1, x.q2);
  auto out = validate(x);
  if (kind == WeightConditionKind::C22 && !(x.s < 1.0)) out.push_back({"s<1", "C22 covers 0<s<1"});
  if (kind == WeightConditionKind::C23 && !(x.s >= 1.0)) out.push_back({"s>=1", "C23 covers s>=1"});
  return out;
}

double two_weight_constant(WeightConditionKind kind, const Weight& v, const Weight& w1, const Weight& w2,
                           const ExponentSet& e, const std::vector<std::string>& allowed) {
  const Window& win = v.window();
  require_window(win, w1.window());
  require_window(win, w2.window());
  for (const auto& viol : weight_kind_violations(kind, e))
    if (std::find(allowed.begin(), allowed.end(), viol.constraint) == allowed.end())
      throw std::invalid_argument("exponents violate " + viol.constraint + " (" + viol.detail + ")");

  const double s = e.s, t = e.t, a = e.a;
  if (kind == WeightConditionKind::C210 || kind == WeightConditionKind::C211) {
    double r1 = e.r1, r2 = e.r2;
    if (kind == WeightConditionKind::C211) std::tie(r1, r2) = default_holder_pair(e.q1, e.q2);
    const Weight joint = Weight::product(w1, s / e.q1, w2, s / e.q2);
    const CubeTable A = means(joint, 1.0, 1.0 / s);
    const CubeTable B1 = means(w1, -r1 / (e.q1 - r1), (e.q1 - r1) / (r1 * e.q1));
    const CubeTable B2 = means(w2, -r2 / (e.q2 - r2), (e.q2 - r2) / (r2 * e.q2));
    double best = 0.0;
    for (std::size_t l = 0; l < A.size(); ++l)
      for (std::size_t i = 0; i < A[l].size(); ++i) best = std::max(best, A[l][i] * B1[l][i] * B2[l][i]);
    return best;
  }

  double rho = 0.0;
  bool with_r = true;
  CubeTable V;
  double d1 = 0.0, d2 = 0.0;
  switch (kind) {
    case WeightConditionKind::C22:
    case WeightConditionKind::C23:
      rho = kind == WeightConditionKind::C22 ? (1.0 - s) / (a * s) : (1.0 - a * s) / (a * s);
      V = std::abs(t - 1.0) <= 1e-12 ? weight_power_means(v, kInfinity) : weight_power_means(v, a * t / (1.0 - t));
      d1 = conjugate(e.q1 / a);
      d2 = conjugate(e.q2 / a);
      break;
    case WeightConditionKind::C24:
      rho = 1.0 / (a * s);
      V = weight_power_means(v, a * t);
      d1 = conjugate(e.q1 / a);
      d2 = conjugate(e.q2 / a);
      break;
    case WeightConditionKind::C27:
      rho = 1.0 / s;
      V = weight_power_means(v, t);
      d1 = e.r1 * conjugate(e.q1 / e.r1);
      d2 = e.r2 * conjugate(e.q2 / e.r2);
      break;
    case WeightConditionKind::C29:
    case WeightConditionKind::CBH:
      rho = 1.0 / s;
      with_r = kind == WeightConditionKind::C29;
      V = weight_power_means(v, t);
      d1 = e.r1 * conjugate(e.q1 / (a * e.r1));
      d2 = e.r2 * conjugate(e.q2 / (a * e.r2));
      break;
    default:
      break;
  }
  // (fint w^{-d})^{1/d}, or sup w^{-1} when d is infinite.
  auto dual = [&](const Weight& w, double d) {
    if (std::isinf(d)) return cube_maxima(win, w.cell_sup(-1.0));
    return means(w, -d, 1.0 / d);
  };
  const CubeTable W1 = dual(w1, d1), W2 = dual(w2, d2);
  const int n = win.dim();
  const double inv_r = with_r ? e.inv_r() : 0.0;

  double best = 0.0;
  for (int kq = win.level_min(); kq <= win.level_max(); ++kq) {
    const auto& vrow = V[kq - win.level_min()];
    for (std::size_t i = 0; i < vrow.size(); ++i) {
      const Index c = win.local_coords(win.cube_at(kq, i));
      for (int kp = kq; kp <= win.level_max(); ++kp) {
        const int shift = kp - kq;
        const std::int64_t count = win.cubes_per_axis(kp);
        std::size_t lin = 0;
        for (int ax = 0; ax < n; ++ax) lin = lin * count + static_cast<std::size_t>(c[ax] >> shift);
        const double scale = std::exp2(n * (-shift * rho + kp * inv_r));
        const double value =
            scale * vrow[i] * W1[kp - win.level_min()][lin] * W2[kp - win.level_min()][lin];
        best = std::max(best, value);
      }
    }
  }
  return best;
}

double ap_constant(const Weight& w, double p) {
  if (!(p > 1.0)) throw std::invalid_argument("A_p needs p > 1");
  const CubeTable a = means(w, 1.0, 1.0);
  const CubeTable b = means(w, -1.0 / (p - 1.0), p - 1.0);
  double best = 0.0;
  for (std::size_t l = 0; l < a.size(); ++l)
    for (std::size_t i = 0; i < a[l].size(); ++i) best = std::max(best, a[l][i] * b[l][i]);
  return best;
}

double rh_constant(const Weight& w, double nu) {
  if (!(nu > 1.0)) throw std::invalid_argument("reverse Hoelder needs nu > 1");
  const CubeTable a = means(w, nu, 1.0 / nu);
  const CubeTable b = means(w, 1.0, 1.0);
  double best = 0.0;
  for (std::size_t l = 0; l < a.size(); ++l)
    for (std::size_t i = 0; i < a[l].size(); ++i) best = std::max(best, a[l][i] / b[l][i]);
  return best;
}

Lemma39Report lemma39_check(const Weight& w1, const Weight& w2, double q1, double q2, double t_hat) {
  if (!(q1 > 1.0 && q2 > 1.0)) throw std::invalid_argument("q1, q2 must exceed 1");
  const double q = 1.0 / (1.0 / q1 + 1.0 / q2);
  if (!(t_hat >= q)) throw std::invalid_argument("t_hat must be at least q");
  const double c1 = conjugate(q1), c2 = conjugate(q2);
  const Weight joint = Weight::product(w1, t_hat, w2, t_hat);
  const CubeTable J = means(joint, 1.0, 1.0 / t_hat);
  const CubeTable A = means(w1, -c1, 1.0 / c1);
  const CubeTable B = means(w2, -c2, 1.0 / c2);
  Lemma39Report r;
  for (std::size_t l = 0; l < J.size(); ++l)
    for (std::size_t i = 0; i < J[l].size(); ++i) r.joint = std::max(r.joint, J[l][i] * A[l][i] * B[l][i]);
  r.product_ap = ap_constant(joint, 1.0 + t_hat * (2.0 - 1.0 / q));
  const double tail = 1.0 / t_hat + 2.0 - 1.0 / q;
  r.first_ap = ap_constant(w1.pow(-c1), c1 * tail);
  r.second_ap = ap_constant(w2.pow(-c2), c2 * tail);
  return r;
}

}  // namespace morrey
