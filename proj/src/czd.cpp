#include "morrey/czd.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <stdexcept>

namespace morrey {

namespace {

CubeTable abs_power_sums(const LatticeFunction& f, double e) {
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(std::abs(f[i]), e);
  return cube_sums(f.window(), v);
}

struct Functional {
  const Window& w;
  CubeTable fs, gs;
  double e1, e2, alpha;

  Functional(const LatticeFunction& f, const LatticeFunction& g, double e1_, double e2_, double alpha_)
      : w(f.window()), fs(abs_power_sums(f, e1_)), gs(abs_power_sums(g, e2_)), e1(e1_), e2(e2_), alpha(alpha_) {}

  double operator()(const Cube& q) const {
    const ClippedSum a = dilate3_sum(w, fs, q);
    const ClippedSum b = dilate3_sum(w, gs, q);
    const double af = std::pow(a.sum * w.cell_volume() / a.volume, 1.0 / e1);
    const double ag = std::pow(b.sum * w.cell_volume() / b.volume, 1.0 / e2);
    return std::exp2(q.level * alpha) * af * ag;
  }
};

void walk(const Functional& F, const Cube& q, double threshold, std::vector<Cube>& out) {
  if (F(q) > threshold) {
    out.push_back(q);
    return;
  }
  if (q.level == F.w.level_min()) return;
  for (const Cube& c : children(q)) walk(F, c, threshold, out);
}

Decomposition decompose(const LatticeFunction& f, const LatticeFunction& g, const Cube& q0, double e1, double e2,
                        double alpha) {
  if (!(f.window() == g.window())) throw std::invalid_argument("inputs live on different windows");
  const Window& w = f.window();
  if (!w.contains(q0)) throw std::out_of_range("Q0 outside window");
  const int n = w.dim();
  const Functional F(f, g, e1, e2, alpha);

  Decomposition d;
  d.base = q0;
  d.e1 = e1;
  d.e2 = e2;
  d.alpha = alpha;
  d.factor = std::pow(4.0 * std::pow(18.0, n), 1.0 / e1 + 1.0 / e2);
  d.gamma = F(q0);
  const auto cells = w.cells_of(q0);
  if (d.gamma == 0.0) {
    d.e0 = cells;
    return d;
  }

  // depth[cell] = largest k with the cell in D_k.
  std::vector<int> depth(w.cell_count(), 0);
  const int cap = std::max(1, w.level_count() - 1) * 64;
  for (int k = 1;; ++k) {
    if (k > cap) {
      d.capped = true;
      break;
    }
    const double threshold = d.gamma * std::pow(d.factor, k);
    std::vector<Cube> found;
    if (q0.level > w.level_min())
      for (const Cube& c : children(q0)) walk(F, c, threshold, found);
    if (found.empty()) break;
    for (const Cube& q : found)
      for (std::size_t i : w.cells_of(q)) depth[i] = k;
    d.levels.push_back(std::move(found));
  }
  for (std::size_t i : cells)
    if (depth[i] == 0) d.e0.push_back(i);
  d.exceptional.resize(d.levels.size());
  for (std::size_t l = 0; l < d.levels.size(); ++l) {
    const int k = static_cast<int>(l) + 1;
    for (const Cube& q : d.levels[l]) {
      std::vector<std::size_t> e;
      for (std::size_t i : w.cells_of(q))
        if (depth[i] == k) e.push_back(i);
      d.exceptional[l].push_back(std::move(e));
    }
  }
  return d;
}

void require_exponent(double e, const char* name) {
  if (!(e > 0.0) || std::isinf(e)) throw std::invalid_argument(std::string(name) + " must be finite and positive");
}

}  // namespace

Decomposition cz_decompose(const LatticeFunction& f, const LatticeFunction& g, const Cube& q0, double theta1,
                           double theta2) {
  if (!(theta1 > 1.0 && theta2 > 1.0)) throw std::invalid_argument("theta1, theta2 must exceed 1");
  require_exponent(theta1, "theta1");
  require_exponent(theta2, "theta2");
  return decompose(f, g, q0, theta1, theta2, 0.0);
}

Decomposition cz_decompose_alpha(const LatticeFunction& f, const LatticeFunction& g, const Cube& q0, double r1,
                                 double r2, double alpha) {
  require_exponent(r1, "r1");
  require_exponent(r2, "r2");
  if (std::abs(1.0 / r1 + 1.0 / r2 - 1.0) > 1e-12) throw std::invalid_argument("r1, r2 must be a Hoelder pair");
  if (!(alpha >= 0.0 && alpha < f.window().dim())) throw std::invalid_argument("alpha must lie in [0, n)");
  return decompose(f, g, q0, r1, r2, alpha);
}

std::vector<std::string> check_decomposition(const Decomposition& d, const LatticeFunction& f,
                                             const LatticeFunction& g) {
  const Window& w = f.window();
  const int n = w.dim();
  std::vector<std::string> bad;
  auto F = [&](const Cube& q) {
    const Box b = dilate3(q);
    return std::pow(q.volume(), d.alpha / n) * power_avg(f, b, d.e1) * power_avg(g, b, d.e2);
  };
  const double rel = 1e-12;
  const double spread = std::pow(2.0, n * (1.0 / d.e1 + 1.0 / d.e2));

  std::vector<int> owner(w.cell_count(), -1);
  auto claim = [&](const std::vector<std::size_t>& cells, int tag) {
    for (std::size_t i : cells) {
      if (owner[i] != -1) bad.push_back("partition: cell " + std::to_string(i) + " covered twice");
      owner[i] = tag;
    }
  };
  claim(d.e0, 0);
  if (2 * d.e0.size() < w.cells_of(d.base).size())
    bad.push_back("measure: |Q0| > 2|E0|");

  for (std::size_t l = 0; l < d.levels.size(); ++l) {
    const int k = static_cast<int>(l) + 1;
    const double threshold = d.gamma * std::pow(d.factor, k);
    for (std::size_t j = 0; j < d.levels[l].size(); ++j) {
      const Cube& q = d.levels[l][j];
      const std::string tag = "level " + std::to_string(k) + " cube " + std::to_string(j);
      if (!contains(d.base, q) || q == d.base) bad.push_back("nesting: " + tag + " is not a proper subcube of Q0");
      const double v = F(q);
      if (!(v > threshold * (1 - rel))) bad.push_back("sandwich: " + tag + " below threshold");
      if (!(v <= spread * threshold * (1 + rel))) bad.push_back("sandwich: " + tag + " above 2^{n(1/e1+1/e2)} bound");
      for (const Cube& a : ancestors(q, w)) {
        if (!contains(d.base, a)) break;
        if (F(a) > threshold * (1 + rel)) bad.push_back("maximality: ancestor of " + tag + " exceeds threshold");
      }
      if (l > 0) {
        const auto& prev = d.levels[l - 1];
        if (std::none_of(prev.begin(), prev.end(), [&](const Cube& p) { return contains(p, q); }))
          bad.push_back("nesting: " + tag + " not inside a level " + std::to_string(k - 1) + " cube");
      }
      const auto& e = d.exceptional[l][j];
      if (2 * e.size() < w.cells_of(q).size()) bad.push_back("measure: " + tag + " has |Q| > 2|E|");
      for (std::size_t i : e)
        if (!contains(q, w.cell_cube(i))) bad.push_back("partition: E-set of " + tag + " leaves its cube");
      claim(e, k);
    }
  }
  for (std::size_t i : w.cells_of(d.base))
    if (owner[i] == -1) bad.push_back("partition: cell " + std::to_string(i) + " uncovered");
  if (d.capped) bad.push_back("termination: level cap reached");
  return bad;
}

std::string decomposition_json(const Decomposition& d, const Window& w) {
  using nlohmann::ordered_json;
  auto cube = [](const Cube& q) { return ordered_json{{"level", q.level}, {"index", q.index}}; };
  ordered_json j;
  j["base"] = cube(d.base);
  j["gamma"] = d.gamma;
  j["factor"] = d.factor;
  j["capped"] = d.capped;
  ordered_json levels = ordered_json::array();
  for (std::size_t l = 0; l < d.levels.size(); ++l) {
    ordered_json cubes = ordered_json::array();
    for (const Cube& q : d.levels[l]) cubes.push_back(cube(q));
    levels.push_back({{"k", l + 1}, {"cubes", cubes}});
  }
  j["levels"] = levels;
  auto global = [&](const std::vector<std::size_t>& cells) {
    ordered_json out = ordered_json::array();
    for (std::size_t i : cells) out.push_back(w.cell_cube(i).index);
    return out;
  };
  ordered_json e = ordered_json::array();
  e.push_back({{"k", 0}, {"j", 0}, {"cells", global(d.e0)}});
  for (std::size_t l = 0; l < d.exceptional.size(); ++l)
    for (std::size_t i = 0; i < d.exceptional[l].size(); ++i)
      e.push_back({{"k", l + 1}, {"j", i}, {"cells", global(d.exceptional[l][i])}});
  j["e_cells"] = e;
  return j.dump(2);
}

NecessityPair necessity_pair(const Weight& w1, const Weight& w2, const Cube& qp, const ExponentSet& e) {
  const Window& w = w1.window();
  if (!(w == w2.window())) throw std::invalid_argument("weights live on different windows");
  if (!w.contains(qp)) throw std::out_of_range("Q' outside window");
  if (!(e.r1 < e.q1) || !(e.r2 < e.q2)) throw std::invalid_argument("necessity pair needs r_i < q_i");
  const auto& a1 = *w1.averages(-e.q1 / (e.q1 - e.r1));
  const auto& a2 = *w2.averages(-e.q2 / (e.q2 - e.r2));
  std::vector<double> fv(w.cell_count(), 0.0), gv(w.cell_count(), 0.0);
  double sf = 0.0, sg = 0.0;
  const auto cells = w.cells_of(qp);
  for (std::size_t i : cells) {
    if (!std::isfinite(a1[i]) || !std::isfinite(a2[i]))
      throw std::domain_error("weight power is not locally integrable on Q'");
    fv[i] = a1[i];
    gv[i] = a2[i];
    sf += std::pow(fv[i], e.r1);
    sg += std::pow(gv[i], e.r2);
  }
  const double count = static_cast<double>(cells.size());
  const double lambda = 0.5 * std::pow(qp.volume(), e.alpha / w.dim()) * std::pow(sf / count, 1.0 / e.r1) *
                        std::pow(sg / count, 1.0 / e.r2);
  return {LatticeFunction(w, std::move(fv)), LatticeFunction(w, std::move(gv)), lambda};
}

}  // namespace morrey
