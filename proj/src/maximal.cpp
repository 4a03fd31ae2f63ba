#include "morrey/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "morrey/operators.hpp"

namespace morrey {

double guarded_product(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

namespace {

void require_same_window(const LatticeFunction& f, const LatticeFunction& g) {
  if (!(f.window() == g.window())) throw std::invalid_argument("inputs live on different windows");
}

void require_positive(double r, const char* what) {
  if (!(r > 0.0)) throw std::invalid_argument(std::string(what) + " must be positive");
}

std::vector<double> abs_power(const LatticeFunction& f, double e) {
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = e == 1.0 ? std::abs(f[i]) : std::pow(std::abs(f[i]), e);
  return v;
}

double cells_in(const Window& w, int level) { return std::ldexp(1.0, w.dim() * (level - w.level_min())); }

}  // namespace

CubeTable cube_power_means(const LatticeFunction& f, double e) {
  require_positive(e, "exponent");
  const Window& w = f.window();
  if (std::isinf(e)) return cube_maxima(w, abs_power(f, 1.0));
  CubeTable t = cube_sums(w, abs_power(f, e));
  for (int k = w.level_min(); k <= w.level_max(); ++k) {
    const double count = cells_in(w, k);
    for (double& x : t[k - w.level_min()]) x = e == 1.0 ? x / count : std::pow(x / count, 1.0 / e);
  }
  return t;
}

CubeTable cube_products(const LatticeFunction& f, const LatticeFunction& g, double alpha, double r1, double r2) {
  require_same_window(f, g);
  require_positive(r1, "r1");
  require_positive(r2, "r2");
  const Window& w = f.window();
  const CubeTable a = cube_power_means(f, r1);
  const CubeTable b = cube_power_means(g, r2);
  CubeTable out(a.size());
  for (std::size_t l = 0; l < a.size(); ++l) {
    const int k = w.level_min() + static_cast<int>(l);
    const double scale = std::exp2(k * alpha);
    out[l].resize(a[l].size());
    for (std::size_t i = 0; i < a[l].size(); ++i) out[l][i] = scale * guarded_product(a[l][i], b[l][i]);
  }
  return out;
}

CubeTable ancestor_max(const Window& w, const CubeTable& table) {
  const int n = w.dim();
  CubeTable out = table;
  for (int k = w.level_max() - 1; k >= w.level_min(); --k) {
    std::vector<double>& fine = out[k - w.level_min()];
    const std::vector<double>& coarse = out[k + 1 - w.level_min()];
    const std::int64_t fine_count = w.cubes_per_axis(k);
    const std::int64_t coarse_count = fine_count / 2;
    Index c(n, 0);
    for (double& value : fine) {
      std::size_t lin = 0;
      for (int a = 0; a < n; ++a) lin = lin * coarse_count + static_cast<std::size_t>(c[a] >> 1);
      value = std::max(value, coarse[lin]);
      for (int a = n - 1; a >= 0; --a) {
        if (++c[a] < fine_count) break;
        c[a] = 0;
      }
    }
  }
  return out;
}

LatticeFunction sup_over_containing(const Window& w, const CubeTable& table) {
  return LatticeFunction(w, std::move(ancestor_max(w, table).front()));
}

namespace {

LatticeFunction centered(const LatticeFunction& f, const LatticeFunction& g, double alpha, double r1, double r2) {
  const Window& w = f.window();
  const int n = w.dim();
  const std::int64_t N = w.cells_per_axis();
  const auto fp = abs_power(f, std::isinf(r1) ? 1.0 : r1);
  const auto gp = abs_power(g, std::isinf(r2) ? 1.0 : r2);
  const auto radii = centered_radii(w);
  std::vector<double> out(w.cell_count());
  Index lo(n), hi(n);
  for (std::size_t cell = 0; cell < out.size(); ++cell) {
    const Index c = w.cell_coords(cell);
    double best = 0.0;
    for (double r : radii) {
      const double R = r / w.cell_side();
      const auto reach = static_cast<std::int64_t>(std::floor(R));
      for (int a = 0; a < n; ++a) {
        lo[a] = std::max(c[a] - reach, std::int64_t{0});
        hi[a] = std::min(c[a] + reach, N - 1);
      }
      double sf = 0.0, sg = 0.0;
      for_each_index(lo, hi, [&](const Index& k) {
        double weight = 1.0;
        std::size_t lin = 0;
        for (int a = 0; a < n; ++a) {
          if (static_cast<double>(std::abs(k[a] - c[a])) == R) weight *= 0.5;
          lin = lin * N + static_cast<std::size_t>(k[a]);
        }
        sf = std::isinf(r1) ? std::max(sf, fp[lin]) : sf + weight * fp[lin];
        sg = std::isinf(r2) ? std::max(sg, gp[lin]) : sg + weight * gp[lin];
      });
      const double vol = std::pow(2.0 * R, n);
      const double af = std::isinf(r1) ? sf : std::pow(sf / vol, 1.0 / r1);
      const double ag = std::isinf(r2) ? sg : std::pow(sg / vol, 1.0 / r2);
      best = std::max(best, std::pow(2.0 * r, alpha) * guarded_product(af, ag));
    }
    out[cell] = best;
  }
  return LatticeFunction(w, std::move(out));
}

}  // namespace

LatticeFunction m_alpha_r(const LatticeFunction& f, const LatticeFunction& g, double alpha, double r1, double r2,
                          MaximalMode mode) {
  require_same_window(f, g);
  require_positive(r1, "r1");
  require_positive(r2, "r2");
  if (alpha < 0.0) throw std::invalid_argument("alpha must be nonnegative");
  if (mode == MaximalMode::Centered) return centered(f, g, alpha, r1, r2);
  return sup_over_containing(f.window(), cube_products(f, g, alpha, r1, r2));
}

LatticeFunction m_theta(const LatticeFunction& f, double theta) {
  require_positive(theta, "theta");
  return sup_over_containing(f.window(), cube_power_means(f, theta));
}

LatticeFunction m_joint_weighted(const LatticeFunction& f, const LatticeFunction& g, const Weight& v, double alpha,
                                 double rho1, double rho2, double v_exp) {
  require_same_window(f, g);
  if (!(f.window() == v.window())) throw std::invalid_argument("weight lives on a different window");
  require_positive(rho1, "rho1");
  require_positive(rho2, "rho2");
  require_positive(v_exp, "weight exponent");
  if (std::isinf(rho1) || std::isinf(rho2)) throw std::invalid_argument("3Q averages need finite exponents");
  const Window& w = f.window();
  const double cell_volume = w.cell_volume();
  const CubeTable fs = cube_sums(w, abs_power(f, rho1));
  const CubeTable gs = cube_sums(w, abs_power(g, rho2));
  CubeTable vt;
  if (std::isinf(v_exp)) {
    vt = cube_maxima(w, v.cell_sup(1.0));
  } else {
    vt = cube_sums(w, *v.averages(v_exp));
    for (int k = w.level_min(); k <= w.level_max(); ++k)
      for (double& x : vt[k - w.level_min()]) x = std::pow(x / cells_in(w, k), 1.0 / v_exp);
  }
  CubeTable out(fs.size());
  for (int k = w.level_min(); k <= w.level_max(); ++k) {
    auto& row = out[k - w.level_min()];
    row.resize(w.cube_count(k));
    const double scale = std::exp2(k * alpha);
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cube q = w.cube_at(k, i);
      const ClippedSum a = dilate3_sum(w, fs, q);
      const ClippedSum b = dilate3_sum(w, gs, q);
      const double af = std::pow(a.sum * cell_volume / a.volume, 1.0 / rho1);
      const double ag = std::pow(b.sum * cell_volume / b.volume, 1.0 / rho2);
      row[i] = scale * guarded_product(guarded_product(af, ag), vt[k - w.level_min()][i]);
    }
  }
  return sup_over_containing(w, out);
}

}  // namespace morrey
