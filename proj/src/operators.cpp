#include "morrey/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace morrey {

int CommutatorSpec::first_slot_count() const {
  return static_cast<int>(std::count(slots.begin(), slots.end(), 1));
}

void CommutatorSpec::validate() const {
  if (symbols.size() != slots.size()) throw std::invalid_argument("commutator needs one slot per symbol");
  for (int s : slots)
    if (s != 1 && s != 2) throw std::invalid_argument("commutator slots must be 1 or 2");
}

namespace {

void require_alpha(double alpha, int n) {
  if (!(alpha > 0.0 && alpha < n)) throw std::invalid_argument("alpha must lie in (0, n)");
}

void require_same_window(const LatticeFunction& f, const LatticeFunction& g) {
  if (!(f.window() == g.window())) throw std::invalid_argument("inputs live on different windows");
}

// Integral of |y|^{alpha-n} over the y-cell centered at j h, indexed by
// |j| per axis (the kernel is symmetric in every coordinate).
class KernelTable {
 public:
  KernelTable(int n, double alpha, double h, std::int64_t extent, const PowerQuadrature& quad)
      : n_(n), side_(extent + 1), mass_(static_cast<std::size_t>(std::pow(side_, n))) {
    Index lo(n, 0), hi(n, extent);
    Box b{std::vector<double>(n), std::vector<double>(n)};
    std::size_t k = 0;
    for_each_index(lo, hi, [&](const Index& j) {
      for (int a = 0; a < n; ++a) {
        b.lower[a] = (static_cast<double>(j[a]) - 0.5) * h;
        b.upper[a] = (static_cast<double>(j[a]) + 0.5) * h;
      }
      mass_[k++] = power_integral(alpha - n, b, quad);
    });
  }

  double operator()(const Index& j) const {
    std::size_t k = 0;
    for (int a = 0; a < n_; ++a) k = k * side_ + static_cast<std::size_t>(std::abs(j[a]));
    return mass_[k];
  }

 private:
  int n_;
  std::size_t side_;
  std::vector<double> mass_;
};

std::size_t linear(const Index& c, std::int64_t per_axis) {
  std::size_t k = 0;
  for (std::int64_t x : c) k = k * per_axis + static_cast<std::size_t>(x);
  return k;
}

// Shared loop of the bilinear quadrature.  factor(cell, minus, plus) scales
// the integrand f(minus) g(plus).
template <class Factor>
LatticeFunction bilinear_sum(const LatticeFunction& f, const LatticeFunction& g, double alpha,
                             const PowerQuadrature& quad, Factor factor) {
  require_same_window(f, g);
  const Window& w = f.window();
  const int n = w.dim();
  require_alpha(alpha, n);
  const std::int64_t N = w.cells_per_axis();
  const KernelTable kernel(n, alpha, w.cell_side(), N / 2, quad);
  std::vector<double> out(w.cell_count());
  Index lo(n), hi(n), minus(n), plus(n);
  for (std::size_t cell = 0; cell < out.size(); ++cell) {
    const Index c = w.cell_coords(cell);
    for (int a = 0; a < n; ++a) {
      lo[a] = std::max(c[a] - N + 1, -c[a]);
      hi[a] = std::min(c[a], N - 1 - c[a]);
    }
    double sum = 0.0;
    for_each_index(lo, hi, [&](const Index& j) {
      for (int a = 0; a < n; ++a) {
        minus[a] = c[a] - j[a];
        plus[a] = c[a] + j[a];
      }
      const std::size_t m = linear(minus, N), p = linear(plus, N);
      const double prod = factor(cell, m, p, f[m] * g[p]);
      sum += kernel(j) * prod;
    });
    out[cell] = sum;
  }
  return LatticeFunction(w, std::move(out));
}

}  // namespace

LatticeFunction bilinear_fractional(const LatticeFunction& f, const LatticeFunction& g, double alpha,
                                    const PowerQuadrature& quad) {
  return bilinear_sum(f, g, alpha, quad, [](std::size_t, std::size_t, std::size_t, double prod) { return prod; });
}

double bilinear_fractional_at(const LatticeFunction& f, const LatticeFunction& g, double alpha,
                              std::span<const double> x, const PowerQuadrature& quad) {
  require_same_window(f, g);
  const Window& w = f.window();
  const int n = w.dim();
  require_alpha(alpha, n);
  if (static_cast<int>(x.size()) != n) throw std::invalid_argument("point has the wrong dimension");
  const double h = w.cell_side();
  Box y{std::vector<double>(n), std::vector<double>(n)};
  std::vector<double> mirror(n);
  double sum = 0.0;
  for (std::size_t k = 0; k < w.cell_count(); ++k) {
    if (f[k] == 0.0) continue;
    const auto ck = w.cell_center(k);
    for (int a = 0; a < n; ++a) {
      const double yc = x[a] - ck[a];
      y.lower[a] = yc - 0.5 * h;
      y.upper[a] = yc + 0.5 * h;
      mirror[a] = x[a] + yc;
    }
    const double gv = g.at(mirror);
    if (gv == 0.0) continue;
    sum += power_integral(alpha - n, y, quad) * (f[k] * gv);
  }
  return sum;
}

LatticeFunction multilinear_fractional(const std::vector<LatticeFunction>& fs, const std::vector<double>& thetas,
                                       double alpha, const PowerQuadrature& quad) {
  if (fs.empty() || fs.size() != thetas.size()) throw std::invalid_argument("need one theta per function");
  for (double th : thetas)
    if (th == 0.0 || !std::isfinite(th)) throw std::invalid_argument("theta must be finite and nonzero");
  for (const auto& f : fs) require_same_window(fs.front(), f);
  const Window& w = fs.front().window();
  const int n = w.dim();
  require_alpha(alpha, n);
  const std::int64_t N = w.cells_per_axis();
  double min_theta = kInfinity;
  for (double th : thetas) min_theta = std::min(min_theta, std::abs(th));
  const auto reach = static_cast<std::int64_t>(std::ceil(static_cast<double>(N) / min_theta)) + 1;
  const double h = w.cell_side();
  const KernelTable kernel(n, alpha, h, reach, quad);

  std::vector<double> out(w.cell_count());
  const Index lo(n, -reach), hi(n, reach);
  std::vector<double> point(n);
  for (std::size_t cell = 0; cell < out.size(); ++cell) {
    const auto x = w.cell_center(cell);
    double sum = 0.0;
    for_each_index(lo, hi, [&](const Index& j) {
      double prod = 1.0;
      for (std::size_t l = 0; l < fs.size() && prod != 0.0; ++l) {
        for (int a = 0; a < n; ++a) point[a] = x[a] - thetas[l] * (static_cast<double>(j[a]) * h);
        prod *= fs[l].at(point);
      }
      sum += kernel(j) * prod;
    });
    out[cell] = sum;
  }
  return LatticeFunction(w, std::move(out));
}

LatticeFunction commutator_iterated(const CommutatorSpec& spec, const LatticeFunction& f, const LatticeFunction& g,
                                    double alpha, const PowerQuadrature& quad) {
  spec.validate();
  for (const auto& b : spec.symbols) require_same_window(f, b);
  std::vector<const double*> symbols;
  for (const auto& b : spec.symbols) symbols.push_back(b.values().data());
  return bilinear_sum(f, g, alpha, quad, [&](std::size_t cell, std::size_t m, std::size_t p, double prod) {
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      const double* b = symbols[i];
      prod *= b[cell] - b[spec.slots[i] == 1 ? m : p];
    }
    return prod;
  });
}

namespace {

LatticeFunction times(const LatticeFunction& a, const LatticeFunction& b) {
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] * b[i];
  return LatticeFunction(a.window(), std::move(v));
}

LatticeFunction nested(const CommutatorSpec& spec, int depth, const LatticeFunction& f, const LatticeFunction& g,
                       double alpha, const PowerQuadrature& quad) {
  if (depth == 0) return bilinear_fractional(f, g, alpha, quad);
  const LatticeFunction& b = spec.symbols[depth - 1];
  const LatticeFunction whole = nested(spec, depth - 1, f, g, alpha, quad);
  const LatticeFunction moved = spec.slots[depth - 1] == 1 ? nested(spec, depth - 1, times(b, f), g, alpha, quad)
                                                           : nested(spec, depth - 1, f, times(b, g), alpha, quad);
  std::vector<double> v(whole.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = b[i] * whole[i] - moved[i];
  return LatticeFunction(f.window(), std::move(v));
}

}  // namespace

LatticeFunction commutator_nested(const CommutatorSpec& spec, const LatticeFunction& f, const LatticeFunction& g,
                                  double alpha, const PowerQuadrature& quad) {
  spec.validate();
  for (const auto& b : spec.symbols) require_same_window(f, b);
  return nested(spec, spec.size(), f, g, alpha, quad);
}

LatticeFunction bt_alpha(const LatticeFunction& f, const LatticeFunction& g, double alpha,
                         const PowerQuadrature& quad) {
  const int n = f.window().dim();
  require_alpha(alpha, n);
  return bilinear_fractional(f, g, n - alpha, quad);
}

std::vector<double> centered_radii(const Window& w) {
  std::vector<double> r;
  for (int k = w.level_min() - 1; k <= w.level_max(); ++k) r.push_back(std::ldexp(1.0, k));
  return r;
}

LatticeFunction bh_maximal(const LatticeFunction& f, const LatticeFunction& g) {
  require_same_window(f, g);
  const Window& w = f.window();
  const int n = w.dim();
  const std::int64_t N = w.cells_per_axis();
  const auto radii = centered_radii(w);
  std::vector<double> out(w.cell_count(), 0.0);
  Index lo(n), hi(n), minus(n), plus(n);
  for (std::size_t cell = 0; cell < out.size(); ++cell) {
    const Index c = w.cell_coords(cell);
    double best = 0.0;
    for (double r : radii) {
      // Radius in cells: 1/2 or a positive integer.
      const double R = r / w.cell_side();
      const auto reach = static_cast<std::int64_t>(std::floor(R));
      for (int a = 0; a < n; ++a) {
        lo[a] = std::max(-reach, std::max(c[a] - N + 1, -c[a]));
        hi[a] = std::min(reach, std::min(c[a], N - 1 - c[a]));
      }
      double sum = 0.0;
      for_each_index(lo, hi, [&](const Index& j) {
        double weight = 1.0;
        for (int a = 0; a < n; ++a) {
          minus[a] = c[a] - j[a];
          plus[a] = c[a] + j[a];
          if (static_cast<double>(std::abs(j[a])) == R) weight *= 0.5;
        }
        sum += weight * std::abs(f[linear(minus, N)] * g[linear(plus, N)]);
      });
      best = std::max(best, sum / std::pow(2.0 * R, n));
    }
    out[cell] = best;
  }
  return LatticeFunction(w, std::move(out));
}

}  // namespace morrey
