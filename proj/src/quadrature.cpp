#include "morrey/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace morrey {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr std::array<double, 8> kNodes = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                          -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                          0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kWeights = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                            0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                            0.2223810344533745, 0.1012285362903763};

// Integral of x^gamma over [lo, hi) with 0 <= lo < hi.
double half_line(double gamma, double lo, double hi) {
  const double c = gamma + 1.0;
  if (lo == 0.0) {
    if (c <= 0.0) return kInf;
    return std::pow(hi, c) / c;
  }
  const double rel = std::log1p((hi - lo) / lo);
  if (c == 0.0) return rel;
  return std::pow(lo, c) * std::expm1(c * rel) / c;
}

double line_integral(double gamma, double a, double b) {
  if (!(b > a)) return 0.0;
  if (a >= 0.0) return half_line(gamma, a, b);
  if (b <= 0.0) return half_line(gamma, -b, -a);
  return half_line(gamma, 0.0, b) + half_line(gamma, 0.0, -a);
}

struct Orthant {
  double gamma;
  int n;
  int max_depth;

  double gauss(const std::vector<double>& lo, const std::vector<double>& hi) const {
    std::vector<int> idx(n, 0);
    double total = 0.0;
    double jac = 1.0;
    for (int a = 0; a < n; ++a) jac *= 0.5 * (hi[a] - lo[a]);
    while (true) {
      double r2 = 0.0, w = 1.0;
      for (int a = 0; a < n; ++a) {
        const double x = 0.5 * (lo[a] + hi[a]) + 0.5 * (hi[a] - lo[a]) * kNodes[idx[a]];
        r2 += x * x;
        w *= kWeights[idx[a]];
      }
      total += w * std::pow(r2, 0.5 * gamma);
      int a = n - 1;
      while (a >= 0 && ++idx[a] == 8) {
        idx[a] = 0;
        --a;
      }
      if (a < 0) break;
    }
    return total * jac;
  }

  // Box inside the closed positive orthant.
  double integrate(const std::vector<double>& lo, const std::vector<double>& hi, int depth) const {
    bool corner = true;
    double dist2 = 0.0, diam2 = 0.0;
    for (int a = 0; a < n; ++a) {
      corner = corner && lo[a] == 0.0;
      dist2 += lo[a] * lo[a];
      diam2 += (hi[a] - lo[a]) * (hi[a] - lo[a]);
    }
    if (!corner && (dist2 >= diam2 || depth >= max_depth)) return gauss(lo, hi);
    if (corner && gamma <= -n) return kInf;

    // Split into 2^n halves; with a corner at the origin the corner child is
    // a half-scale copy, so I = S + 2^{-(n+gamma)} I.
    double rest = 0.0;
    std::vector<double> clo(n), chi(n);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (corner && mask == 0) continue;
      for (int a = 0; a < n; ++a) {
        const double mid = 0.5 * (lo[a] + hi[a]);
        const bool upper = (mask >> a) & 1u;
        clo[a] = upper ? mid : lo[a];
        chi[a] = upper ? hi[a] : mid;
      }
      rest += integrate(clo, chi, depth + 1);
    }
    if (!corner) return rest;
    return rest / (1.0 - std::exp2(-(n + gamma)));
  }
};

}  // namespace

double power_integral(double gamma, const Box& b, const PowerQuadrature& opts) {
  const int n = b.dim();
  if (b.empty()) return 0.0;
  if (n == 1) return line_integral(gamma, b.lower[0], b.upper[0]);

  // |x| is invariant under axis reflections: fold each orthant piece into
  // the positive orthant.
  Orthant o{gamma, n, opts.depth};
  double total = 0.0;
  std::vector<double> lo(n), hi(n);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    bool empty = false;
    for (int a = 0; a < n && !empty; ++a) {
      const bool negative = (mask >> a) & 1u;
      if (negative) {
        lo[a] = std::max(0.0, -b.upper[a]);
        hi[a] = -b.lower[a];
      } else {
        lo[a] = std::max(0.0, b.lower[a]);
        hi[a] = b.upper[a];
      }
      empty = !(hi[a] > lo[a]);
    }
    if (!empty) total += o.integrate(lo, hi, 0);
  }
  return total;
}

double conjugate(double x) {
  if (x == 1.0) return kInf;
  if (std::isinf(x)) return 1.0;
  return x / (x - 1.0);
}

}  // namespace morrey
