#include <doctest.h>

#include <cmath>

#include "morrey/quadrature.hpp"
#include "oracle.hpp"

using namespace morrey;

namespace {

// Composite midpoint rule on a fine grid, for boxes away from the origin.
double midpoint_2d(double gamma, const Box& b, int m) {
  const double hx = (b.upper[0] - b.lower[0]) / m, hy = (b.upper[1] - b.lower[1]) / m;
  double s = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double x = b.lower[0] + (i + 0.5) * hx, y = b.lower[1] + (j + 0.5) * hy;
      s += std::pow(x * x + y * y, gamma / 2);
    }
  return s * hx * hy;
}

}  // namespace

TEST_CASE("one-dimensional integrals are closed form") {
  for (double g : {-0.9, -0.5, 0.0, 0.3, 2.0})
    for (auto [a, b] : {std::pair{-1.0, 1.0}, {0.25, 0.5}, {-0.5, -0.125}, {-0.25, 0.75}}) {
      const double got = power_integral(g, Box{{a}, {b}});
      CHECK(got == doctest::Approx(oracle::power_integral_1d(g, a, b)).epsilon(1e-13));
    }
}

TEST_CASE("integrals touching the origin diverge at gamma <= -n") {
  CHECK(std::isinf(power_integral(-1.0, Box{{0.0}, {1.0}})));
  CHECK(std::isinf(power_integral(-2.0, Box{{-1.0, -1.0}, {1.0, 1.0}})));
  CHECK(std::isfinite(power_integral(-2.0, Box{{0.5, 0.5}, {1.0, 1.0}})));
  CHECK(std::isfinite(power_integral(-1.9, Box{{0.0, 0.0}, {1.0, 1.0}})));
}

TEST_CASE("two-dimensional boxes away from the origin match a fine midpoint rule") {
  for (double g : {-1.5, -0.5, 0.7}) {
    const Box b{{0.25, -0.5}, {0.5, -0.25}};
    CHECK(power_integral(g, b) == doctest::Approx(midpoint_2d(g, b, 2000)).epsilon(1e-6));
  }
}

TEST_CASE("origin-corner boxes follow the scaling identity") {
  // int_{[0,1]^2} |x|^g = 2 int_0^{pi/4} int_0^{sec t} r^{g+1} dr dt, done here
  // with a fine midpoint rule on the angle.
  for (double g : {-1.5, -1.0, 0.5}) {
    const int m = 200000;
    double s = 0;
    for (int i = 0; i < m; ++i) {
      const double t = (i + 0.5) * (M_PI / 4) / m;
      s += std::pow(1.0 / std::cos(t), g + 2) / (g + 2);
    }
    s *= 2 * (M_PI / 4) / m;
    CHECK(power_integral(g, Box{{0, 0}, {1, 1}}) == doctest::Approx(s).epsilon(1e-8));
    // Dilation by 1/2 scales by 2^{-(g+2)}.
    CHECK(power_integral(g, Box{{0, 0}, {0.5, 0.5}}) == doctest::Approx(s * std::exp2(-(g + 2))).epsilon(1e-8));
  }
}

TEST_CASE("symmetric box splits into orthants") {
  const double whole = power_integral(-1.2, Box{{-0.5, -0.5}, {0.5, 0.5}});
  const double corner = power_integral(-1.2, Box{{0, 0}, {0.5, 0.5}});
  CHECK(whole == doctest::Approx(4 * corner).epsilon(1e-12));
  const double off = power_integral(-1.2, Box{{-0.25, 0.0}, {0.5, 0.5}});
  CHECK(off == doctest::Approx(power_integral(-1.2, Box{{0, 0}, {0.25, 0.5}}) +
                               power_integral(-1.2, Box{{0, 0}, {0.5, 0.5}}))
                   .epsilon(1e-10));
}

TEST_CASE("conjugate exponents") {
  CHECK(conjugate(2.0) == 2.0);
  CHECK(conjugate(1.5) == doctest::Approx(3.0));
  CHECK(std::isinf(conjugate(1.0)));
  CHECK(conjugate(INFINITY) == 1.0);
}
