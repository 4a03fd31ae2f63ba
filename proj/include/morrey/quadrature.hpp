#pragma once

#include "morrey/dyadic.hpp"

namespace morrey {

struct PowerQuadrature {
  // Maximum subdivision depth for boxes close to (but not touching) the
  // origin.  Boxes with a corner at the origin are closed analytically via
  // the scaling identity and do not consume depth.
  int depth = 12;
};

// Integral of |x|^gamma (Euclidean norm) over a box.  Exact in one
// dimension; tensor Gauss-Legendre with adaptive splitting otherwise.
// Returns +inf when the box touches the origin and gamma <= -n.
double power_integral(double gamma, const Box& b, const PowerQuadrature& opts = {});

// Conjugate exponent x/(x-1); +inf at x = 1.
double conjugate(double x);

}  // namespace morrey
