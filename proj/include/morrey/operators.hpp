#pragma once

#include <span>
#include <vector>

#include "morrey/field.hpp"

namespace morrey {

// Symbols b_1..b_N of an iterated commutator and the argument slot (1 or 2)
// each one acts on.
struct CommutatorSpec {
  std::vector<LatticeFunction> symbols;
  std::vector<int> slots;

  int size() const { return static_cast<int>(symbols.size()); }
  // Number of symbols acting on the first argument.
  int first_slot_count() const;
  void validate() const;
};

// B_alpha(f, g)(x) = int f(x - y) g(x + y) |y|^{alpha - n} dy at every cell
// center.  The y-integral is split into cells centered at the lattice nodes
// j h, so x -/+ y lands on cell centers; each kernel weight is the exact
// integral of |y|^{alpha-n} over its y-cell.  Samples outside the window
// are zero.
LatticeFunction bilinear_fractional(const LatticeFunction& f, const LatticeFunction& g, double alpha,
                                    const PowerQuadrature& quad = {});

// B_alpha(f, g) at an arbitrary point, with y-cells chosen so that every
// x - y sample is a cell center of f.  At x = 0 on a window symmetric about
// the origin the quadrature is exact for piecewise constant data.
double bilinear_fractional_at(const LatticeFunction& f, const LatticeFunction& g, double alpha,
                              std::span<const double> x, const PowerQuadrature& quad = {});

// I_{alpha,k}(f_1..f_k)(x) = int prod f_l(x - theta_l y) |y|^{alpha-n} dy on
// the same y-cells; samples are looked up by the cell containing them.
LatticeFunction multilinear_fractional(const std::vector<LatticeFunction>& fs, const std::vector<double>& thetas,
                                       double alpha, const PowerQuadrature& quad = {});

// Product form: the integrand carries prod (b_i(x) - b_i(x -/+ y)).
LatticeFunction commutator_iterated(const CommutatorSpec& spec, const LatticeFunction& f, const LatticeFunction& g,
                                    double alpha, const PowerQuadrature& quad = {});
// Recursive form [b, T]_1(f, g) = b T(f, g) - T(b f, g), [b, T]_2 likewise
// in the second slot.  Costs 2^N evaluations of B_alpha.
LatticeFunction commutator_nested(const CommutatorSpec& spec, const LatticeFunction& f, const LatticeFunction& g,
                                  double alpha, const PowerQuadrature& quad = {});

// B_{n - alpha}.
LatticeFunction bt_alpha(const LatticeFunction& f, const LatticeFunction& g, double alpha,
                         const PowerQuadrature& quad = {});

// Radii 2^{level_min - 1}, ..., 2^{level_max} used by the centered sups.
std::vector<double> centered_radii(const Window& w);

// BH(f, g)(x) = max over centered_radii of (2r)^{-n} int_{[-r,r]^n}
// |f(x - y) g(x + y)| dy, exact for piecewise constant data.
LatticeFunction bh_maximal(const LatticeFunction& f, const LatticeFunction& g);

}  // namespace morrey
