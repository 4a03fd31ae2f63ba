#pragma once

#include <string>
#include <vector>

#include "morrey/exponents.hpp"
#include "morrey/field.hpp"

namespace morrey {

// Stopping-time family for the functional
//   F(Q) = |Q|^{alpha/n} (fint_{3Q} |f|^e1)^{1/e1} (fint_{3Q} |g|^e2)^{1/e2}
// (3Q clipped to the window): D_k is the union of dyadic subcubes of base
// with F > gamma factor^k, levels[k-1] its maximal cubes.
struct Decomposition {
  Cube base;
  double gamma = 0.0;
  double factor = 1.0;
  double e1 = 1.0, e2 = 1.0, alpha = 0.0;
  std::vector<std::vector<Cube>> levels;
  // Cells of base outside D_1.
  std::vector<std::size_t> e0;
  // exceptional[k-1][j]: cells of levels[k-1][j] outside D_{k+1}.
  std::vector<std::vector<std::vector<std::size_t>>> exceptional;
  // Set when the level loop stopped at the safety cap instead of emptying.
  bool capped = false;
};

// gamma = F(Q0) with alpha = 0, factor (4 18^n)^{1/theta1 + 1/theta2}.
Decomposition cz_decompose(const LatticeFunction& f, const LatticeFunction& g, const Cube& q0, double theta1,
                           double theta2);
// gamma = F(Q0) including |Q0|^{alpha/n}, factor (4 18^n)^{1/r1 + 1/r2}.
Decomposition cz_decompose_alpha(const LatticeFunction& f, const LatticeFunction& g, const Cube& q0, double r1,
                                 double r2, double alpha);

// Re-derives F by direct overlap averaging and returns one message per
// broken invariant (sandwich, measure, partition, maximality, nesting).
std::vector<std::string> check_decomposition(const Decomposition& d, const LatticeFunction& f,
                                             const LatticeFunction& g);

std::string decomposition_json(const Decomposition& d, const Window& w);

// The extremal pair f = chi_{Q'} w1^{-q1/(q1-r1)}, g likewise, with
// lambda = |Q'|^{alpha/n} (fint_{Q'} f^r1)^{1/r1} (fint_{Q'} g^r2)^{1/r2} / 2.
struct NecessityPair {
  LatticeFunction f;
  LatticeFunction g;
  double lambda;
};
NecessityPair necessity_pair(const Weight& w1, const Weight& w2, const Cube& qp, const ExponentSet& e);

}  // namespace morrey
