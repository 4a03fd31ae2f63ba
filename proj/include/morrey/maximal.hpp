#pragma once

#include "morrey/field.hpp"

namespace morrey {

enum class MaximalMode { Dyadic, Centered };

// M_{alpha,R}(f, g)(x) = sup |Q|^{alpha/n} (fint_Q |f|^r1)^{1/r1}
// (fint_Q |g|^r2)^{1/r2}.  Dyadic mode takes the window cubes containing
// x.  Centered mode takes the cubes centered at x with the radii of
// centered_radii and normalizes by the full (2r)^n, counting the part
// outside the window as zero, so that BH <= M holds exactly by Hoelder.
// r_i = inf means the max of |f| on Q.
LatticeFunction m_alpha_r(const LatticeFunction& f, const LatticeFunction& g, double alpha, double r1, double r2,
                          MaximalMode mode = MaximalMode::Dyadic);

// Dyadic sup of (fint_Q |f|^theta)^{1/theta}.
LatticeFunction m_theta(const LatticeFunction& f, double theta);

// sup over dyadic Q containing x of |Q|^{alpha/n} (fint_{3Q} |f|^rho1)^{1/rho1}
// (fint_{3Q} |g|^rho2)^{1/rho2} (fint_Q v^e)^{1/e}; e = inf uses sup_Q v.
// 3Q is clipped to the window and normalized by the clipped volume.
LatticeFunction m_joint_weighted(const LatticeFunction& f, const LatticeFunction& g, const Weight& v, double alpha,
                                 double rho1, double rho2, double v_exp);

// Per-cube values of |Q|^{alpha/n} (fint_Q |f|^r1)^{1/r1} (fint_Q |g|^r2)^{1/r2}
// over all window cubes; entry layout as CubeTable.
CubeTable cube_products(const LatticeFunction& f, const LatticeFunction& g, double alpha, double r1, double r2);

// For every cube, the max of a cube table over the cube and its ancestors.
CubeTable ancestor_max(const Window& w, const CubeTable& table);
// Per cell, the max of a cube table over the cubes containing the cell.
LatticeFunction sup_over_containing(const Window& w, const CubeTable& table);

// (fint_Q |f|^e)^{1/e} for every window cube; e = inf gives the max.
CubeTable cube_power_means(const LatticeFunction& f, double e);

// 0 * inf is taken as 0: a factor that vanishes on the cube wins.
double guarded_product(double a, double b);

}  // namespace morrey
