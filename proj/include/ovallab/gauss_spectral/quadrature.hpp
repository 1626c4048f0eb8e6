/// @file quadrature.hpp
/// @brief Gaussian-weight quadrature rules for the weighted L^2 pairing.
///
/// The working inner product is  <f, g> = integral f g exp(-|y|^2/4) dy  over
/// R^k (k = 1 or 2).  Rules are Gauss–Hermite rules mapped from the classical
/// weight exp(-x^2) by y = 2x, built with the Golub–Welsch eigenvalue method;
/// an order-q rule per axis integrates polynomials up to degree 2q-1 exactly.
/// Nodes/weights are symmetrized so that the rule is exactly even in y.

#pragma once

#include <vector>

namespace ovallab {

struct QuadratureRule {
  int dim = 1;    ///< 1 or 2; dim 2 is the tensor product of the 1-D rule
  int order = 0;  ///< nodes per axis
  int degree = 0; ///< per-axis polynomial exactness, 2*order - 1
  std::vector<double> nodes;   ///< per-axis nodes, ascending, exactly odd-symmetric
  std::vector<double> weights; ///< per-axis weights (include the y = 2x Jacobian)
};

/// Builds the rule.  Preconditions: dim in {1, 2}, order >= 4; violations
/// throw LabError(invalid_argument).  Postcondition (tested): the weights sum
/// to (2 sqrt(pi))^dim within 1e-12 relative.
QuadratureRule build_quadrature(int dim, int order);

/// Radial companion rule: sum_i w_i f(r_i) equals the full R^k integral of
/// the radial function f(|y|) against exp(-|y|^2/4).  k = 1 folds the 1-D
/// Hermite rule onto r >= 0; k = 2 maps to a Gauss–Laguerre rule through
/// u = r^2/4.  Used by the flow's cheap per-step spectral projections.
struct RadialRule {
  int k = 1;
  std::vector<double> r, w;
};
RadialRule build_radial_rule(int k, int order);

/// Surface measure |S^{k-1}| of the unit sphere in R^k (k >= 1).
double sphere_surface(int k);

}  // namespace ovallab
