/// @file params.hpp
/// @brief Geometry parameters of the rescaled cylinder and derived constants.

#pragma once

#include <cmath>

namespace ovallab {

/// Parameters of a cylindrical configuration R^k x S^{n-k}.
///
/// Invariants (enforced by make_cylinder_params):
///   * 1 <= k <= n - 1
///   * 0 < theta < radius / 4      where radius = sqrt(2 (n - k))
///   * big_l >= 1
///
/// Derived constants:
///   * radius = sqrt(2 (n - k)),  the rescaled cylinder radius
///   * beta   = radius / 4,       the quadratic-decay rate constant
struct CylinderParams {
  int n = 2;          ///< ambient dimension minus one (hypersurface in R^{n+1})
  int k = 1;          ///< number of flat directions
  double theta = 0.1; ///< cylindrical/tip region threshold
  double big_l = 10;  ///< collar inner-scale constant (>= 1)

  double radius = 0;  ///< derived: sqrt(2 (n - k))
  double beta = 0;    ///< derived: radius / 4

  int m() const { return n - k; }  ///< rotational symmetry dimension of the tip
};

/// Validates invariants, fills the derived fields, and returns the result.
/// Throws LabError(invalid_argument) on violation.
CylinderParams make_cylinder_params(int n, int k, double theta, double big_l);

/// Convenience: theta = 0.1 * radius, big_l = 10 (a safe default geometry).
CylinderParams default_cylinder_params(int n, int k);

}  // namespace ovallab
