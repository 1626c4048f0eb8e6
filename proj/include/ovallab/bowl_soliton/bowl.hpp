/// @file bowl.hpp
/// @brief The rotationally symmetric translating bowl profile.
///
/// The profile Z(rho) (Z <= 0, Z(0) = Z'(0) = 0) solves
///
///     Z'' / (1 + Z'^2) + m Z' / rho + 1/sqrt(2) = 0,
///
/// the graph equation of the m+1 dimensional translating bowl soliton with
/// unit downward speed 1/sqrt(2).  Near the axis  Z = -rho^2/(2 sqrt2 (m+1))
/// + O(rho^4);  far out  Z = -rho^2/(2 sqrt2 m) + O(log rho).  The solver
/// integrates from a quartic series launch with an embedded adaptive
/// Runge–Kutta pair and records the solution on a uniform grid so that the
/// residual can be checked by high-order finite differences.

#pragma once

#include <vector>

#include "ovallab/core/interp.hpp"

namespace ovallab {

struct BowlProfile {
  int m = 1;                ///< rotational dimension (>= 1)
  double rho_max = 0.0;     ///< domain end
  double drho = 0.0;        ///< uniform sample spacing
  std::vector<double> rho;  ///< 0 = rho_0 < rho_1 < ... <= rho_max (uniform)
  std::vector<double> z;    ///< profile values, z[0] = 0, strictly decreasing
  std::vector<double> zp;   ///< slope values, zp[0] = 0
};

/// Integrates the profile to rho_max (>= 1) at tolerance tol (within
/// [1e-12, 1e-6]); violations throw LabError(invalid_argument).  A step
/// collapse inside the adaptive integrator throws
/// LabError(integration_failure).
BowlProfile solve_bowl(int m, double rho_max, double tol = 1e-10);

enum class BowlWindow { near_field, far_field };

/// Least-squares fit over a window of the profile; the reported coefficient
/// is always the leading rho^2 one:
///   near_field: z ~ c2 rho^2 + c4 rho^4          on rho <= 0.1
///   far_field:  z ~ c2 rho^2 + c_log log(rho) + c0   on rho >= rho_max / 2
/// Each window carries a nuisance term (rho^4 near, log rho far) absorbing
/// the next order of the expansion, so c2 converges to the leading
/// coefficient instead of inheriting an O(window^2) bias.
/// Throws LabError(invalid_argument) when the window holds no samples.
struct BowlFit {
  BowlWindow window = BowlWindow::near_field;
  double c2 = 0.0;     ///< leading quadratic coefficient
  double c4 = 0.0;     ///< near-field quartic nuisance term (0 for far fits)
  double c_log = 0.0;  ///< far-field log coefficient (0 for near fits)
  double c0 = 0.0;     ///< far-field constant (0 for near fits)
  double rms = 0.0;    ///< fit residual, root mean square
  int n_samples = 0;
};
BowlFit bowl_fit(const BowlProfile& profile, BowlWindow window);

/// Interpolating evaluator over a solved profile (build once, eval often).
/// z uses a cubic Hermite with the integrator's own slopes (O(h^4), slope
/// exact at nodes); zp uses the shape-preserving monotone cubic.
class BowlEval {
 public:
  explicit BowlEval(const BowlProfile& profile);
  double z(double rho) const { return z_.eval(rho); }
  double zp(double rho) const { return zp_.eval(rho); }
  /// Derivative of the z interpolant (for consistency audits).
  double z_deriv(double rho) const { return z_.deriv(rho); }
  double rho_max() const { return z_.x_max(); }

 private:
  HermiteSpline z_;
  MonotoneCubic zp_;
};

/// One-shot convenience wrapper around BowlEval.
struct BowlPoint {
  double z = 0.0, zp = 0.0;
};
BowlPoint bowl_eval(const BowlProfile& profile, double rho);

}  // namespace ovallab
