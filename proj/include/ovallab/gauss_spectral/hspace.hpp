/// @file hspace.hpp
/// @brief Weighted L^2 pairing, the Ornstein–Uhlenbeck operator, and the
///        low-mode spectral projections used throughout the lab.
///
/// The ambient Hilbert space is L^2(R^k, exp(-|y|^2/4) dy), k = 1 or 2.
/// The linearized drift operator is  L f = Lap f - y . grad f / 2 + f, whose
/// nonnegative spectrum is spanned by
///     1 (eigenvalue 1),  y_i (1/2),  y_i^2 - 2 and y_i y_j (0).
/// project_modes returns the coefficients on exactly that basis, with the
/// neutral quadratic part reported as a symmetric k x k matrix against the
/// basis  psi_ii = y_i^2 - 2,  psi_ij = 2 y_i y_j (i != j).

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <vector>

#include "ovallab/core/params.hpp"
#include "ovallab/gauss_spectral/quadrature.hpp"

namespace ovallab {

/// A scalar function on R^dim (dim = 1 or 2), evaluable anywhere.
struct FieldFn {
  int dim = 1;
  std::function<double(double)> f1;
  std::function<double(double, double)> f2;

  static FieldFn of1(std::function<double(double)> f) {
    FieldFn v;
    v.dim = 1;
    v.f1 = std::move(f);
    return v;
  }
  static FieldFn of2(std::function<double(double, double)> f) {
    FieldFn v;
    v.dim = 2;
    v.f2 = std::move(f);
    return v;
  }
  /// Radial lift: f(|y|) in dimension `dim`.
  static FieldFn radial(int dim, std::function<double(double)> f);
};

/// Uniformly sampled function on an interval / square (row-major).
struct UniformGrid1D {
  double lo = 0.0, h = 1.0;
  std::vector<double> v;
  int n() const { return static_cast<int>(v.size()); }
  double x(int i) const { return lo + i * h; }
};

struct UniformGrid2D {
  double lo1 = 0.0, lo2 = 0.0, h = 1.0;
  int n1 = 0, n2 = 0;
  std::vector<double> v;  ///< row-major: v[i1 * n2 + i2]
  double x1(int i) const { return lo1 + i * h; }
  double x2(int j) const { return lo2 + j * h; }
  double& at(int i, int j) { return v[static_cast<size_t>(i) * n2 + j]; }
  double at(int i, int j) const { return v[static_cast<size_t>(i) * n2 + j]; }
};

UniformGrid1D sample1(const std::function<double(double)>& f, double lo,
                      double hi, int n);
UniformGrid2D sample2(const std::function<double(double, double)>& f, double lo,
                      double hi, int n);

/// Weighted pairing <f, g> by quadrature; f, g, rule dims must agree.
double inner_h(const FieldFn& f, const FieldFn& g, const QuadratureRule& rule);
double norm_h(const FieldFn& f, const QuadratureRule& rule);

/// Graph norm sqrt(norm_h(f)^2 + norm_h(|Df|)^2); the gradient is taken by
/// centered finite differences of step fd_h at each quadrature node.
double norm_d(const FieldFn& f, const QuadratureRule& rule, double fd_h = 1e-4);

/// L f = Lap f - y . grad f / 2 + f on a sampled grid (>= 5 points per axis;
/// 4th-order centered stencils inside, 2nd-order one-sided at the ends).
UniformGrid1D ou_apply(const UniformGrid1D& f);
UniformGrid2D ou_apply(const UniformGrid2D& f);

/// Coefficients of a near-cylinder profile on the nonnegative modes.
struct SpectralCoeffMatrix {
  Eigen::MatrixXd a;    ///< k x k symmetric neutral-mode matrix
  Eigen::VectorXd pos;  ///< k+1 positive-mode coefficients: (1, y_1 .. y_k)
  double tau = std::numeric_limits<double>::quiet_NaN();
};

/// Projects v_c - radius onto the nonnegative modes (see file header).
/// rule.dim must equal params.k.
SpectralCoeffMatrix project_modes(
    const FieldFn& v_c, const CylinderParams& params, const QuadratureRule& rule,
    double tau = std::numeric_limits<double>::quiet_NaN());

/// Diagonal neutral-mode shares (<v_c, y_j^2 - 2> / <v_c, |y|^2 - 2k>)_j.
/// Throws LabError(degenerate_ratio) when the denominator is below
/// 1e-12 * norm_h(v_c).
Eigen::VectorXd spectral_ratio(const FieldFn& v_c, const CylinderParams& params,
                               const QuadratureRule& rule);

/// Quadratic-profile deviation at reference time tau0 < 0:
///   |tau0| * norm_h( v_c - radius + radius (|y|^2 - 2k) / (4 |tau0|) ).
double kappa_of(const FieldFn& v_c, const CylinderParams& params, double tau0,
                const QuadratureRule& rule);

/// Weighted Poincare quotient norm_h((1+|y|) f) / (norm_h(f) + norm_h(|Df|)).
/// Throws LabError(invalid_argument) when the denominator vanishes.
double poincare_ratio(const FieldFn& f, const QuadratureRule& rule,
                      double fd_h = 1e-4);

}  // namespace ovallab
