/// @file fd.hpp
/// @brief Finite-difference stencils on uniform 1-D arrays.
///
/// Interior points use 4th-order centered stencils (exact on quintics), the
/// two cells nearest each end fall back to 2nd-order one-sided formulas.
/// Higher derivatives (3rd/4th) are 2nd-order centered and are used only by
/// diagnostics, never inside time stepping.

#pragma once

#include <cstddef>
#include <vector>

#include "ovallab/core/errors.hpp"

namespace ovallab {

/// d/dx at index i, 4th-order centered; requires 2 <= i <= n-3.
inline double d1_center4(const std::vector<double>& f, size_t i, double h) {
  return (-f[i + 2] + 8.0 * (f[i + 1] - f[i - 1]) + f[i - 2]) / (12.0 * h);
}

/// d2/dx2 at index i, 4th-order centered; requires 2 <= i <= n-3.
inline double d2_center4(const std::vector<double>& f, size_t i, double h) {
  return (-f[i + 2] + 16.0 * (f[i + 1] + f[i - 1]) - 30.0 * f[i] - f[i - 2]) /
         (12.0 * h * h);
}

/// d/dx, 2nd-order centered.
inline double d1_center2(const std::vector<double>& f, size_t i, double h) {
  return (f[i + 1] - f[i - 1]) / (2.0 * h);
}

/// d2/dx2, 2nd-order centered.
inline double d2_center2(const std::vector<double>& f, size_t i, double h) {
  return ((f[i + 1] + f[i - 1]) - 2.0 * f[i]) / (h * h);
}

/// d/dx at the left end (i, i+1, i+2), 2nd order; sign-flip for right end.
inline double d1_forward2(const std::vector<double>& f, size_t i, double h) {
  return (-3.0 * f[i] + 4.0 * f[i + 1] - f[i + 2]) / (2.0 * h);
}

inline double d1_backward2(const std::vector<double>& f, size_t i, double h) {
  return (3.0 * f[i] - 4.0 * f[i - 1] + f[i - 2]) / (2.0 * h);
}

/// d2/dx2 one-sided (needs 4 points), 2nd order.
inline double d2_forward2(const std::vector<double>& f, size_t i, double h) {
  return (2.0 * f[i] - 5.0 * f[i + 1] + 4.0 * f[i + 2] - f[i + 3]) / (h * h);
}

inline double d2_backward2(const std::vector<double>& f, size_t i, double h) {
  return (2.0 * f[i] - 5.0 * f[i - 1] + 4.0 * f[i - 2] - f[i - 3]) / (h * h);
}

/// d3/dx3, 2nd-order centered; requires 2 <= i <= n-3.
inline double d3_center2(const std::vector<double>& f, size_t i, double h) {
  return ((f[i + 2] - f[i - 2]) - 2.0 * (f[i + 1] - f[i - 1])) / (2.0 * h * h * h);
}

/// d4/dx4, 2nd-order centered; requires 2 <= i <= n-3.
inline double d4_center2(const std::vector<double>& f, size_t i, double h) {
  return ((f[i + 2] + f[i - 2]) - 4.0 * (f[i + 1] + f[i - 1]) + 6.0 * f[i]) /
         (h * h * h * h);
}

/// Whole-array first derivative: centered 4th order inside, one-sided 2nd
/// order at the two cells nearest each boundary.  Needs n >= 6.
inline std::vector<double> derivative1(const std::vector<double>& f, double h) {
  const size_t n = f.size();
  require(n >= 6, ErrorKind::invalid_argument,
          "derivative1 needs at least 6 samples");
  std::vector<double> out(n);
  out[0] = d1_forward2(f, 0, h);
  out[1] = d1_center2(f, 1, h);
  for (size_t i = 2; i + 2 < n; ++i) out[i] = d1_center4(f, i, h);
  out[n - 2] = d1_center2(f, n - 2, h);
  out[n - 1] = d1_backward2(f, n - 1, h);
  return out;
}

/// Whole-array second derivative with the same interior/boundary policy.
inline std::vector<double> derivative2(const std::vector<double>& f, double h) {
  const size_t n = f.size();
  require(n >= 6, ErrorKind::invalid_argument,
          "derivative2 needs at least 6 samples");
  std::vector<double> out(n);
  out[0] = d2_forward2(f, 0, h);
  out[1] = d2_center2(f, 1, h);
  for (size_t i = 2; i + 2 < n; ++i) out[i] = d2_center4(f, i, h);
  out[n - 2] = d2_center2(f, n - 2, h);
  out[n - 1] = d2_backward2(f, n - 1, h);
  return out;
}

}  // namespace ovallab
