/// @file interp.hpp
/// @brief Monotone cubic (Fritsch–Carlson) interpolation and inversion.
///
/// The flow charts exchange boundary data through interpolants of strictly
/// monotone profiles, so the interpolation must preserve monotonicity: a
/// plain cubic spline can overshoot and hand one chart a non-invertible
/// profile.  Fritsch–Carlson limited slopes guarantee monotone segments at
/// O(h^3)–O(h^4) accuracy, which is below the flow's discretization error.

#pragma once

#include <vector>

namespace ovallab {

class MonotoneCubic {
 public:
  MonotoneCubic() = default;

  /// Builds the interpolant.  `x` must be strictly increasing with >= 2
  /// samples; throws LabError(invalid_argument) otherwise.  `y` may be any
  /// data; monotone runs of `y` produce monotone segments.
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  /// Value at `t`.  Throws LabError(out_of_domain) outside [x.front, x.back]
  /// beyond a 1e-12 relative slack.
  double eval(double t) const;

  /// First derivative at `t` (same domain rule).
  double deriv(double t) const;

  /// Solves eval(t) = target on a strictly monotone data set.
  /// Throws LabError(invalid_argument) when the data are not strictly
  /// monotone or the target lies outside the data range.
  double solve(double target) const;

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }
  bool strictly_increasing() const;
  bool strictly_decreasing() const;

 private:
  int interval_of(double t) const;
  std::vector<double> x_, y_, m_;  // nodes, values, limited slopes
};

/// Cubic Hermite interpolant with caller-supplied slopes.  When the slopes
/// come from the same integrator that produced the values, the interpolant
/// is O(h^4) accurate and its derivative matches the slope samples exactly
/// at the nodes — tighter than any slope-estimating scheme can be.
class HermiteSpline {
 public:
  HermiteSpline() = default;
  HermiteSpline(std::vector<double> x, std::vector<double> y,
                std::vector<double> slope);
  double eval(double t) const;
  double deriv(double t) const;
  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }

 private:
  int interval_of(double t) const;
  std::vector<double> x_, y_, m_;
};

/// Linear interpolation between tabulated (x ascending, y) samples; clamps at
/// the ends.  Used where C^1 smoothness is not needed (e.g. time lookup).
double lerp_table(const std::vector<double>& x, const std::vector<double>& y,
                  double t);

}  // namespace ovallab
