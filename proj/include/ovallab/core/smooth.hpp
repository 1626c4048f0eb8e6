/// @file smooth.hpp
/// @brief C-infinity transition function used by all cutoffs and blends.

#pragma once

#include <cmath>

namespace ovallab {

/// Smooth monotone step: exactly 0 for t <= 0, exactly 1 for t >= 1,
/// C-infinity in between (classic exp(-1/t) partition construction).
inline double smooth01(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

}  // namespace ovallab
