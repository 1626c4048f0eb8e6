#include "ovallab/core/params.hpp"

#include <cmath>
#include <string>

#include "ovallab/core/errors.hpp"

namespace ovallab {

CylinderParams make_cylinder_params(int n, int k, double theta, double big_l) {
  require(k >= 1 && k <= n - 1, ErrorKind::invalid_argument,
          "cylinder params need 1 <= k <= n-1, got n=" + std::to_string(n) +
              " k=" + std::to_string(k));
  CylinderParams p;
  p.n = n;
  p.k = k;
  p.radius = std::sqrt(2.0 * (n - k));
  p.beta = p.radius / 4.0;
  require(theta > 0.0 && theta < p.radius / 4.0, ErrorKind::invalid_argument,
          "theta must lie in (0, radius/4) = (0, " + std::to_string(p.radius / 4.0) +
              "), got " + std::to_string(theta));
  require(big_l >= 1.0, ErrorKind::invalid_argument,
          "big_l must be >= 1, got " + std::to_string(big_l));
  p.theta = theta;
  p.big_l = big_l;
  return p;
}

CylinderParams default_cylinder_params(int n, int k) {
  const double radius = std::sqrt(2.0 * (n - k));
  return make_cylinder_params(n, k, 0.1 * radius, 10.0);
}

}  // namespace ovallab
