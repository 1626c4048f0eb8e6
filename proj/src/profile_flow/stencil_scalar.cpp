/// @file stencil_scalar.cpp
/// @brief Portable row kernel of the grid2d sweep.
///
/// Per-node operation sequence (shared verbatim with the AVX2 kernel; the
/// groupings are what make mirrored inputs give bit-mirrored outputs):
///
///   sx  = (m[i+1] + m[i-1]),  sy  = (a[i] + b[i])
///   vx  = (m[i+1] - m[i-1]) / 2h,  vy = (a[i] - b[i]) / 2h
///   vxx = (sx - 2 m[i]) / h^2,     vyy = (sy - 2 m[i]) / h^2
///   vxy = ((a[i+1] - a[i-1]) - (b[i+1] - b[i-1])) / 4h^2
///   quad = (vx*vx)*vxx + (2 vx*vy)*vxy + (vy*vy)*vyy
///   rhs  = (vxx + vyy) - quad / (1 + (vx*vx + vy*vy))
///          - 0.5 * (x*vx + y*vy) + 0.5 * m[i] - (n-k) / m[i]
///
/// where a = row above, b = row below, m = mid row.  This tandem must not
/// drift: any change here must be mirrored in stencil_avx2.cpp.

#include "ovallab/profile_flow/stencil.hpp"

namespace ovallab::flow {

void stencil_row_rhs_scalar(const StencilRowArgs& a, double* out) {
  const double inv_h2 = 1.0 / (a.h * a.h);
  const double inv_2h = 1.0 / (2.0 * a.h);
  const double inv_4h2 = 0.25 * inv_h2;
  const double nk = a.n_minus_k;
  const double y = a.y;
  for (int i = a.i0; i <= a.i1; ++i) {
    const double m0 = a.row_mid[i];
    const double sx = a.row_mid[i + 1] + a.row_mid[i - 1];
    const double sy = a.row_above[i] + a.row_below[i];
    const double vx = (a.row_mid[i + 1] - a.row_mid[i - 1]) * inv_2h;
    const double vy = (a.row_above[i] - a.row_below[i]) * inv_2h;
    const double vxx = (sx - 2.0 * m0) * inv_h2;
    const double vyy = (sy - 2.0 * m0) * inv_h2;
    const double vxy = ((a.row_above[i + 1] - a.row_above[i - 1]) -
                        (a.row_below[i + 1] - a.row_below[i - 1])) *
                       inv_4h2;
    const double vx2 = vx * vx;
    const double vy2 = vy * vy;
    const double g = 1.0 + (vx2 + vy2);
    const double quad = vx2 * vxx + (2.0 * vx) * vy * vxy + vy2 * vyy;
    const double x = static_cast<double>(i - a.i_center) * a.h;
    const double adv = x * vx + y * vy;
    out[i] = (vxx + vyy) - quad / g - 0.5 * adv + 0.5 * m0 - nk / m0;
  }
}

}  // namespace ovallab::flow
