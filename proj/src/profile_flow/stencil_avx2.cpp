/// @file stencil_avx2.cpp
/// @brief AVX2+FMA row kernel of the grid2d sweep.
///
/// Lane-for-lane the same operation sequence as stencil_scalar.cpp.  The
/// only deviations are three fused contractions (the two quad accumulations
/// and the advection term); every other fused-looking op multiplies by an
/// exact power of two and therefore rounds identically to the scalar
/// two-step.  The scalar remainder loop below replicates the fused pattern
/// with std::fma so that a node's value does not depend on whether it fell
/// in the vector body or the tail.  This TU is compiled with -mavx2 -mfma;
/// only the dispatcher may call into it.

#include <immintrin.h>

#include <cmath>

#include "ovallab/profile_flow/stencil.hpp"

namespace ovallab::flow {

namespace {

/// One node with the exact contraction pattern of the vector body.
inline double node_rhs_fused(const StencilRowArgs& a, int i, double inv_2h,
                             double inv_h2, double inv_4h2) {
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
  const double quad =
      std::fma(vx2, vxx, std::fma((2.0 * vx) * vy, vxy, vy2 * vyy));
  const double x = static_cast<double>(i - a.i_center) * a.h;
  const double adv = std::fma(x, vx, a.y * vy);
  return (vxx + vyy) - quad / g - 0.5 * adv + 0.5 * m0 - a.n_minus_k / m0;
}

}  // namespace

void stencil_row_rhs_avx2(const StencilRowArgs& a, double* out) {
  const double inv_h2 = 1.0 / (a.h * a.h);
  const double inv_2h = 1.0 / (2.0 * a.h);
  const double inv_4h2 = 0.25 * inv_h2;

  const __m256d v_inv_h2 = _mm256_set1_pd(inv_h2);
  const __m256d v_inv_2h = _mm256_set1_pd(inv_2h);
  const __m256d v_inv_4h2 = _mm256_set1_pd(inv_4h2);
  const __m256d v_two = _mm256_set1_pd(2.0);
  const __m256d v_half = _mm256_set1_pd(0.5);
  const __m256d v_one = _mm256_set1_pd(1.0);
  const __m256d v_h = _mm256_set1_pd(a.h);
  const __m256d v_y = _mm256_set1_pd(a.y);
  const __m256d v_nk = _mm256_set1_pd(a.n_minus_k);

  int i = a.i0;
  for (; i + 3 <= a.i1; i += 4) {
    const __m256d mm = _mm256_loadu_pd(a.row_mid + i);
    const __m256d mp = _mm256_loadu_pd(a.row_mid + i + 1);
    const __m256d mq = _mm256_loadu_pd(a.row_mid + i - 1);
    const __m256d ap = _mm256_loadu_pd(a.row_above + i + 1);
    const __m256d aq = _mm256_loadu_pd(a.row_above + i - 1);
    const __m256d a0 = _mm256_loadu_pd(a.row_above + i);
    const __m256d bp = _mm256_loadu_pd(a.row_below + i + 1);
    const __m256d bq = _mm256_loadu_pd(a.row_below + i - 1);
    const __m256d b0 = _mm256_loadu_pd(a.row_below + i);

    const __m256d sx = _mm256_add_pd(mp, mq);
    const __m256d sy = _mm256_add_pd(a0, b0);
    const __m256d vx = _mm256_mul_pd(_mm256_sub_pd(mp, mq), v_inv_2h);
    const __m256d vy = _mm256_mul_pd(_mm256_sub_pd(a0, b0), v_inv_2h);
    // (sx - 2 m0) fused: 2 m0 is exact, so this rounds like the scalar.
    const __m256d vxx =
        _mm256_mul_pd(_mm256_fnmadd_pd(v_two, mm, sx), v_inv_h2);
    const __m256d vyy =
        _mm256_mul_pd(_mm256_fnmadd_pd(v_two, mm, sy), v_inv_h2);
    const __m256d vxy = _mm256_mul_pd(
        _mm256_sub_pd(_mm256_sub_pd(ap, aq), _mm256_sub_pd(bp, bq)),
        v_inv_4h2);
    const __m256d vx2 = _mm256_mul_pd(vx, vx);
    const __m256d vy2 = _mm256_mul_pd(vy, vy);
    const __m256d g = _mm256_add_pd(v_one, _mm256_add_pd(vx2, vy2));
    const __m256d quad = _mm256_fmadd_pd(
        vx2, vxx,
        _mm256_fmadd_pd(_mm256_mul_pd(_mm256_mul_pd(v_two, vx), vy), vxy,
                        _mm256_mul_pd(vy2, vyy)));
    const double d0 = static_cast<double>(i - a.i_center);
    const __m256d idx = _mm256_setr_pd(d0, d0 + 1.0, d0 + 2.0, d0 + 3.0);
    const __m256d x = _mm256_mul_pd(idx, v_h);
    const __m256d adv = _mm256_fmadd_pd(x, vx, _mm256_mul_pd(v_y, vy));

    __m256d r = _mm256_sub_pd(_mm256_add_pd(vxx, vyy),
                              _mm256_div_pd(quad, g));
    // 0.5 * adv and 0.5 * m0 are exact halvings: fused == two-step.
    r = _mm256_fnmadd_pd(v_half, adv, r);
    r = _mm256_fmadd_pd(v_half, mm, r);
    r = _mm256_sub_pd(r, _mm256_div_pd(v_nk, mm));
    _mm256_storeu_pd(out + i, r);
  }
  for (; i <= a.i1; ++i)
    out[i] = node_rhs_fused(a, i, inv_2h, inv_h2, inv_4h2);
}

}  // namespace ovallab::flow
