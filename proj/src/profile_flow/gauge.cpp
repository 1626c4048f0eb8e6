/// @file gauge.cpp
/// @brief Exact dilation gauge moves and the recentering solve.
///
/// The flow has a one-parameter family of gauge-equivalent solutions
/// generated by parabolic dilation,  T_b v (y) = (1+b) v(y/(1+b)); drift
/// along that orbit shows up as an exponentially growing coefficient on
/// the constant spectral mode.  The controller measures that coefficient
/// with the cheap radial rule and applies the exact T_b that zeroes it, so
/// the controlled run stays on the gauge slice instead of leaving the
/// near-cylinder regime in finite time.

#include <algorithm>
#include <cmath>
#include <vector>

#include "ovallab/core/errors.hpp"
#include "ovallab/gauss_spectral/cutoffs.hpp"
#include "ovallab/gauss_spectral/quadrature.hpp"
#include "ovallab/profile_flow/flow.hpp"
#include "ovallab/profile_flow/sampling.hpp"

namespace ovallab::flow {

namespace {

/// Largest |b| the secant iterates may request; apply_dilation itself
/// rejects at 0.05.
constexpr double kMaxRecenterB = 0.045;

}  // namespace

ProfileState apply_dilation(const ProfileState& state, double b) {
  require(std::abs(b) < 0.05, ErrorKind::invalid_argument,
          "apply_dilation: |b| must be below 0.05");
  const double s = 1.0 + b;
  const RadialSampler sampler(state);

  ProfileState out;
  out.params = state.params;
  out.tau = state.tau;

  if (!state.has_chart_y()) {
    // Chartless runs: constant continuation beyond the last node (the edge
    // sits deep in the cylinder plateau, so the clamp is exact for the
    // states these runs produce).
    out.chart_v.x = state.chart_v.x;
    out.chart_v.f.resize(state.chart_v.n());
    const double y_max = state.chart_v.x.back();
    for (int i = 0; i < state.chart_v.n(); ++i)
      out.chart_v.f[i] =
          s * sampler.v_at(std::min(state.chart_v.x[i] / s, y_max));
    return out;
  }

  // Tip chart first: it fixes the new live length of the outer chart.
  const int ny = state.chart_y.n();
  out.chart_y.x = state.chart_y.x;
  out.chart_y.f.resize(ny);
  for (int j = 0; j < ny; ++j)
    out.chart_y.f[j] = s * sampler.y_of_v(state.chart_y.x[j] / s);

  // New edge from the dilated y-level of the overlap top v = 2 theta (same
  // covering rule as the stepper), so the dilated outer chart still
  // brackets the tip chart's Dirichlet boundary.
  const double dy = state.dy();
  const int n_act = edge_index_for(out.chart_y.f[ny - 1], out.chart_y.f[0], dy);
  require(n_act >= 8, ErrorKind::chart_breakdown,
          "apply_dilation: dilated outer chart would drop below 9 nodes");
  require((n_act - 1) * dy >= out.chart_y.f[ny - 1], ErrorKind::chart_breakdown,
          "apply_dilation: tip band narrower than the two exchange nodes "
          "need (reduce dy)");

  out.chart_v.x.resize(n_act + 1);
  out.chart_v.f.resize(n_act + 1);
  for (int i = 0; i <= n_act; ++i) {
    out.chart_v.x[i] = i * dy;
    out.chart_v.f[i] = s * sampler.v_at(i * dy / s);
  }
  out.overlap_lo = out.chart_v.f.back();
  out.overlap_hi = state.overlap_hi;
  return out;
}

double constant_mode_coefficient(const ProfileState& state) {
  const RadialSampler sampler(state);
  const CylinderParams& p = state.params;
  const RadialRule rule = build_radial_rule(p.k, 64);
  const CutoffSpec chi{CutoffKind::cyl, p.theta};
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < rule.r.size(); ++i) {
    const double v = sampler.v_at(rule.r[i]);
    num += rule.w[i] * cutoff_eval(chi, v) * (v - p.radius);
    den += rule.w[i];
  }
  return num / den;
}

double solve_recentering_b(const ProfileState& state) {
  const double scale = state.params.radius;
  const double tol = 1e-13 * scale;

  double b_prev = 0.0;
  double c_prev = constant_mode_coefficient(state);
  if (std::abs(c_prev) <= tol) return 0.0;

  // T_b shifts the constant coefficient by about b * radius, so the first
  // probe already lands near the root; the secant then polishes.
  double b_cur =
      std::clamp(-c_prev / scale, -kMaxRecenterB, kMaxRecenterB);
  double c_cur = constant_mode_coefficient(apply_dilation(state, b_cur));

  double best_b = b_cur;
  double best_c = std::abs(c_cur);
  for (int it = 0; it < 6 && best_c > tol; ++it) {
    const double dc = c_cur - c_prev;
    if (dc == 0.0) break;
    double b_next = b_cur - c_cur * (b_cur - b_prev) / dc;
    b_next = std::clamp(b_next, -kMaxRecenterB, kMaxRecenterB);
    if (b_next == b_cur) break;
    b_prev = b_cur;
    c_prev = c_cur;
    b_cur = b_next;
    c_cur = constant_mode_coefficient(apply_dilation(state, b_cur));
    if (std::abs(c_cur) < best_c) {
      best_c = std::abs(c_cur);
      best_b = b_cur;
    }
  }
  return best_b;
}

}  // namespace ovallab::flow
