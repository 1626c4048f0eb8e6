/// @file flow.hpp
/// @brief Time stepping of the renormalized radial profile equation.
///
/// Two backends evolve a near-cylindrical profile forward in the slow time
/// tau (tau < 0, increasing toward 0):
///
///   * radial — O(k)-symmetric dual-chart scheme.  The outer chart carries
///     v(y) on a uniform y-grid from the axis down to v ~ theta; the tip
///     chart carries the inverse profile Y(v) on a uniform v-grid [0, 2
///     theta].  The charts exchange boundary data through monotone-cubic
///     inversion once per Runge-Kutta stage and are cross-checked on the
///     overlap every step.
///
///   * grid2d — k = 2 anisotropic profiles v(y1, y2) on a uniform square
///     grid with reflection-symmetric stencils; the tip region is excised
///     by a v >= v_floor mask that only ever shrinks.
///
/// Governing equations (radial reduction and its inverse-graph form):
///
///   v_tau = v_yy / (1 + v_y^2) + (k-1) v_y / y - y v_y / 2 + v/2 - (n-k)/v
///   Y_tau = Y_vv / (1 + Y_v^2) + ((n-k)/v - v/2) Y_v + Y/2 - (k-1)/Y
///
/// with L'Hopital regularization of the axis terms ((k-1) v_y/y -> (k-1)
/// v_yy at y = 0, (n-k) Y_v/v -> (n-k) Y_vv at v = 0).  The exact cylinder
/// v = sqrt(2(n-k)) is a fixed point of both backends to rounding.
///
/// Scheme: 2nd-order central differences in space, explicit Heun (RK2) in
/// time under dtau <= cfl * min over charts of the diffusion bound; an
/// optional semi-implicit tip-chart solve (backward Euler on the linear
/// advection-diffusion part, Thomas algorithm) removes the tip chart from
/// the step-size bound for long runs at the cost of first-order accuracy in
/// time on that chart only.

#pragma once

#include <stdint.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ovallab/core/params.hpp"

namespace ovallab::flow {

/// One chart of a radial profile: samples f over strictly increasing nodes x.
struct Chart1D {
  std::vector<double> x;
  std::vector<double> f;
  int n() const { return static_cast<int>(x.size()); }
  bool empty() const { return x.empty(); }
};

/// Outer-chart edge index for a given y-level `y_top` of the overlap top
/// v = 2 theta and tip height `y_tip`: the first grid node at or past
/// `y_top` plus one node of margin, so the overlap inversion target falls
/// on interior intervals of the tail window.  The 0.05 dy nudge keeps a
/// slow level crossing from stranding the edge value marginally above
/// 2 theta.  The edge is clamped below the tip so both exchange nodes stay
/// inside the tip chart's y-range; callers must check that the clamped
/// edge still leaves its inner neighbour at or above `y_top` (the band
/// y_tip - y_top narrows as the profile shrinks, and once it is thinner
/// than about two grid cells the two-node exchange no longer fits -- the
/// remedy is a finer dy).
inline int edge_index_for(double y_top, double y_tip, double dy) {
  const int covering = static_cast<int>(std::ceil((y_top + 0.05 * dy) / dy)) + 1;
  const int below_tip = static_cast<int>(std::floor((y_tip - 0.05 * dy) / dy));
  return std::min(covering, below_tip);
}

/// Radial dual-chart state.
///
/// Invariants (checked by validate_state / every step):
///   * chart_v: x = uniform y-grid starting at 0, f = v > 0, v strictly
///     decreasing beyond its center maximum; the edge sits one node past
///     the first grid node at or past the y-level of v = 2 theta, clamped
///     below the tip (see edge_index_for), so the chart brackets the tip
///     chart's Dirichlet boundary with interior samples on both sides;
///   * chart_y: x = uniform v-grid on [0, 2 theta], f = Y >= 0 strictly
///     decreasing; empty chart_y means the tip chart is disabled (cylinder
///     runs, which have no tip);
///   * on [overlap_lo, overlap_hi] both charts describe the same curve:
///     |Y(v) - invert(chart_v)(v)| <= tol, tol = chart_tol_factor*sqrt|tau|
///     (steps abort with chart-breakdown beyond 10x tol).
struct ProfileState {
  CylinderParams params;
  double tau = -1.0;
  Chart1D chart_v;  ///< x: y-nodes, f: v samples
  Chart1D chart_y;  ///< x: v-nodes, f: Y samples (empty = disabled)
  double overlap_lo = 0.0;
  double overlap_hi = 0.0;

  bool has_chart_y() const { return !chart_y.empty(); }
  double dy() const { return chart_v.x.size() > 1 ? chart_v.x[1] : 0.0; }
  double dv() const { return chart_y.x.size() > 1 ? chart_y.x[1] : 0.0; }
  double v_center() const { return chart_v.f.front(); }
  /// Axis intercept of the tip chart; for chartless cylinder states the
  /// outermost carried node.
  double y_tip() const {
    return has_chart_y() ? chart_y.f.front() : chart_v.x.back();
  }
};

/// k = 2 square-grid state.  v is row-major over an m x m grid of spacing h
/// centered on the origin (m odd, node (i, j) at ((i-c) h, (j-c) h) with
/// c = (m-1)/2).  mask[idx] == 1 marks live nodes; v == 0 elsewhere.
struct GridProfileState {
  CylinderParams params;
  double tau = -1.0;
  double h = 0.04;
  int m = 0;
  double v_floor = 0.0;
  std::vector<double> v;
  std::vector<uint8_t> mask;

  int center() const { return (m - 1) / 2; }
  double coord(int i) const { return (i - center()) * h; }
  double r() const { return center() * h; }
  double at(int i, int j) const {
    return v[static_cast<size_t>(j) * m + i];
  }
  bool active(int i, int j) const {
    return mask[static_cast<size_t>(j) * m + i] != 0;
  }
};

enum class FlowBackend { radial, grid2d };
enum class InitialKind { ellipsoidal, cylinder };

/// Initial profile family: an inward-bent ellipsoidal cap
///
///   v0^2 = (n-k) * ( 2 - sum_i d_i (y_i^2 - 2) / |tau_init| )_+
///
/// whose center value is sqrt(2(n-k)) * sqrt(1 + k/|tau_init|) and whose
/// quadratic-mode matrix is -beta*diag(d)/|tau_init| to leading order, or
/// the exact cylinder (kind = cylinder, d ignored).  d is normalized to
/// mean 1; the radial backend accepts only equal entries.
struct InitialData {
  InitialKind kind = InitialKind::ellipsoidal;
  std::vector<double> d = {1.0};
  double tau_init = -100.0;
};

/// Radial discretization knobs.
struct RadialDisc {
  double dy = 0.05;            ///< outer-chart spacing
  int n_chart_y = 33;          ///< tip-chart nodes on [0, 2 theta] (odd)
  double cylinder_extent = 12.0;  ///< y-extent of chartless cylinder runs
};

/// Grid discretization knobs.
struct GridDisc {
  double h = 0.04;
  double r = 0.0;              ///< half-width; 0 = auto (initial tip + margin)
  double margin = 0.5;
  double v_floor_factor = 0.5;     ///< v_floor = factor * theta
  int min_mask_radius_cells = 4;   ///< domain-collapse threshold
};

/// Time-step policy.  The effective step is
///   dtau = cfl * min(stability bounds)  capped by dtau_max,
/// or exactly dtau_fixed when positive (still validated against the raw
/// stability bound).  imex_chart_y switches the tip chart to the
/// semi-implicit solve, dropping its (restrictive) explicit bounds.
struct TimeStepPolicy {
  double cfl = 0.8;
  double dtau_max = 1e-3;
  double dtau_fixed = 0.0;
  bool imex_chart_y = false;
};

struct FlowConfig {
  CylinderParams params;
  FlowBackend backend = FlowBackend::radial;
  InitialData initial;
  double tau0 = -100.0;
  double tau_end = -25.0;  ///< > tau0: integration runs forward in tau
  TimeStepPolicy stepping;
  double snapshot_cadence = 1.0;  ///< tau distance between stored snapshots
  /// Re-center the unstable constant mode by an exact dilation every this
  /// many steps (0 = never).  Radial backend only.
  int gauge_stride = 0;
  double chart_tol_factor = 1e-4;  ///< overlap tolerance = factor * sqrt|tau|
  RadialDisc radial;
  GridDisc grid;
};

/// Cheap per-step scalars, recorded every step (row 0 = initial state).
struct StepScalars {
  long step = 0;
  double tau = 0.0;
  double dtau = 0.0;      ///< step just taken (0 for the initial row)
  double v_center = 0.0;
  double y_tip = 0.0;
  double v_min = 0.0;     ///< smallest live sample (grid) / edge value (radial)
  double gauge_b = 0.0;   ///< dilation applied after this step (0 = none)
};

/// Snapshot sequence produced by run_flow.  Exactly one of `radial` / `grid`
/// is populated, matching config.backend.
struct Trajectory {
  FlowConfig config;
  std::vector<ProfileState> radial;
  std::vector<GridProfileState> grid;
  std::vector<double> snapshot_taus;
  std::vector<StepScalars> scalars;
};

/// Builds the radial initial state.  Requires |tau_init| >= 20, equal
/// (isotropic) d entries, and positive normalized d; the ellipsoidal cap is
/// closed below v = theta by the translating-bowl profile (value-matched at
/// 1.5 theta, smoothly blended over [theta, 2 theta]) so that the tip chart
/// starts with the shape the flow would relax to anyway.
ProfileState make_initial(const InitialData& data, const CylinderParams& params,
                          const RadialDisc& disc = {});

/// Builds the k = 2 grid initial state (no tip closure: the mask excises
/// v < v_floor).  Throws invalid-argument when the anisotropy squeezes the
/// live region below min_mask_radius_cells.
GridProfileState make_initial(const InitialData& data,
                              const CylinderParams& params,
                              const GridDisc& disc);

/// Per-step controls forwarded by run_flow; defaults match FlowConfig's.
struct StepControls {
  bool imex_chart_y = false;
  double chart_tol_factor = 1e-4;
};

/// One Heun step of the dual-chart scheme.  Throws chart-breakdown when a
/// chart loses positivity/monotonicity, produces a non-finite sample, or
/// the overlap mismatch exceeds 10x tolerance; messages carry tau and the
/// offending index.
ProfileState step_radial(const ProfileState& state, double dtau,
                         const StepControls& controls = {});

/// One Heun step of the masked square-grid scheme.  Nodes falling below
/// v_floor are frozen out (mask shrink); throws domain-collapse when the
/// live region's inscribed radius drops below the configured minimum.
GridProfileState step_grid2d(const GridProfileState& state, double dtau);

/// Raw (un-CFL'd) stability bound of the explicit scheme for this state.
double stability_bound(const ProfileState& state, bool imex_chart_y = false);
double stability_bound(const GridProfileState& state);

/// Policy application: cfl * bound capped by dtau_max, or dtau_fixed.
double stable_dtau(const ProfileState& state, const TimeStepPolicy& policy);
double stable_dtau(const GridProfileState& state, const TimeStepPolicy& policy);

/// Drives make_initial + step_* from tau0 to tau_end with snapshots at the
/// configured cadence (always including tau0 and tau_end).  Deterministic:
/// fixed iteration order, step sizes depend only on the config.
Trajectory run_flow(const FlowConfig& config);

/// Evaluates the inverse graph Y(v) of a strictly decreasing chart_v at the
/// given targets (any order of magnitude, each inside the sampled v-range).
/// Throws invalid-argument when the chart is not strictly monotone and
/// out-of-domain when a target is outside the sampled range.
std::vector<double> invert_profile(const Chart1D& chart_v,
                                   const std::vector<double>& v_targets);

/// Graphical-radius certificate: value = |tau|^{1/50} * max over derivative
/// orders m <= 4 of sup over the ball |y| <= 2 |tau|^{1/100} of
/// |d^m/dy^m (v - sqrt(2(n-k)))| along the radial section, ok = (value <= 1).
/// Requires the outer chart to cover the ball.
struct GraphicalRadius {
  bool ok = false;
  double value = 0.0;
};
GraphicalRadius graphical_radius_check(const ProfileState& state, double tau);

/// Exact parabolic dilation v -> (1+b) v(y/(1+b)) applied to both charts
/// (resampled onto the state's own grids).  |b| must be < 0.05.
ProfileState apply_dilation(const ProfileState& state, double b);

/// Coefficient of the constant mode of the truncated deviation field,
/// <chi_cyl(v) (v - radius), 1> / <1, 1> in the Gaussian-weighted pairing.
double constant_mode_coefficient(const ProfileState& state);

/// Dilation parameter b that zeroes constant_mode_coefficient(apply_dilation
/// (state, b)), found by a 2-3 step secant iteration.
double solve_recentering_b(const ProfileState& state);

}  // namespace ovallab::flow
