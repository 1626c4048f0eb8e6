/// @file initial.cpp
/// @brief Construction of radial and grid initial states.
///
/// The ellipsoidal family is
///
///   v0^2 = (n-k) * ( 2 - sum_i d_i (y_i^2 - 2) / |tau0| )_+ ,   mean(d) = 1,
///
/// an inward quadratic bending of the cylinder whose center value is
/// sqrt(2(n-k)(1 + k/|tau0|)) and whose diagonal quadratic-mode matrix is
/// -beta d_i/|tau0| to leading order.  The radial backend replaces the cap
/// below v = 2 theta by a blend into the translating-bowl profile at tip
/// scale 1/sqrt|tau0| -- the shape the flow relaxes to near the tip -- so
/// that runs start without a tip transient.  The grid backend keeps the raw
/// ansatz and excises v < v_floor with the mask.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ovallab/bowl_soliton/bowl.hpp"
#include "ovallab/core/errors.hpp"
#include "ovallab/core/smooth.hpp"
#include "ovallab/profile_flow/flow.hpp"

namespace ovallab::flow {

namespace {

// Validates kind-independent preconditions and returns d normalized to
// mean exactly 1 (the family is scale-redundant in d).
std::vector<double> checked_directions(const InitialData& data,
                                       const CylinderParams& params) {
  require(data.tau_init < 0.0 && std::abs(data.tau_init) >= 20.0,
          ErrorKind::invalid_argument,
          "make_initial: |tau_init| >= 20 required (expansion regime)");
  if (data.kind == InitialKind::cylinder) return {};
  std::vector<double> d = data.d;
  if (d.size() == 1 && params.k > 1) d.assign(params.k, d[0]);  // isotropic
  require(static_cast<int>(d.size()) == params.k,
          ErrorKind::invalid_argument,
          "make_initial: d must have one entry or exactly k entries");
  double sum = 0.0;
  for (double di : d) {
    require(di > 0.0, ErrorKind::invalid_argument,
            "make_initial: anisotropy entries must be positive");
    sum += di;
  }
  for (double& di : d) di *= params.k / sum;
  return d;
}

}  // namespace

ProfileState make_initial(const InitialData& data, const CylinderParams& params,
                          const RadialDisc& disc) {
  require(disc.dy > 0.0, ErrorKind::invalid_argument,
          "make_initial: dy must be positive");
  require(disc.n_chart_y >= 9 && disc.n_chart_y % 2 == 1,
          ErrorKind::invalid_argument,
          "make_initial: n_chart_y must be odd and >= 9");
  const std::vector<double> d = checked_directions(data, params);

  ProfileState state;
  state.params = params;
  state.tau = data.tau_init;

  if (data.kind == InitialKind::cylinder) {
    require(disc.cylinder_extent >= 4.0, ErrorKind::invalid_argument,
            "make_initial: cylinder_extent must be >= 4");
    const int nv =
        static_cast<int>(std::floor(disc.cylinder_extent / disc.dy)) + 1;
    state.chart_v.x.resize(nv);
    state.chart_v.f.resize(nv);
    for (int i = 0; i < nv; ++i) {
      state.chart_v.x[i] = i * disc.dy;
      state.chart_v.f[i] = params.radius;
    }
    return state;  // no tip, no overlap
  }

  // Radial symmetry: the profile depends on |y| only, so the bending must
  // be isotropic.
  const double dmax = *std::max_element(d.begin(), d.end());
  const double dmin = *std::min_element(d.begin(), d.end());
  require(dmax - dmin <= 1e-12 * dmax, ErrorKind::invalid_argument,
          "make_initial: radial backend needs equal anisotropy entries "
          "(use the grid backend for d_i != d_j)");

  const double at = std::abs(data.tau_init);
  const double nk = params.m();
  const int k = params.k;
  const double theta = params.theta;

  // Isotropic ansatz and its exact inverse graph.
  //   v_a(y)^2 = (n-k) (2 - (y^2 - 2k)/at),  y_a(v)^2 = 2 at + 2k - at v^2/(n-k)
  auto v_ansatz = [&](double y) {
    const double s = nk * (2.0 - (y * y - 2.0 * k) / at);
    return std::sqrt(std::max(s, 0.0));
  };
  auto y_ansatz = [&](double v) {
    return std::sqrt(2.0 * at + 2.0 * k - at * v * v / nk);
  };

  // Bowl cap at tip scale 1/sqrt(at), value-matched to the ansatz at
  // v = 1.5 theta (mid-blend); the smooth blend absorbs the slope mismatch,
  // which is O(1/at) there.
  const double root_at = std::sqrt(at);
  const BowlProfile bowl =
      solve_bowl(params.m(), root_at * 2.0 * theta + 2.0, 1e-10);
  const BowlEval bowl_eval(bowl);
  const double v_match = 1.5 * theta;
  const double y0 =
      y_ansatz(v_match) - bowl_eval.z(root_at * v_match) / root_at;
  auto y_bowl = [&](double v) {
    return y0 + bowl_eval.z(root_at * v) / root_at;
  };
  auto y_blend = [&](double v) {
    const double s = smooth01((v - theta) / theta);
    return s == 0.0   ? y_bowl(v)
           : s == 1.0 ? y_ansatz(v)
                      : (1.0 - s) * y_bowl(v) + s * y_ansatz(v);
  };

  // Tip chart: uniform v-grid on [0, 2 theta].
  const int ny = disc.n_chart_y;
  const double dv = 2.0 * theta / (ny - 1);
  state.chart_y.x.resize(ny);
  state.chart_y.f.resize(ny);
  for (int j = 0; j < ny; ++j) {
    state.chart_y.x[j] = j * dv;
    state.chart_y.f[j] = y_blend(j * dv);
  }

  // Outer chart: uniform y-grid from the axis, ending one node past the
  // y-level of the overlap top v = 2 theta but clamped below the tip
  // (edge_index_for), so the outer chart brackets the tip chart's Dirichlet
  // boundary with interior samples while both exchange nodes stay strictly
  // inside the tip chart's range.
  const double y_top = y_blend(2.0 * theta);
  const int i_act = edge_index_for(y_top, y_blend(0.0), disc.dy);
  require(i_act >= 8, ErrorKind::invalid_argument,
          "make_initial: dy too coarse for this tau_init (outer chart "
          "needs at least 9 nodes)");
  require((i_act - 1) * disc.dy >= y_top, ErrorKind::invalid_argument,
          "make_initial: tip band narrower than the two exchange nodes "
          "need (reduce dy)");
  const double y_switch = y_ansatz(2.0 * theta);
  state.chart_v.x.resize(i_act + 1);
  state.chart_v.f.resize(i_act + 1);
  for (int i = 0; i <= i_act; ++i) {
    const double y = i * disc.dy;
    state.chart_v.x[i] = y;
    if (y <= y_switch) {
      state.chart_v.f[i] = v_ansatz(y);
    } else {
      // Invert the blend by bisection on its strictly decreasing branch.
      double lo = 0.5 * theta, hi = 2.0 * theta;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (y_blend(mid) > y ? lo : hi) = mid;
      }
      state.chart_v.f[i] = 0.5 * (lo + hi);
    }
  }

  state.overlap_lo = state.chart_v.f.back();
  state.overlap_hi = 2.0 * theta;
  return state;
}

GridProfileState make_initial(const InitialData& data,
                              const CylinderParams& params,
                              const GridDisc& disc) {
  require(params.k == 2, ErrorKind::invalid_argument,
          "make_initial: grid backend requires k = 2");
  require(disc.h > 0.0, ErrorKind::invalid_argument,
          "make_initial: h must be positive");
  require(disc.v_floor_factor > 0.0 && disc.v_floor_factor < 1.0,
          ErrorKind::invalid_argument,
          "make_initial: v_floor_factor must lie in (0, 1)");
  require(disc.min_mask_radius_cells >= 2, ErrorKind::invalid_argument,
          "make_initial: min_mask_radius_cells must be >= 2");
  const std::vector<double> d = checked_directions(data, params);

  GridProfileState state;
  state.params = params;
  state.tau = data.tau_init;
  state.h = disc.h;
  state.v_floor = disc.v_floor_factor * params.theta;

  const double at = std::abs(data.tau_init);
  const double nk = params.m();

  if (data.kind == InitialKind::cylinder) {
    double r = disc.r > 0.0 ? disc.r : 8.0;
    state.m = 2 * static_cast<int>(std::ceil(r / disc.h)) + 1;
    state.v.assign(static_cast<size_t>(state.m) * state.m, params.radius);
    state.mask.assign(static_cast<size_t>(state.m) * state.m, 1);
    return state;
  }

  // Auto half-width: the farthest axis intercept of the ansatz plus margin.
  double r = disc.r;
  if (r <= 0.0) {
    const double dmin = std::min(d[0], d[1]);
    r = std::sqrt((2.0 * at + 4.0) / dmin) + disc.margin;
  }
  state.m = 2 * static_cast<int>(std::ceil(r / disc.h)) + 1;
  const int m = state.m;
  state.v.assign(static_cast<size_t>(m) * m, 0.0);
  state.mask.assign(static_cast<size_t>(m) * m, 0);

  const double floor2 = state.v_floor * state.v_floor;
  for (int j = 0; j < m; ++j) {
    const double y2 = state.coord(j);
    for (int i = 0; i < m; ++i) {
      const double y1 = state.coord(i);
      const double s =
          nk * (2.0 - (d[0] * (y1 * y1 - 2.0) + d[1] * (y2 * y2 - 2.0)) / at);
      if (s >= floor2) {
        state.v[static_cast<size_t>(j) * m + i] = std::sqrt(s);
        state.mask[static_cast<size_t>(j) * m + i] = 1;
      }
    }
  }

  // The live region must hold the minimum inscribed radius along all four
  // axis rays (the shortest decides).
  const int c = state.center();
  int run = m;  // upper bound
  for (int dir = 0; dir < 4; ++dir) {
    const int di = dir == 0 ? 1 : dir == 1 ? -1 : 0;
    const int dj = dir == 2 ? 1 : dir == 3 ? -1 : 0;
    int len = 0;
    while (true) {
      const int i = c + di * (len + 1), j = c + dj * (len + 1);
      if (i < 0 || i >= m || j < 0 || j >= m || !state.active(i, j)) break;
      ++len;
    }
    run = std::min(run, len);
  }
  require(run >= disc.min_mask_radius_cells, ErrorKind::invalid_argument,
          "make_initial: anisotropy leaves fewer than the minimum live "
          "cells along an axis (live run " +
              std::to_string(run) + ")");
  return state;
}

}  // namespace ovallab::flow
