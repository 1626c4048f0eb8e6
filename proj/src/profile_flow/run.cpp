/// @file run.cpp
/// @brief Flow driver: initial data, stepping, snapshots, gauge control.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ovallab/core/errors.hpp"
#include "ovallab/profile_flow/flow.hpp"

namespace ovallab::flow {

namespace {

constexpr double kTimeSlack = 1e-12;

void validate_config(const FlowConfig& config) {
  require(config.tau0 < 0.0 && config.tau_end < 0.0,
          ErrorKind::invalid_argument, "run_flow: tau0 and tau_end must be negative");
  require(config.tau_end >= config.tau0, ErrorKind::invalid_argument,
          "run_flow: tau_end must not precede tau0");
  require(config.initial.tau_init == config.tau0, ErrorKind::invalid_argument,
          "run_flow: initial.tau_init must equal tau0");
  require(config.snapshot_cadence > 0.0, ErrorKind::invalid_argument,
          "run_flow: snapshot_cadence must be positive");
  require(config.gauge_stride >= 0, ErrorKind::invalid_argument,
          "run_flow: gauge_stride must be nonnegative");
}

StepScalars radial_scalars(const ProfileState& s, long step, double dtau,
                           double gauge_b) {
  StepScalars row;
  row.step = step;
  row.tau = s.tau;
  row.dtau = dtau;
  row.v_center = s.v_center();
  row.y_tip = s.y_tip();
  row.v_min = s.chart_v.f.back();
  row.gauge_b = gauge_b;
  return row;
}

StepScalars grid_scalars(const GridProfileState& s, long step, double dtau) {
  StepScalars row;
  row.step = step;
  row.tau = s.tau;
  row.dtau = dtau;
  const int c = s.center();
  row.v_center = s.active(c, c) ? s.at(c, c) : 0.0;
  double v_min = std::numeric_limits<double>::infinity();
  for (size_t p = 0; p < s.v.size(); ++p)
    if (s.mask[p]) v_min = std::min(v_min, s.v[p]);
  row.v_min = std::isfinite(v_min) ? v_min : 0.0;
  // Tip proxy: longest live run from the center along the +x ray.
  int len = 0;
  while (c + len < s.m && s.active(c + len, c)) ++len;
  row.y_tip = (len > 0 ? len - 1 : 0) * s.h;
  row.gauge_b = 0.0;
  return row;
}

/// Shrinks dt so the run lands exactly on the next snapshot / end time.
double landed_dt(double tau, double dt, double t_next) {
  if (tau + dt >= t_next - kTimeSlack) return t_next - tau;
  return dt;
}

}  // namespace

Trajectory run_flow(const FlowConfig& config) {
  validate_config(config);
  Trajectory traj;
  traj.config = config;

  if (config.backend == FlowBackend::radial) {
    StepControls controls;
    controls.imex_chart_y = config.stepping.imex_chart_y;
    controls.chart_tol_factor = config.chart_tol_factor;

    ProfileState state =
        make_initial(config.initial, config.params, config.radial);
    traj.radial.push_back(state);
    traj.snapshot_taus.push_back(state.tau);
    traj.scalars.push_back(radial_scalars(state, 0, 0.0, 0.0));

    double next_snap = config.tau0 + config.snapshot_cadence;
    long step = 0;
    int since_gauge = 0;
    while (state.tau < config.tau_end - kTimeSlack) {
      const double t_next = std::min(next_snap, config.tau_end);
      const double dt =
          landed_dt(state.tau, stable_dtau(state, config.stepping), t_next);
      state = step_radial(state, dt, controls);
      ++step;

      double gauge_b = 0.0;
      if (config.gauge_stride > 0 && ++since_gauge >= config.gauge_stride) {
        since_gauge = 0;
        gauge_b = solve_recentering_b(state);
        if (gauge_b != 0.0) state = apply_dilation(state, gauge_b);
      }
      traj.scalars.push_back(radial_scalars(state, step, dt, gauge_b));

      if (state.tau >= next_snap - kTimeSlack) {
        traj.radial.push_back(state);
        traj.snapshot_taus.push_back(state.tau);
        while (next_snap <= state.tau + kTimeSlack)
          next_snap += config.snapshot_cadence;
      }
    }
    if (traj.snapshot_taus.back() != state.tau) {
      traj.radial.push_back(state);
      traj.snapshot_taus.push_back(state.tau);
    }
    return traj;
  }

  // grid2d backend: same drive, no gauge moves.
  GridProfileState state =
      make_initial(config.initial, config.params, config.grid);
  traj.grid.push_back(state);
  traj.snapshot_taus.push_back(state.tau);
  traj.scalars.push_back(grid_scalars(state, 0, 0.0));

  double next_snap = config.tau0 + config.snapshot_cadence;
  long step = 0;
  while (state.tau < config.tau_end - kTimeSlack) {
    const double t_next = std::min(next_snap, config.tau_end);
    const double dt =
        landed_dt(state.tau, stable_dtau(state, config.stepping), t_next);
    state = step_grid2d(state, dt);
    ++step;
    traj.scalars.push_back(grid_scalars(state, step, dt));

    if (state.tau >= next_snap - kTimeSlack) {
      traj.grid.push_back(state);
      traj.snapshot_taus.push_back(state.tau);
      while (next_snap <= state.tau + kTimeSlack)
        next_snap += config.snapshot_cadence;
    }
  }
  if (traj.snapshot_taus.back() != state.tau) {
    traj.grid.push_back(state);
    traj.snapshot_taus.push_back(state.tau);
  }
  return traj;
}

}  // namespace ovallab::flow
