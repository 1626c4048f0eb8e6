/// @file radial.cpp
/// @brief Dual-chart radial stepper, stability bounds, inversion utilities.
///
/// One Heun step advances the outer chart v(y) (uniform y-grid from the
/// axis) and the tip chart Y(v) (uniform v-grid on [0, 2 theta]) together.
/// Each chart is evolved only where its parameterization resolves the
/// curve; the last two outer nodes straddle the y-level of v = 2 theta and
/// are exchange nodes, not PDE nodes:
///
///   * the outer chart's two exchange nodes are read off the tip chart by
///     monotone inversion, once per stage; the innermost of them doubles
///     as the stencil closure for the evolved nodes;
///   * the tip chart's outermost node (v = 2 theta) is a Dirichlet value
///     read off the outer chart's tail by monotone inversion; because the
///     exchange nodes bracket 2 theta, that inversion always works on
///     interior intervals of the tail window;
///   * after the full step the live length of the outer chart is re-derived
///     from the tip chart's outermost node and the tip height
///     (edge_index_for: covering rule clamped below the tip), and the
///     overlap mismatch |Y(v) - invert(chart_v)(v)| is measured on the
///     shared v-window -- exceeding 10x tolerance aborts the step, so a
///     drifting pair of charts can never silently diverge.  The band
///     between the 2 theta level and the tip narrows as the profile
///     shrinks; once it is thinner than ~2 dy the exchange pair no longer
///     fits and the step aborts with a message naming the cure (finer dy).
///
/// The optional semi-implicit tip-chart mode (backward Euler on the frozen
/// linear advection-diffusion part, Thomas solve) exists because the
/// explicit bound dv^2/(2(1+n-k)) is ~30x harsher than the outer chart's;
/// it costs first-order time accuracy on the tip chart only, which the
/// long-run acceptance tolerances absorb.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ovallab/core/errors.hpp"
#include "ovallab/core/fd.hpp"
#include "ovallab/core/interp.hpp"
#include "ovallab/profile_flow/flow.hpp"

namespace ovallab::flow {

namespace {

std::string tau_tag(double tau) { return "tau=" + std::to_string(tau); }

void check_finite(const std::vector<double>& f, double tau, const char* chart) {
  for (size_t i = 0; i < f.size(); ++i) {
    if (!std::isfinite(f[i]))
      throw LabError(ErrorKind::chart_breakdown,
                     std::string("non-finite sample on ") + chart +
                         " at index " + std::to_string(i) + ", " + tau_tag(tau));
  }
}

void check_positive(const std::vector<double>& f, double tau,
                    const char* chart) {
  for (size_t i = 0; i < f.size(); ++i) {
    if (!(f[i] > 0.0))
      throw LabError(ErrorKind::chart_breakdown,
                     std::string(chart) + " lost positivity at index " +
                         std::to_string(i) + " (value " +
                         std::to_string(f[i]) + "), " + tau_tag(tau));
  }
}

/// Monotone inverter v |-> y over the outer chart's tail (the only stretch
/// other code inverts; the center plateau of near-cylinder states is not
/// required to be monotone).  Walks inward from the edge until the window
/// clears `v_need` with 10% headroom.
MonotoneCubic tail_inverter(const Chart1D& chart_v, double v_need, double tau) {
  const int n = chart_v.n();
  require(chart_v.f[n - 1] <= v_need + 1e-9, ErrorKind::chart_breakdown,
          "outer chart edge " + std::to_string(chart_v.f[n - 1]) +
              " rose above the overlap top " + std::to_string(v_need) + ", " +
              tau_tag(tau));
  int first = n - 1;
  const double v_stop = v_need + 0.5 * std::abs(v_need - chart_v.f[n - 1]);
  while (first > 0 && n - first < 40 &&
         (n - first < 6 || chart_v.f[first] < v_stop))
    --first;
  require(chart_v.f[first] >= v_need, ErrorKind::chart_breakdown,
          "outer chart no longer covers the overlap (tail top " +
              std::to_string(chart_v.f[first]) + " < " +
              std::to_string(v_need) + "), " + tau_tag(tau));
  std::vector<double> vs, ys;
  vs.reserve(n - first);
  ys.reserve(n - first);
  for (int i = n - 1; i >= first; --i) {
    vs.push_back(chart_v.f[i]);
    ys.push_back(chart_v.x[i]);
  }
  for (size_t i = 1; i < vs.size(); ++i)
    require(vs[i] > vs[i - 1], ErrorKind::chart_breakdown,
            "outer chart tail lost strict monotonicity near index " +
                std::to_string(n - 1 - static_cast<int>(i)) + ", " +
                tau_tag(tau));
  return MonotoneCubic(std::move(vs), std::move(ys));
}

/// Evaluate a tail inverter at `v`, absorbing the <= 1e-9 edge roundoff the
/// coverage check in tail_inverter tolerates.
double eval_tail(const MonotoneCubic& tail, double v) {
  return tail.eval(std::max(v, tail.x_min()));
}

/// Monotone inverter y |-> v over the whole tip chart.
MonotoneCubic tip_inverter(const Chart1D& chart_y, double tau) {
  const int n = chart_y.n();
  std::vector<double> ys, vs;
  ys.reserve(n);
  vs.reserve(n);
  for (int i = n - 1; i >= 0; --i) {
    ys.push_back(chart_y.f[i]);
    vs.push_back(chart_y.x[i]);
  }
  for (size_t i = 1; i < ys.size(); ++i)
    require(ys[i] > ys[i - 1], ErrorKind::chart_breakdown,
            "tip chart lost strict monotonicity near index " +
                std::to_string(n - 1 - static_cast<int>(i)) + ", " +
                tau_tag(tau));
  return MonotoneCubic(std::move(ys), std::move(vs));
}

/// Outer-chart right-hand side over u[0..n_act] with ghost u[n_act+1].
///   v_tau = v_yy/(1+v_y^2) + (k-1) v_y/y - y v_y/2 + v/2 - (n-k)/v,
/// axis limit k*v_yy + v/2 - (n-k)/v via the even extension.
void rhs_chart_v(const std::vector<double>& u, int n_act, double dy,
                 const CylinderParams& p, std::vector<double>* out) {
  const double nk = p.m();
  const double inv_dy2 = 1.0 / (dy * dy);
  out->resize(n_act + 1);
  (*out)[0] = p.k * 2.0 * (u[1] - u[0]) * inv_dy2 + 0.5 * u[0] - nk / u[0];
  for (int i = 1; i <= n_act; ++i) {
    const double y = i * dy;
    const double vy = (u[i + 1] - u[i - 1]) / (2.0 * dy);
    const double vyy = ((u[i + 1] + u[i - 1]) - 2.0 * u[i]) * inv_dy2;
    (*out)[i] = vyy / (1.0 + vy * vy) + (p.k - 1) * vy / y - 0.5 * y * vy +
                0.5 * u[i] - nk / u[i];
  }
}

/// Chartless (cylinder-run) right-hand side: outflow one-sided stencils at
/// the outer edge, exact zero on constant data.
void rhs_chart_v_free(const std::vector<double>& u, double dy,
                      const CylinderParams& p, std::vector<double>* out) {
  const int n = static_cast<int>(u.size());
  const double nk = p.m();
  const double inv_dy2 = 1.0 / (dy * dy);
  out->resize(n);
  (*out)[0] = p.k * 2.0 * (u[1] - u[0]) * inv_dy2 + 0.5 * u[0] - nk / u[0];
  for (int i = 1; i < n - 1; ++i) {
    const double y = i * dy;
    const double vy = (u[i + 1] - u[i - 1]) / (2.0 * dy);
    const double vyy = ((u[i + 1] + u[i - 1]) - 2.0 * u[i]) * inv_dy2;
    (*out)[i] = vyy / (1.0 + vy * vy) + (p.k - 1) * vy / y - 0.5 * y * vy +
                0.5 * u[i] - nk / u[i];
  }
  const int i = n - 1;
  const double y = i * dy;
  const double vy = d1_backward2(u, i, dy);
  const double vyy = d2_backward2(u, i, dy);
  (*out)[i] = vyy / (1.0 + vy * vy) + (p.k - 1) * vy / y - 0.5 * y * vy +
              0.5 * u[i] - nk / u[i];
}

/// Tip-chart right-hand side (interior + axis; outermost node Dirichlet).
///   Y_tau = Y_vv/(1+Y_v^2) + ((n-k)/v - v/2) Y_v + Y/2 - (k-1)/Y,
/// axis limit (1+n-k) Y_vv + Y/2 - (k-1)/Y via the even extension.
void rhs_chart_y(const std::vector<double>& yv, double dv,
                 const CylinderParams& p, std::vector<double>* out) {
  const int n = static_cast<int>(yv.size());
  const double nk = p.m();
  const double km1 = p.k - 1;
  const double inv_dv2 = 1.0 / (dv * dv);
  out->resize(n);
  (*out)[0] = (1.0 + nk) * 2.0 * (yv[1] - yv[0]) * inv_dv2 + 0.5 * yv[0] -
              km1 / yv[0];
  for (int j = 1; j < n - 1; ++j) {
    const double v = j * dv;
    const double Yv = (yv[j + 1] - yv[j - 1]) / (2.0 * dv);
    const double Yvv = ((yv[j + 1] + yv[j - 1]) - 2.0 * yv[j]) * inv_dv2;
    (*out)[j] = Yvv / (1.0 + Yv * Yv) + (nk / v - 0.5 * v) * Yv +
                0.5 * yv[j] - km1 / yv[j];
  }
  (*out)[n - 1] = 0.0;
}

/// Backward-Euler tip-chart step: implicit on the frozen linear
/// advection-diffusion part (tridiagonal, Thomas solve), explicit on the
/// Y/2 - (k-1)/Y reaction.  y_bnd is the Dirichlet value at v = 2 theta.
std::vector<double> chart_y_backward_euler(const std::vector<double>& yv,
                                           double dv, double dt,
                                           const CylinderParams& p,
                                           double y_bnd, double tau) {
  const int n = static_cast<int>(yv.size());
  const int nu = n - 1;  // unknowns 0 .. n-2
  const double nk = p.m();
  const double km1 = p.k - 1;
  const double inv_dv2 = 1.0 / (dv * dv);
  std::vector<double> diag(nu), lower(nu), upper(nu), rhs(nu);

  const double a0 = dt * 2.0 * (1.0 + nk) * inv_dv2;
  diag[0] = 1.0 + a0;
  upper[0] = -a0;
  rhs[0] = yv[0] + dt * (0.5 * yv[0] - km1 / yv[0]);
  for (int j = 1; j < nu; ++j) {
    const double v = j * dv;
    const double Yv = (yv[j + 1] - yv[j - 1]) / (2.0 * dv);
    const double c = 1.0 / (1.0 + Yv * Yv);
    const double b = nk / v - 0.5 * v;
    diag[j] = 1.0 + 2.0 * dt * c * inv_dv2;
    lower[j] = -dt * (c * inv_dv2 - b / (2.0 * dv));
    upper[j] = -dt * (c * inv_dv2 + b / (2.0 * dv));
    rhs[j] = yv[j] + dt * (0.5 * yv[j] - km1 / yv[j]);
  }
  rhs[nu - 1] -= upper[nu - 1] * y_bnd;

  // Thomas sweep.
  for (int j = 1; j < nu; ++j) {
    const double w = lower[j] / diag[j - 1];
    diag[j] -= w * upper[j - 1];
    rhs[j] -= w * rhs[j - 1];
  }
  std::vector<double> out(n);
  out[nu - 1] = rhs[nu - 1] / diag[nu - 1];
  for (int j = nu - 2; j >= 0; --j)
    out[j] = (rhs[j] - upper[j] * out[j + 1]) / diag[j];
  out[n - 1] = y_bnd;
  check_finite(out, tau, "tip chart (implicit solve)");
  return out;
}

/// Largest v-window top the mismatch check needs the outer chart to cover.
double overlap_top(const ProfileState& s) { return 2.0 * s.params.theta; }

}  // namespace

double stability_bound(const ProfileState& state, bool imex_chart_y) {
  const double dy = state.dy();
  require(dy > 0.0, ErrorKind::invalid_argument,
          "stability_bound: degenerate outer chart");
  const double y_max = state.chart_v.x.back() + dy;
  double bound = std::min(dy * dy / (2.0 * state.params.k),
                          dy / (0.5 * y_max));
  if (state.has_chart_y() && !imex_chart_y) {
    const double dv = state.dv();
    const double nk = state.params.m();
    const double adv = nk / dv + 0.5 * overlap_top(state);
    bound = std::min({bound, dv * dv / (2.0 * (1.0 + nk)), dv / adv});
  }
  return bound;
}

double stable_dtau(const ProfileState& state, const TimeStepPolicy& policy) {
  require(policy.cfl > 0.0 && policy.cfl <= 1.0, ErrorKind::invalid_argument,
          "stable_dtau: cfl must lie in (0, 1]");
  const double raw = stability_bound(state, policy.imex_chart_y);
  if (policy.dtau_fixed > 0.0) {
    require(policy.dtau_fixed <= raw * (1.0 + 1e-9),
            ErrorKind::invalid_argument,
            "stable_dtau: dtau_fixed " + std::to_string(policy.dtau_fixed) +
                " exceeds the stability bound " + std::to_string(raw));
    return policy.dtau_fixed;
  }
  return std::min(policy.cfl * raw, policy.dtau_max);
}

ProfileState step_radial(const ProfileState& state, double dtau,
                         const StepControls& controls) {
  require(dtau > 0.0, ErrorKind::invalid_argument,
          "step_radial: dtau must be positive");
  require(state.chart_v.n() >= 9, ErrorKind::invalid_argument,
          "step_radial: outer chart too short");
  require(dtau <= stability_bound(state, controls.imex_chart_y) * (1.0 + 1e-9),
          ErrorKind::invalid_argument,
          "step_radial: dtau " + std::to_string(dtau) +
              " violates the stability bound");
  check_finite(state.chart_v.f, state.tau, "outer chart");
  const CylinderParams& p = state.params;
  const double dy = state.dy();
  const double tau1 = state.tau + dtau;

  // ---- chartless cylinder runs: single free-edge sweep -------------------
  if (!state.has_chart_y()) {
    std::vector<double> k1, k2;
    rhs_chart_v_free(state.chart_v.f, dy, p, &k1);
    std::vector<double> u1(state.chart_v.f);
    for (size_t i = 0; i < u1.size(); ++i) u1[i] += dtau * k1[i];
    check_positive(u1, tau1, "outer chart (stage)");
    rhs_chart_v_free(u1, dy, p, &k2);
    ProfileState out = state;
    out.tau = tau1;
    for (size_t i = 0; i < u1.size(); ++i)
      out.chart_v.f[i] = state.chart_v.f[i] + 0.5 * dtau * (k1[i] + k2[i]);
    check_finite(out.chart_v.f, tau1, "outer chart");
    check_positive(out.chart_v.f, tau1, "outer chart");
    return out;
  }

  check_finite(state.chart_y.f, state.tau, "tip chart");
  const double dv = state.dv();
  const double two_theta = overlap_top(state);
  const int ny = state.chart_y.n();
  const int n_act = state.chart_v.n() - 1;
  // Nodes n_act-1 and n_act are exchange nodes donated by the tip chart;
  // the PDE evolves 0..n_act-2 with node n_act-1 closing the last stencil.
  const int n_pde = n_act - 2;

  // Donates the two exchange nodes at the outer chart's edge from a tip
  // inverter, guarding the tip chart's reach.
  const auto donate_edge = [&](const MonotoneCubic& inv_tip, int edge,
                               const std::vector<double>& tip_f,
                               std::vector<double>* u, double tau_at) {
    require(edge * dy < tip_f.front(), ErrorKind::chart_breakdown,
            "outer chart reaches past the tip, " + tau_tag(tau_at));
    (*u)[edge - 1] = inv_tip.eval((edge - 1) * dy);
    (*u)[edge] = inv_tip.eval(edge * dy);
  };

  // Tip-chart Dirichlet value at the start of the step; both stages reuse
  // it (the O(dtau) boundary lag is absorbed by the end-of-step refresh).
  const double y_bnd0 = eval_tail(
      tail_inverter(state.chart_v, two_theta, state.tau), two_theta);

  const std::vector<double>& u = state.chart_v.f;
  std::vector<double> k1v;
  rhs_chart_v(u, n_pde, dy, p, &k1v);

  std::vector<double> y_new;  // full-step tip chart
  std::vector<double> u1(n_act + 1);
  if (controls.imex_chart_y) {
    y_new = chart_y_backward_euler(state.chart_y.f, dv, dtau, p, y_bnd0,
                                   state.tau);
    check_positive(y_new, tau1, "tip chart");
    const MonotoneCubic inv_tip1 = tip_inverter({state.chart_y.x, y_new}, tau1);
    for (int i = 0; i <= n_pde; ++i) u1[i] = u[i] + dtau * k1v[i];
    donate_edge(inv_tip1, n_act, y_new, &u1, tau1);
    check_positive(u1, tau1, "outer chart (stage)");
  } else {
    std::vector<double> k1y;
    rhs_chart_y(state.chart_y.f, dv, p, &k1y);
    std::vector<double> y1(ny);
    for (int j = 0; j < ny; ++j) y1[j] = state.chart_y.f[j] + dtau * k1y[j];
    y1[ny - 1] = y_bnd0;
    check_positive(y1, tau1, "tip chart (stage)");
    const MonotoneCubic inv_tip1 = tip_inverter({state.chart_y.x, y1}, tau1);
    for (int i = 0; i <= n_pde; ++i) u1[i] = u[i] + dtau * k1v[i];
    donate_edge(inv_tip1, n_act, y1, &u1, tau1);
    check_positive(u1, tau1, "outer chart (stage)");

    std::vector<double> k2y;
    rhs_chart_y(y1, dv, p, &k2y);
    y_new.resize(ny);
    for (int j = 0; j < ny; ++j)
      y_new[j] = state.chart_y.f[j] + 0.5 * dtau * (k1y[j] + k2y[j]);
  }

  std::vector<double> k2v;
  rhs_chart_v(u1, n_pde, dy, p, &k2v);
  std::vector<double> v_new(n_act + 1);
  for (int i = 0; i <= n_pde; ++i)
    v_new[i] = state.chart_v.f[i] + 0.5 * dtau * (k1v[i] + k2v[i]);
  v_new[n_act - 1] = u1[n_act - 1];
  v_new[n_act] = u1[n_act];
  check_finite(v_new, tau1, "outer chart");
  check_positive(v_new, tau1, "outer chart");

  // Re-derive the live outer-chart length from the tip chart's outermost
  // node, which sits at the overlap top v = 2 theta (edge_index_for), then
  // donate the exchange nodes at the settled edge.
  Chart1D cv_new{state.chart_v.x, v_new};
  Chart1D cy_new{state.chart_y.x, y_new};
  const MonotoneCubic inv_tip_new = tip_inverter(cy_new, tau1);
  const int n_act_new = edge_index_for(y_new[ny - 1], y_new[0], dy);
  require(n_act_new >= 8, ErrorKind::chart_breakdown,
          "outer chart shrank below 9 nodes, " + tau_tag(tau1));
  require(n_act_new <= n_act + 2, ErrorKind::chart_breakdown,
          "outer chart grew by more than two nodes in one step, " +
              tau_tag(tau1));
  require((n_act_new - 1) * dy >= y_new[ny - 1],
          ErrorKind::chart_breakdown,
          "tip band narrower than the two exchange nodes need (reduce dy), " +
              tau_tag(tau1));
  cv_new.x.resize(n_act_new + 1);
  cv_new.f.resize(n_act_new + 1);
  for (int i = n_act + 1; i <= n_act_new; ++i) cv_new.x[i] = i * dy;
  donate_edge(inv_tip_new, n_act_new, y_new, &cv_new.f, tau1);
  check_positive(cv_new.f, tau1, "outer chart");

  // Final Dirichlet refresh of the tip chart's outer node from the settled
  // outer chart.
  cy_new.f[ny - 1] =
      eval_tail(tail_inverter(cv_new, two_theta, tau1), two_theta);
  check_finite(cy_new.f, tau1, "tip chart");
  check_positive(cy_new.f, tau1, "tip chart");

  ProfileState out;
  out.params = p;
  out.tau = tau1;
  out.chart_v = std::move(cv_new);
  out.chart_y = std::move(cy_new);
  out.overlap_lo = out.chart_v.f.back();
  out.overlap_hi = two_theta;

  // Overlap consistency: both charts must describe the same curve on
  // [overlap_lo, 2 theta].
  const double tol =
      controls.chart_tol_factor * std::sqrt(std::abs(tau1));
  const MonotoneCubic tail = tail_inverter(out.chart_v, two_theta, tau1);
  double mismatch = 0.0;
  for (int j = 0; j < ny; ++j) {
    const double v = out.chart_y.x[j];
    if (v < out.overlap_lo || v > two_theta) continue;
    mismatch = std::max(mismatch, std::abs(out.chart_y.f[j] - tail.eval(v)));
  }
  require(mismatch <= 10.0 * tol, ErrorKind::chart_breakdown,
          "overlap mismatch " + std::to_string(mismatch) + " exceeds 10 x " +
              std::to_string(tol) + ", " + tau_tag(tau1));
  return out;
}

std::vector<double> invert_profile(const Chart1D& chart_v,
                                   const std::vector<double>& v_targets) {
  const int n = chart_v.n();
  require(n >= 3, ErrorKind::invalid_argument,
          "invert_profile: need at least 3 samples");
  std::vector<double> vs(n), ys(n);
  for (int i = 0; i < n; ++i) {
    vs[i] = chart_v.f[n - 1 - i];
    ys[i] = chart_v.x[n - 1 - i];
  }
  for (int i = 1; i < n; ++i)
    require(vs[i] > vs[i - 1], ErrorKind::invalid_argument,
            "invert_profile: chart is not strictly monotone");
  const MonotoneCubic inv(std::move(vs), std::move(ys));
  std::vector<double> out(v_targets.size());
  for (size_t t = 0; t < v_targets.size(); ++t) {
    require(v_targets[t] >= inv.x_min() && v_targets[t] <= inv.x_max(),
            ErrorKind::out_of_domain,
            "invert_profile: target " + std::to_string(v_targets[t]) +
                " outside the sampled range [" + std::to_string(inv.x_min()) +
                ", " + std::to_string(inv.x_max()) + "]");
    out[t] = inv.eval(v_targets[t]);
  }
  return out;
}

GraphicalRadius graphical_radius_check(const ProfileState& state, double tau) {
  require(tau < 0.0, ErrorKind::invalid_argument,
          "graphical_radius_check: tau must be negative");
  const double at = std::abs(tau);
  const double r_ball = 2.0 * std::pow(at, 0.01);
  const double dy = state.dy();
  const int i_ball = static_cast<int>(std::floor(r_ball / dy));
  require(i_ball + 2 < state.chart_v.n(), ErrorKind::invalid_argument,
          "graphical_radius_check: ball radius " + std::to_string(r_ball) +
              " exceeds the outer chart coverage");

  // Even extension around the axis so centered stencils apply at y >= 0.
  const int pad = 4;
  std::vector<double> w(i_ball + 3 + pad);
  for (int j = 0; j < static_cast<int>(w.size()); ++j)
    w[j] = state.chart_v.f[std::abs(j - pad)] - state.params.radius;

  double worst = 0.0;
  for (int i = 0; i <= i_ball; ++i) {
    const int j = i + pad;
    worst = std::max({worst, std::abs(w[j]),
                      std::abs(d1_center2(w, j, dy)),
                      std::abs(d2_center2(w, j, dy)),
                      std::abs(d3_center2(w, j, dy)),
                      std::abs(d4_center2(w, j, dy))});
  }
  GraphicalRadius out;
  out.value = std::pow(at, 0.02) * worst;
  out.ok = out.value <= 1.0;
  return out;
}

}  // namespace ovallab::flow
