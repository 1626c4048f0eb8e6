/// @file spectral_dynamics.cpp
/// @brief Riccati and xi-system integrators, spectrum-to-xi map, phase portrait.

#include "ovallab/spectral_dynamics/spectral_dynamics.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <sstream>

#include "ovallab/core/csv.hpp"
#include "ovallab/core/errors.hpp"

namespace ovallab {
namespace {

void check_symmetric_square(const Eigen::MatrixXd& a, const char* what) {
  require(a.rows() >= 1 && a.rows() == a.cols(), ErrorKind::invalid_argument,
          std::string(what) + " must be a non-empty square matrix");
  require(a.allFinite(), ErrorKind::invalid_argument,
          std::string(what) + " has non-finite entries");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  require((a - a.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale,
          ErrorKind::invalid_argument, std::string(what) + " is not symmetric");
}

void check_ode_options(double step, double norm_cap, int record_stride) {
  require(step > 0.0, ErrorKind::invalid_argument, "step must be positive");
  require(norm_cap > 0.0, ErrorKind::invalid_argument, "norm_cap must be positive");
  require(record_stride >= 1, ErrorKind::invalid_argument,
          "record_stride must be at least 1");
}

/// Exact for the small k used here (products of small integers).
double binomial(int k, int j) {
  double c = 1.0;
  for (int i = 1; i <= j; ++i) c = c * static_cast<double>(k - i + 1) / i;
  return c;
}

/// e[j] = j-th elementary symmetric polynomial of the entries, e[0] = 1.
std::vector<double> elementary_symmetric(const Eigen::VectorXd& lambda) {
  std::vector<double> e(static_cast<size_t>(lambda.size()) + 1, 0.0);
  e[0] = 1.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    for (Eigen::Index j = i + 1; j >= 1; --j) {
      e[static_cast<size_t>(j)] += lambda(i) * e[static_cast<size_t>(j - 1)];
    }
  }
  return e;
}

[[noreturn]] void throw_blow_up(const char* system, const char* time_name,
                                double time_value) {
  std::ostringstream msg;
  msg << system << " trajectory exceeded the norm cap at " << time_name << " = "
      << time_value;
  throw LabError(ErrorKind::blow_up, msg.str());
}

struct XiRun {
  std::vector<XiState> states;
  bool blew_up = false;
  double sigma_fail = 0.0;
};

/// Shared body of integrate_xi: on blow-up it stops and reports instead of
/// throwing, so phase_portrait can keep the partial trajectory.
XiRun run_xi(const Eigen::VectorXd& xi0, double sigma_from, double sigma_to,
             const XiOptions& opts, const XiForcing& error_fn) {
  require(xi0.size() >= 1, ErrorKind::invalid_argument,
          "initial xi vector is empty");
  require(xi0.allFinite(), ErrorKind::invalid_argument,
          "initial xi vector has non-finite entries");
  check_ode_options(opts.step, opts.norm_cap, opts.record_stride);
  const int k = static_cast<int>(xi0.size());
  const Eigen::MatrixXd b = build_b_matrix(k);

  const auto rhs = [&](const Eigen::VectorXd& xi, double sigma) {
    Eigen::VectorXd r = b * xi;
    if (opts.include_quadratic) r -= static_cast<double>(k) * xi(0) * xi;
    if (error_fn) {
      const Eigen::VectorXd e = error_fn(sigma);
      require(e.size() == xi.size(), ErrorKind::invalid_argument,
              "xi forcing returned a vector of the wrong dimension");
      r += e;
    }
    return r;
  };

  XiRun run;
  run.states.push_back({xi0, sigma_from});
  const double range = sigma_to - sigma_from;
  if (range == 0.0) return run;

  // Relative guard so an integer range/step rounds down, not up by one.
  const long n_steps = std::max(
      1L, std::lround(std::ceil(std::abs(range) / opts.step * (1.0 - 1e-12))));
  const double dt = range / static_cast<double>(n_steps);

  Eigen::VectorXd xi = xi0;
  for (long i = 1; i <= n_steps; ++i) {
    const double sigma = sigma_from + static_cast<double>(i - 1) * dt;
    const Eigen::VectorXd k1 = rhs(xi, sigma);
    const Eigen::VectorXd k2 = rhs(xi + 0.5 * dt * k1, sigma + 0.5 * dt);
    const Eigen::VectorXd k3 = rhs(xi + 0.5 * dt * k2, sigma + 0.5 * dt);
    const Eigen::VectorXd k4 = rhs(xi + dt * k3, sigma + dt);
    xi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double sigma_next = sigma_from + static_cast<double>(i) * dt;
    if (!xi.allFinite() || xi.norm() > opts.norm_cap) {
      run.blew_up = true;
      run.sigma_fail = sigma_next;
      return run;
    }
    if (i % opts.record_stride == 0 || i == n_steps) {
      run.states.push_back({xi, sigma_next});
    }
  }
  return run;
}

/// Least-squares slope of log|xi| against elapsed sigma over the tail (last
/// half) of the recorded states; returns the NEGATED slope so that positive
/// means decay.  NaN when fewer than two usable records exist.
double fit_decay_rate(const std::vector<XiState>& states) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (states.size() < 3) return nan;
  const size_t from = states.size() / 2;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  long count = 0;
  for (size_t i = from; i < states.size(); ++i) {
    const double norm = states[i].xi.norm();
    if (norm <= 0.0) break;  // log undefined; the tail before this suffices
    const double s = std::abs(states[i].sigma - states.front().sigma);
    const double y = std::log(norm);
    sx += s;
    sy += y;
    sxx += s * s;
    sxy += s * y;
    ++count;
  }
  if (count < 2) return nan;
  const double denom = count * sxx - sx * sx;
  if (denom == 0.0) return nan;
  return -(count * sxy - sx * sy) / denom;
}

}  // namespace

Eigen::MatrixXd build_b_matrix(int k) {
  require(k >= 1, ErrorKind::invalid_argument, "need k >= 1");
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(k, k);
  b(0, 0) = -static_cast<double>(2 * k - 1);
  if (k >= 2) b(0, 1) = static_cast<double>(k - 1);
  for (int j = 2; j <= k; ++j) {
    b(j - 1, 0) = -static_cast<double>(k);
    b(j - 1, j - 1) = -static_cast<double>(k - j);
    if (j < k) b(j - 1, j) = static_cast<double>(k - j);
  }
  return b;
}

std::vector<RiccatiState> integrate_riccati(const Eigen::MatrixXd& a0,
                                            double tau_from, double tau_to,
                                            double beta,
                                            const RiccatiOptions& opts,
                                            const RiccatiForcing& e_fn) {
  check_symmetric_square(a0, "initial coefficient matrix");
  require(tau_from < tau_to && tau_to < 0.0, ErrorKind::invalid_argument,
          "need tau_from < tau_to < 0");
  require(beta > 0.0, ErrorKind::invalid_argument, "beta must be positive");
  check_ode_options(opts.step, opts.norm_cap, opts.record_stride);

  const auto rhs = [&](const Eigen::MatrixXd& a, double tau) {
    Eigen::MatrixXd r = -(a * a) / beta;
    if (e_fn) {
      const Eigen::MatrixXd e = e_fn(tau);
      require(e.rows() == a.rows() && e.cols() == a.cols(),
              ErrorKind::invalid_argument,
              "Riccati forcing returned a matrix of the wrong shape");
      r += e;
    }
    return r;
  };

  Eigen::MatrixXd a = 0.5 * (a0 + a0.transpose());
  if (a.norm() > opts.norm_cap) throw_blow_up("Riccati", "tau", tau_from);

  std::vector<RiccatiState> trajectory;
  trajectory.push_back({a, tau_from});

  const double range = tau_to - tau_from;
  // Relative guard so an integer range/step rounds down, not up by one.
  const long n_steps =
      std::max(1L, std::lround(std::ceil(range / opts.step * (1.0 - 1e-12))));
  const double dt = range / static_cast<double>(n_steps);

  for (long i = 1; i <= n_steps; ++i) {
    const double tau = tau_from + static_cast<double>(i - 1) * dt;
    const Eigen::MatrixXd k1 = rhs(a, tau);
    const Eigen::MatrixXd k2 = rhs(a + 0.5 * dt * k1, tau + 0.5 * dt);
    const Eigen::MatrixXd k3 = rhs(a + 0.5 * dt * k2, tau + 0.5 * dt);
    const Eigen::MatrixXd k4 = rhs(a + dt * k3, tau + dt);
    a += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    a = 0.5 * (a + a.transpose()).eval();
    const double tau_next = tau_from + static_cast<double>(i) * dt;
    if (!a.allFinite() || a.norm() > opts.norm_cap) {
      throw_blow_up("Riccati", "tau", tau_next);
    }
    if (i % opts.record_stride == 0 || i == n_steps) {
      trajectory.push_back({a, tau_next});
    }
  }
  return trajectory;
}

Eigen::VectorXd xi_from_a(const Eigen::MatrixXd& a, double tau,
                          const CylinderParams& params) {
  require(tau < 0.0, ErrorKind::invalid_argument, "xi map needs tau < 0");
  require(a.rows() == params.k && a.cols() == params.k,
          ErrorKind::invalid_argument,
          "coefficient matrix does not match the cylinder dimension k");
  check_symmetric_square(a, "coefficient matrix");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  require(solver.info() == Eigen::Success, ErrorKind::invalid_argument,
          "eigenvalue decomposition of the coefficient matrix failed");
  const std::vector<double> e = elementary_symmetric(solver.eigenvalues());

  const double ratio = tau / params.beta;
  Eigen::VectorXd xi(params.k);
  double ratio_pow = 1.0;
  for (int j = 1; j <= params.k; ++j) {
    ratio_pow *= ratio;
    xi(j - 1) = ratio_pow * e[static_cast<size_t>(j)] / binomial(params.k, j) - 1.0;
  }
  return xi;
}

std::vector<XiState> integrate_xi(const Eigen::VectorXd& xi0,
                                  double sigma_from, double sigma_to,
                                  const XiOptions& opts,
                                  const XiForcing& error_fn) {
  XiRun run = run_xi(xi0, sigma_from, sigma_to, opts, error_fn);
  if (run.blew_up) throw_blow_up("xi", "sigma", run.sigma_fail);
  return run.states;
}

const char* xi_fate_name(XiFate fate) {
  switch (fate) {
    case XiFate::fixed_point: return "fixed";
    case XiFate::to_zero: return "to-zero";
    case XiFate::elsewhere: return "elsewhere";
    case XiFate::blow_up: return "blow-up";
  }
  return "unknown";
}

std::vector<PhasePortraitRow> phase_portrait(int k,
                                             const std::vector<Eigen::VectorXd>& seeds,
                                             double sigma_span,
                                             const XiOptions& opts) {
  require(k >= 1, ErrorKind::invalid_argument, "need k >= 1");
  require(sigma_span > 0.0, ErrorKind::invalid_argument,
          "sigma_span must be positive");

  std::vector<PhasePortraitRow> rows;
  rows.reserve(2 * seeds.size());
  for (const Eigen::VectorXd& seed : seeds) {
    require(seed.size() == k, ErrorKind::invalid_argument,
            "seed dimension does not match k");
    const double seed_norm = seed.norm();
    require(seed_norm <= 0.2, ErrorKind::invalid_argument,
            "seed lies outside the |xi| <= 0.2 neighborhood of the origin");
    for (const bool forward : {true, false}) {
      PhasePortraitRow row;
      row.xi0 = seed;
      row.forward = forward;
      if (seed_norm == 0.0) {
        // The field vanishes identically at xi = 0; nothing to integrate.
        row.fate = XiFate::fixed_point;
        row.rate = std::numeric_limits<double>::quiet_NaN();
        row.final_norm = 0.0;
        rows.push_back(row);
        continue;
      }
      const double sigma_to = forward ? sigma_span : -sigma_span;
      const XiRun run = run_xi(seed, 0.0, sigma_to, opts, {});
      row.final_norm = run.states.back().xi.norm();
      if (run.blew_up) {
        row.fate = XiFate::blow_up;
      } else if (row.final_norm <= std::max(1e-9, 1e-3 * seed_norm)) {
        row.fate = XiFate::to_zero;
      } else {
        row.fate = XiFate::elsewhere;
      }
      row.rate = fit_decay_rate(run.states);
      rows.push_back(row);
    }
  }
  return rows;
}

void write_riccati_csv(const std::string& path,
                       const std::vector<RiccatiState>& trajectory) {
  require(!trajectory.empty(), ErrorKind::invalid_argument,
          "cannot write an empty trajectory");
  const Eigen::Index k = trajectory.front().a.rows();
  std::vector<std::string> header{"tau"};
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      header.push_back("a_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    }
  }
  header.push_back("frobenius_norm");

  std::vector<std::vector<double>> rows;
  rows.reserve(trajectory.size());
  for (const RiccatiState& state : trajectory) {
    std::vector<double> row{state.tau};
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) row.push_back(state.a(i, j));
    }
    row.push_back(state.a.norm());
    rows.push_back(std::move(row));
  }
  write_csv(path, header, rows);
}

void write_xi_csv(const std::string& path,
                  const std::vector<XiState>& trajectory) {
  require(!trajectory.empty(), ErrorKind::invalid_argument,
          "cannot write an empty trajectory");
  const Eigen::Index k = trajectory.front().xi.size();
  std::vector<std::string> header{"sigma"};
  for (Eigen::Index j = 0; j < k; ++j) {
    header.push_back("xi_" + std::to_string(j + 1));
  }
  header.push_back("norm");

  std::vector<std::vector<double>> rows;
  rows.reserve(trajectory.size());
  for (const XiState& state : trajectory) {
    std::vector<double> row{state.sigma};
    for (Eigen::Index j = 0; j < k; ++j) row.push_back(state.xi(j));
    row.push_back(state.xi.norm());
    rows.push_back(std::move(row));
  }
  write_csv(path, header, rows);
}

void write_phase_portrait_json(const std::string& path,
                               const std::vector<PhasePortraitRow>& rows,
                               int k, double sigma_span) {
  nlohmann::json doc;
  doc["k"] = k;
  doc["sigma_span"] = sigma_span;
  nlohmann::json table = nlohmann::json::array();
  for (const PhasePortraitRow& row : rows) {
    nlohmann::json entry;
    entry["xi0"] = std::vector<double>(row.xi0.data(), row.xi0.data() + row.xi0.size());
    entry["direction"] = row.forward ? "forward" : "backward";
    entry["fate"] = xi_fate_name(row.fate);
    entry["rate"] = row.rate;  // NaN serializes as null
    entry["final_norm"] = row.final_norm;
    table.push_back(entry);
  }
  doc["rows"] = table;
  write_text_file(path, doc.dump(2) + "\n");
}

}  // namespace ovallab
