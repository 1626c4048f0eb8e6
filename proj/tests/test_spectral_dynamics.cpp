/// @file test_spectral_dynamics.cpp
/// @brief Riccati/xi integrators: exact trajectories, spectral maps, portraits.
///
/// PURPOSE: the companion matrix must match its integer pattern and carry
/// eigenvalues -1..-k; the Riccati integrator must reproduce the scaling
/// trajectory (beta/tau) I, follow the scalar closed form per eigenvalue for
/// diagonal data, keep symmetry bit-exact, converge at 4th order, and detect
/// blow-up; the xi map must agree with an independent Newton's-identities
/// oracle and be conjugation-invariant; the xi integrator must match a dense
/// matrix exponential when linearized and be consistent with mapped Riccati
/// trajectories; the phase portrait must classify the origin's neighborhood.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <vector>

#include <json.hpp>

#include "ovallab/core/csv.hpp"
#include "ovallab/core/errors.hpp"
#include "ovallab/core/params.hpp"
#include "ovallab/spectral_dynamics/spectral_dynamics.hpp"
#include "support/oracles.hpp"

using namespace ovallab;

namespace {

/// Scalar Riccati closed form through (tau1, a1) for da/dtau = -a^2/beta.
/// (Solves d(1/a)/dtau = 1/beta, hence the plus sign in the denominator;
/// substituting a1 = beta/tau1 recovers the exact scaling solution beta/tau.)
double scalar_riccati(double a1, double tau1, double beta, double tau) {
  return a1 * beta / (beta + a1 * (tau - tau1));
}

/// Derivative at x0 of the quadratic through (xm,fm), (x0,f0), (xp,fp);
/// tolerates non-uniform and descending abscissae.
double lagrange_deriv(double xm, double fm, double x0, double f0, double xp,
                      double fp) {
  return fm * (x0 - xp) / ((xm - x0) * (xm - xp)) +
         f0 * (2.0 * x0 - xm - xp) / ((x0 - xm) * (x0 - xp)) +
         fp * (x0 - xm) / ((xp - x0) * (xp - xm));
}

Eigen::MatrixXd random_symmetric(int k, double scale, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  Eigen::MatrixXd m(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      m(i, j) = dist(gen);
      m(j, i) = m(i, j);
    }
  }
  return m;
}

Eigen::MatrixXd random_orthogonal(int k, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd m(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) m(i, j) = dist(gen);
  }
  return Eigen::HouseholderQR<Eigen::MatrixXd>(m).householderQ();
}

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("build_b_matrix: exact integer pattern") {
  const Eigen::MatrixXd b1 = build_b_matrix(1);
  REQUIRE(b1.rows() == 1);
  CHECK(b1(0, 0) == -1.0);

  const Eigen::MatrixXd b2 = build_b_matrix(2);
  CHECK(b2(0, 0) == -3.0);
  CHECK(b2(0, 1) == 1.0);
  CHECK(b2(1, 0) == -2.0);
  CHECK(b2(1, 1) == 0.0);

  Eigen::MatrixXd b3_expected(3, 3);
  b3_expected << -5, 2, 0, -3, -1, 1, -3, 0, 0;
  CHECK((build_b_matrix(3) - b3_expected).cwiseAbs().maxCoeff() == 0.0);

  // General pattern at k = 5: first row, interior band, last row, zeros.
  const int k = 5;
  const Eigen::MatrixXd b5 = build_b_matrix(k);
  CHECK(b5(0, 0) == -(2.0 * k - 1.0));
  CHECK(b5(0, 1) == k - 1.0);
  for (int j = 2; j <= k; ++j) {
    CHECK(b5(j - 1, 0) == -static_cast<double>(k));
    CHECK(b5(j - 1, j - 1) == -static_cast<double>(k - j));
    if (j < k) CHECK(b5(j - 1, j) == static_cast<double>(k - j));
  }
  CHECK(b5(k - 1, 0) == -static_cast<double>(k));
  for (int j = 1; j < k; ++j) CHECK(b5(k - 1, j) == 0.0);
  int nonzeros = 0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (b5(i, j) != 0.0) ++nonzeros;
    }
  }
  // Column 1 (rows 1..k via the first-row diagonal), nonzero diagonals on
  // rows 2..k-1, and the superdiagonal band: 2 + (k-1) + (k-2) + (k-2).
  CHECK(nonzeros == 3 * k - 3);

  CHECK_THROWS_AS(build_b_matrix(0), LabError);
}

TEST_CASE("build_b_matrix: eigenvalues are -1..-k") {
  for (int k = 1; k <= 6; ++k) {
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(build_b_matrix(k));
    std::vector<double> re(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
      CHECK(std::abs(solver.eigenvalues()(i).imag()) <= 1e-10);
      re[static_cast<size_t>(i)] = solver.eigenvalues()(i).real();
    }
    std::sort(re.begin(), re.end());
    for (int i = 0; i < k; ++i) {
      CHECK(std::abs(re[static_cast<size_t>(i)] - (-(k - i))) <= 1e-10);
    }
  }
}

TEST_CASE("integrate_riccati: scaling trajectory and zero fixed point") {
  const CylinderParams p = default_cylinder_params(7, 2);
  const double tau1 = -100.0;
  const Eigen::MatrixXd a0 = (p.beta / tau1) * Eigen::MatrixXd::Identity(2, 2);
  const auto traj = integrate_riccati(a0, tau1, -20.0, p.beta);
  REQUIRE(traj.size() >= 3);
  CHECK(traj.front().tau == tau1);
  CHECK(traj.back().tau == -20.0);
  double worst = 0.0;
  for (const RiccatiState& s : traj) {
    const Eigen::MatrixXd exact =
        (p.beta / s.tau) * Eigen::MatrixXd::Identity(2, 2);
    worst = std::max(worst, (s.a - exact).cwiseAbs().maxCoeff());
  }
  CHECK(worst <= 1e-6);

  const auto zero =
      integrate_riccati(Eigen::MatrixXd::Zero(2, 2), -5.0, -1.0, p.beta);
  for (const RiccatiState& s : zero) {
    CHECK(s.a.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("integrate_riccati: diagonal data follows the scalar closed form") {
  const CylinderParams p = default_cylinder_params(7, 2);
  const double tau1 = -50.0;
  // Second eigenvalue 2 beta/tau1 has a forward-time pole at tau = tau1/2;
  // the window stops at -30, safely before it.
  Eigen::MatrixXd a0 = Eigen::MatrixXd::Zero(2, 2);
  a0(0, 0) = p.beta / tau1;
  a0(1, 1) = 2.0 * p.beta / tau1;
  const auto traj = integrate_riccati(a0, tau1, -30.0, p.beta);
  double worst = 0.0;
  for (const RiccatiState& s : traj) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        s.a, Eigen::EigenvaluesOnly);
    // Ascending eigenvalues: the doubled branch stays below the beta/tau one.
    const double lo = scalar_riccati(2.0 * p.beta / tau1, tau1, p.beta, s.tau);
    const double hi = scalar_riccati(p.beta / tau1, tau1, p.beta, s.tau);
    worst = std::max(worst, std::abs(es.eigenvalues()(0) - lo));
    worst = std::max(worst, std::abs(es.eigenvalues()(1) - hi));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("integrate_riccati: symmetry bit-exact even under asymmetric forcing") {
  auto gen = oracles::rng(20260815);
  const Eigen::MatrixXd a0 = random_symmetric(3, 0.02, gen);
  Eigen::MatrixXd drift(3, 3);
  // Deliberately asymmetric forcing: the integrator symmetrizes the state.
  drift << 0.01, 0.004, -0.002, 0.0, -0.01, 0.003, 0.005, 0.0, 0.002;
  const auto e_fn = [&drift](double tau) {
    return Eigen::MatrixXd(drift * std::exp(tau / 20.0));
  };
  // beta = 2 keeps the quadratic term mild: with eigenvalues ~ -0.04 the
  // scalar pole tau1 + beta/|a| sits far beyond the window's right end.
  const auto traj = integrate_riccati(a0, -20.0, -5.0, 2.0, {}, e_fn);
  REQUIRE(traj.size() >= 3);
  for (const RiccatiState& s : traj) {
    CHECK((s.a - s.a.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(s.a.allFinite());
  }
}

TEST_CASE("integrate_riccati: fourth-order step halving and blow-up") {
  const double beta = 0.5;
  const double tau1 = -10.0, tau2 = -2.0;
  const Eigen::MatrixXd a0 =
      (beta / tau1) * Eigen::MatrixXd::Identity(1, 1);
  const auto error_at = [&](double step) {
    RiccatiOptions opts;
    opts.step = step;
    const auto traj = integrate_riccati(a0, tau1, tau2, beta, opts);
    return std::abs(traj.back().a(0, 0) - beta / tau2);
  };
  const double e_coarse = error_at(0.1);
  const double e_fine = error_at(0.05);
  CHECK(e_coarse > 1e-12);  // must sit well above roundoff for the ratio
  const double ratio = e_coarse / e_fine;
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);

  // a1 = -beta puts the closed-form pole at tau = -9, inside the window.
  const Eigen::MatrixXd bad0 = -beta * Eigen::MatrixXd::Identity(1, 1);
  CHECK_THROWS_AS(integrate_riccati(bad0, -10.0, -8.0, beta), LabError);
  try {
    integrate_riccati(bad0, -10.0, -8.0, beta);
  } catch (const LabError& e) {
    CHECK(e.kind() == ErrorKind::blow_up);
    CHECK(std::string(e.what()).find("tau") != std::string::npos);
  }
}

TEST_CASE("integrate_riccati: preconditions") {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS_AS(integrate_riccati(id, -1.0, -2.0, 0.5), LabError);   // order
  CHECK_THROWS_AS(integrate_riccati(id, -2.0, 1.0, 0.5), LabError);    // sign
  CHECK_THROWS_AS(integrate_riccati(id, -2.0, -1.0, 0.0), LabError);   // beta
  Eigen::MatrixXd skew(2, 2);
  skew << 0.0, 1.0, -1.0, 0.0;
  CHECK_THROWS_AS(integrate_riccati(skew, -2.0, -1.0, 0.5), LabError);
  RiccatiOptions bad;
  bad.record_stride = 0;
  CHECK_THROWS_AS(integrate_riccati(id, -2.0, -1.0, 0.5, bad), LabError);
}

TEST_CASE("xi_from_a: closed forms and conjugation invariance") {
  const CylinderParams p2 = default_cylinder_params(7, 2);
  const double tau = -7.0;

  const Eigen::MatrixXd scaling =
      (p2.beta / tau) * Eigen::MatrixXd::Identity(2, 2);
  CHECK(xi_from_a(scaling, tau, p2).cwiseAbs().maxCoeff() <= 1e-14);

  const Eigen::VectorXd at_zero =
      xi_from_a(Eigen::MatrixXd::Zero(2, 2), tau, p2);
  CHECK(at_zero(0) == -1.0);
  CHECK(at_zero(1) == -1.0);

  Eigen::MatrixXd doubled = Eigen::MatrixXd::Zero(2, 2);
  doubled(0, 0) = p2.beta / tau;
  doubled(1, 1) = 2.0 * p2.beta / tau;
  const Eigen::VectorXd xi = xi_from_a(doubled, tau, p2);
  CHECK(std::abs(xi(0) - 0.5) <= 1e-12);
  CHECK(std::abs(xi(1) - 1.0) <= 1e-12);

  // Independent oracle: elementary symmetric polynomials from power sums
  // (Newton's identities) instead of the coefficient recurrence.
  const CylinderParams p4 = default_cylinder_params(9, 4);
  auto gen = oracles::rng(414243);
  const Eigen::MatrixXd a = random_symmetric(4, 0.3, gen);
  const double tau4 = -3.0;
  double p1 = a.trace();
  double pw2 = (a * a).trace();
  double pw3 = (a * a * a).trace();
  double pw4 = (a * a * a * a).trace();
  const double e1 = p1;
  const double e2 = (e1 * p1 - pw2) / 2.0;
  const double e3 = (e2 * p1 - e1 * pw2 + pw3) / 3.0;
  const double e4 = (e3 * p1 - e2 * pw2 + e1 * pw3 - pw4) / 4.0;
  const double r = tau4 / p4.beta;
  const double binom[5] = {1.0, 4.0, 6.0, 4.0, 1.0};
  const double es[5] = {1.0, e1, e2, e3, e4};
  const Eigen::VectorXd got = xi_from_a(a, tau4, p4);
  for (int j = 1; j <= 4; ++j) {
    const double want = std::pow(r, j) * es[j] / binom[j] - 1.0;
    CHECK(std::abs(got(j - 1) - want) <= 1e-10);
  }

  // Spectrum-only dependence: conjugating by an orthogonal matrix changes
  // nothing.
  const CylinderParams p3 = default_cylinder_params(8, 3);
  const Eigen::MatrixXd a3 = random_symmetric(3, 0.4, gen);
  const Eigen::MatrixXd u = random_orthogonal(3, gen);
  const Eigen::MatrixXd conj = u * a3 * u.transpose();
  CHECK((xi_from_a(conj, -2.5, p3) - xi_from_a(a3, -2.5, p3))
            .cwiseAbs()
            .maxCoeff() <= 1e-10);

  CHECK_THROWS_AS(xi_from_a(scaling, 1.0, p2), LabError);       // tau sign
  CHECK_THROWS_AS(xi_from_a(a3, -2.5, p2), LabError);           // dimension
  Eigen::MatrixXd skew(2, 2);
  skew << 0.0, 1.0, -1.0, 0.0;
  CHECK_THROWS_AS(xi_from_a(skew, -2.5, p2), LabError);         // symmetry
}

TEST_CASE("integrate_xi: fixed point and linearization vs matrix exponential") {
  const auto at_origin = integrate_xi(Eigen::VectorXd::Zero(2), 0.0, 3.0);
  for (const XiState& s : at_origin) {
    CHECK(s.xi.cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK(at_origin.front().sigma == 0.0);
  CHECK(at_origin.back().sigma == 3.0);

  auto gen = oracles::rng(515253);
  std::uniform_real_distribution<double> dist(-0.05, 0.05);
  Eigen::VectorXd xi0(3);
  for (int i = 0; i < 3; ++i) xi0(i) = dist(gen);
  XiOptions lin;
  lin.include_quadratic = false;
  const Eigen::MatrixXd b = build_b_matrix(3);
  for (const double sigma_to : {2.0, -2.0}) {
    const auto traj = integrate_xi(xi0, 0.0, sigma_to, lin);
    const Eigen::VectorXd want =
        oracles::expm(Eigen::MatrixXd(b * sigma_to)) * xi0;
    CHECK((traj.back().xi - want).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("mapped Riccati trajectory: S-recursion and xi field consistency") {
  // One unforced matrix trajectory feeds both finite-difference audits.
  const CylinderParams p = default_cylinder_params(7, 2);
  const double tau1 = -50.0;
  Eigen::MatrixXd a0 = Eigen::MatrixXd::Zero(2, 2);
  a0(0, 0) = p.beta / tau1;
  a0(1, 1) = 2.0 * p.beta / tau1;
  RiccatiOptions opts;
  // The second branch steepens toward its pole at tau1/2 = -25; xi'''(sigma)
  // reaches ~1e3 near the right end, so the quadratic-fit derivative needs
  // record spacing ~1e-4 in sigma to push the h^2 error below 1e-6.
  opts.step = 0.0025;
  opts.record_stride = 1;
  const auto traj = integrate_riccati(a0, tau1, -34.0, p.beta, opts);
  REQUIRE(traj.size() >= 100);

  std::vector<double> s1(traj.size()), s2(traj.size()), tau(traj.size());
  std::vector<Eigen::VectorXd> xi(traj.size());
  std::vector<double> sigma(traj.size());
  for (size_t i = 0; i < traj.size(); ++i) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        traj[i].a, Eigen::EigenvaluesOnly);
    const double l0 = es.eigenvalues()(0), l1 = es.eigenvalues()(1);
    s1[i] = l0 + l1;
    s2[i] = l0 * l1;
    tau[i] = traj[i].tau;
    xi[i] = xi_from_a(traj[i].a, traj[i].tau, p);
    // Slow time oriented so the ancient end sits at sigma -> +infinity; with
    // this orientation the mapped trajectory follows the same field that
    // integrate_xi advances.
    sigma[i] = std::log(-traj[i].tau);
  }

  // dS_1/dtau = -(S_1^2 - 2 S_2)/beta and dS_2/dtau = -S_1 S_2/beta.
  double worst_s = 0.0;
  for (size_t i = 1; i + 1 < traj.size(); ++i) {
    const double d1 = lagrange_deriv(tau[i - 1], s1[i - 1], tau[i], s1[i],
                                     tau[i + 1], s1[i + 1]);
    const double d2 = lagrange_deriv(tau[i - 1], s2[i - 1], tau[i], s2[i],
                                     tau[i + 1], s2[i + 1]);
    worst_s = std::max(worst_s,
                       std::abs(d1 + (s1[i] * s1[i] - 2.0 * s2[i]) / p.beta));
    worst_s = std::max(worst_s, std::abs(d2 + (s1[i] * s2[i]) / p.beta));
  }
  CHECK(worst_s <= 1e-6);

  const Eigen::MatrixXd b = build_b_matrix(2);
  double worst_xi = 0.0;
  for (size_t i = 1; i + 1 < traj.size(); ++i) {
    Eigen::VectorXd fd(2);
    for (int c = 0; c < 2; ++c) {
      fd(c) = lagrange_deriv(sigma[i - 1], xi[i - 1](c), sigma[i], xi[i](c),
                             sigma[i + 1], xi[i + 1](c));
    }
    const Eigen::VectorXd field = b * xi[i] - 2.0 * xi[i](0) * xi[i];
    worst_xi = std::max(worst_xi, (fd - field).cwiseAbs().maxCoeff());
  }
  CHECK(worst_xi <= 1e-6);
}

TEST_CASE("integrate_xi: blow-up cap and preconditions") {
  Eigen::VectorXd xi0(1);
  xi0(0) = 0.1;
  // Backward in sigma the k=1 field reads d(xi)/ds = xi + xi^2 (s = -sigma),
  // a logistic with a pole at s = log(1 + 1/0.1) ~= 2.4, inside the span.
  CHECK_THROWS_AS(integrate_xi(xi0, 0.0, -10.0), LabError);
  try {
    integrate_xi(xi0, 0.0, -10.0);
  } catch (const LabError& e) {
    CHECK(e.kind() == ErrorKind::blow_up);
    CHECK(std::string(e.what()).find("sigma") != std::string::npos);
  }

  CHECK_THROWS_AS(integrate_xi(Eigen::VectorXd(), 0.0, 1.0), LabError);
  XiOptions bad;
  bad.step = 0.0;
  CHECK_THROWS_AS(integrate_xi(xi0, 0.0, 1.0, bad), LabError);
}

TEST_CASE("phase_portrait: classification and empirical rates") {
  Eigen::VectorXd origin = Eigen::VectorXd::Zero(1);
  Eigen::VectorXd small(1);
  small(0) = 0.01;
  const auto rows = phase_portrait(1, {origin, small}, 10.0);
  REQUIRE(rows.size() == 4);

  CHECK(rows[0].fate == XiFate::fixed_point);
  CHECK(rows[1].fate == XiFate::fixed_point);
  CHECK(std::isnan(rows[0].rate));

  // Forward: decays like exp(-sigma) (eigenvalue -1 at k=1), so the fitted
  // decay rate sits at 1.
  CHECK(rows[2].forward);
  CHECK(rows[2].fate == XiFate::to_zero);
  CHECK(std::abs(rows[2].rate - 1.0) <= 0.05);
  CHECK(rows[2].final_norm <= 1e-5);

  // Backward: the logistic pole at elapsed log(101) ~= 4.6 < 10 forces a
  // blow-up classification (and a growth, i.e. negative, rate).
  CHECK(!rows[3].forward);
  CHECK(rows[3].fate == XiFate::blow_up);
  CHECK(rows[3].rate < 0.0);

  auto gen = oracles::rng(616263);
  std::uniform_real_distribution<double> dist(-0.03, 0.03);
  std::vector<Eigen::VectorXd> seeds;
  for (int s = 0; s < 2; ++s) {
    Eigen::VectorXd seed(2);
    seed(0) = dist(gen);
    seed(1) = dist(gen);
    seeds.push_back(seed);
  }
  const auto rows2 = phase_portrait(2, seeds, 10.0);
  REQUIRE(rows2.size() == 4);
  for (size_t i = 0; i < rows2.size(); ++i) {
    CHECK(rows2[i].forward == (i % 2 == 0));
    if (rows2[i].forward) {
      CHECK(rows2[i].fate == XiFate::to_zero);
    } else {
      CHECK(rows2[i].fate != XiFate::to_zero);
      CHECK(rows2[i].fate != XiFate::fixed_point);
    }
  }

  Eigen::VectorXd far(1);
  far(0) = 0.3;
  CHECK_THROWS_AS(phase_portrait(1, {far}, 10.0), LabError);       // outside ball
  CHECK_THROWS_AS(phase_portrait(2, {origin}, 10.0), LabError);    // dimension
  CHECK_THROWS_AS(phase_portrait(1, {origin}, 0.0), LabError);     // span
}

TEST_CASE("report files: deterministic csv and json dumps") {
  const CylinderParams p = default_cylinder_params(7, 2);
  Eigen::MatrixXd a0 = Eigen::MatrixXd::Zero(2, 2);
  a0(0, 0) = p.beta / -40.0;
  a0(1, 1) = 1.5 * p.beta / -40.0;
  RiccatiOptions ropts;
  ropts.step = 0.01;
  const auto rtraj = integrate_riccati(a0, -40.0, -35.0, p.beta, ropts);
  const std::string rpath = temp_path("ovallab_riccati_test.csv");
  write_riccati_csv(rpath, rtraj);
  std::vector<std::string> header;
  const auto rows = read_csv(rpath, &header);
  REQUIRE(header.size() == 6);  // tau, 4 matrix entries, norm
  CHECK(header.front() == "tau");
  CHECK(header.back() == "frobenius_norm");
  CHECK(rows.size() == rtraj.size());
  CHECK(rows.front()[0] == -40.0);
  CHECK(rows.back()[0] == -35.0);

  Eigen::VectorXd xi0(2);
  xi0 << 0.02, -0.01;
  const auto xtraj = integrate_xi(xi0, 0.0, 2.0);
  const std::string xpath = temp_path("ovallab_xi_test.csv");
  write_xi_csv(xpath, xtraj);
  const auto xrows = read_csv(xpath, &header);
  REQUIRE(header.size() == 4);  // sigma, xi_1, xi_2, norm
  CHECK(xrows.size() == xtraj.size());
  CHECK(xrows.front()[1] == 0.02);

  const auto portrait = phase_portrait(2, {xi0}, 6.0);
  const std::string jpath1 = temp_path("ovallab_portrait_a.json");
  const std::string jpath2 = temp_path("ovallab_portrait_b.json");
  write_phase_portrait_json(jpath1, portrait, 2, 6.0);
  write_phase_portrait_json(jpath2, portrait, 2, 6.0);
  const std::string text1 = read_text_file(jpath1);
  CHECK(text1 == read_text_file(jpath2));  // byte-identical reruns

  const nlohmann::json doc = nlohmann::json::parse(text1);
  CHECK(doc.at("k").get<int>() == 2);
  CHECK(doc.at("rows").size() == portrait.size());
  CHECK(doc.at("rows")[0].at("direction").get<std::string>() == "forward");
  for (const auto& row : doc.at("rows")) {
    const std::string fate = row.at("fate").get<std::string>();
    CHECK((fate == "fixed" || fate == "to-zero" || fate == "elsewhere" ||
           fate == "blow-up"));
  }
}
