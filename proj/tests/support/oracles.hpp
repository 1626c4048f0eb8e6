/// @file oracles.hpp
/// @brief Independent reference implementations used only by tests.
///
/// Everything here is deliberately written with different algorithms than the
/// library under test: adaptive Simpson instead of Gaussian quadrature,
/// scaled Taylor series instead of an ODE integrator, closed-form moment
/// recursions instead of sampled sums.  Agreement between the two paths is
/// the evidence the tests rely on.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <random>

namespace oracles {

/// Adaptive Simpson quadrature on [a, b] to absolute tolerance tol.
inline double simpson_rec(const std::function<double(double)>& f, double a,
                          double b, double fa, double fm, double fb, double whole,
                          double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-12) {
  // Pre-split into panels so that sharply peaked integrands cannot fool the
  // first convergence estimate, then refine each panel adaptively.
  const int panels = 32;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double pa = a + (b - a) * p / panels;
    const double pb = a + (b - a) * (p + 1) / panels;
    const double m = 0.5 * (pa + pb);
    const double fa = f(pa), fm = f(m), fb = f(pb);
    const double whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
    total += simpson_rec(f, pa, pb, fa, fm, fb, whole, tol / panels, 44);
  }
  return total;
}

/// Integral of f(y) exp(-y^2/4) over the real line (truncated at |y| = 60,
/// far below double precision of the weight).
inline double gauss_integral_1d(const std::function<double(double)>& f,
                                double tol = 1e-12) {
  return integrate([&](double y) { return f(y) * std::exp(-0.25 * y * y); },
                   -60.0, 60.0, tol);
}

/// Moment recursion: integral of y^{2m} exp(-y^2/4) dy = 2 sqrt(pi) *
/// (2m-1)!! * 2^m  (odd moments vanish).
inline double gauss_even_moment(int m) {
  double val = 2.0 * std::sqrt(M_PI);
  for (int j = 1; j <= m; ++j) val *= 2.0 * (2.0 * j - 1.0);
  return val;
}

/// Matrix exponential by scaling and squaring with a long Taylor series;
/// adequate (and independent of any library routine) for the small matrices
/// in these tests.
inline Eigen::MatrixXd expm(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int s = 0;
  while (norm / std::pow(2.0, s) > 0.5) ++s;
  const Eigen::MatrixXd b = a / std::pow(2.0, s);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd sum = term;
  for (int kk = 1; kk <= 30; ++kk) {
    term = term * b / kk;
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

/// Deterministic RNG for property tests.
inline std::mt19937_64 rng(uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace oracles
