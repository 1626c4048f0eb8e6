#include "ovallab/gauss_spectral/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "ovallab/core/errors.hpp"

namespace ovallab {
namespace {

/// Golub–Welsch: nodes/weights of the Gaussian rule for the orthogonal
/// polynomial family with Jacobi matrix diag(alpha), offdiag(sqrt(beta)),
/// and total weight mu0.  Nodes are the eigenvalues, weights are
/// mu0 * (first eigenvector component)^2.
void golub_welsch(const Eigen::VectorXd& alpha, const Eigen::VectorXd& sqrt_beta,
                  double mu0, std::vector<double>* nodes,
                  std::vector<double>* weights) {
  const int n = static_cast<int>(alpha.size());
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    jacobi(i, i) = alpha(i);
    if (i + 1 < n) {
      jacobi(i, i + 1) = sqrt_beta(i);
      jacobi(i + 1, i) = sqrt_beta(i);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  require(eig.info() == Eigen::Success, ErrorKind::integration_failure,
          "quadrature eigensolve failed");
  nodes->resize(n);
  weights->resize(n);
  for (int i = 0; i < n; ++i) {
    (*nodes)[i] = eig.eigenvalues()(i);
    const double v0 = eig.eigenvectors()(0, i);
    (*weights)[i] = mu0 * v0 * v0;
  }
}

}  // namespace

QuadratureRule build_quadrature(int dim, int order) {
  require(dim == 1 || dim == 2, ErrorKind::invalid_argument,
          "quadrature dim must be 1 or 2, got " + std::to_string(dim));
  require(order >= 4, ErrorKind::invalid_argument,
          "quadrature order must be >= 4, got " + std::to_string(order));

  // Hermite weight exp(-x^2): alpha_i = 0, beta_i = i/2, mu0 = sqrt(pi).
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(order);
  Eigen::VectorXd sqrt_beta(order - 1);
  for (int i = 1; i < order; ++i) sqrt_beta(i - 1) = std::sqrt(0.5 * i);
  std::vector<double> x, w;
  golub_welsch(alpha, sqrt_beta, std::sqrt(M_PI), &x, &w);

  QuadratureRule rule;
  rule.dim = dim;
  rule.order = order;
  rule.degree = 2 * order - 1;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  // Map y = 2x (so the weight becomes exp(-y^2/4)) and symmetrize exactly:
  // averaging each node with its mirrored partner removes the eigensolver's
  // last-ulp asymmetry, making the rule exactly even.
  for (int i = 0; i < order; ++i) {
    const int j = order - 1 - i;
    rule.nodes[i] = (2.0 * x[i] - 2.0 * x[j]) / 2.0;
    rule.weights[i] = (2.0 * w[i] + 2.0 * w[j]) / 2.0;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

RadialRule build_radial_rule(int k, int order) {
  require(k == 1 || k == 2, ErrorKind::invalid_argument,
          "radial rule supports k = 1 or 2, got " + std::to_string(k));
  require(order >= 4, ErrorKind::invalid_argument,
          "radial rule order must be >= 4, got " + std::to_string(order));
  RadialRule rr;
  rr.k = k;
  if (k == 1) {
    // Fold the symmetric 1-D rule onto r >= 0.
    const QuadratureRule base = build_quadrature(1, order);
    for (int i = 0; i < base.order; ++i) {
      const double y = base.nodes[i];
      if (y < 0.0) continue;
      const double w = (y == 0.0) ? base.weights[i] : 2.0 * base.weights[i];
      rr.r.push_back(y);
      rr.w.push_back(w);
    }
  } else {
    // integral_{R^2} f(|y|) e^{-|y|^2/4} dy = 4 pi int_0^inf f(2 sqrt(u)) e^{-u} du.
    // Laguerre weight e^{-u}: alpha_i = 2i+1, beta_i = i^2, mu0 = 1.
    Eigen::VectorXd alpha(order), sqrt_beta(order - 1);
    for (int i = 0; i < order; ++i) alpha(i) = 2.0 * i + 1.0;
    for (int i = 1; i < order; ++i) sqrt_beta(i - 1) = i;
    std::vector<double> u, w;
    golub_welsch(alpha, sqrt_beta, 1.0, &u, &w);
    for (int i = 0; i < order; ++i) {
      rr.r.push_back(2.0 * std::sqrt(u[i]));
      rr.w.push_back(4.0 * M_PI * w[i]);
    }
  }
  return rr;
}

double sphere_surface(int k) {
  require(k >= 1, ErrorKind::invalid_argument, "sphere_surface needs k >= 1");
  // |S^{k-1}| = 2 pi^{k/2} / Gamma(k/2).
  return 2.0 * std::pow(M_PI, 0.5 * k) / std::tgamma(0.5 * k);
}

}  // namespace ovallab
