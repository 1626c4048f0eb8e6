#include "ovallab/gauss_spectral/hspace.hpp"

#include <cmath>
#include <string>

#include "ovallab/core/errors.hpp"
#include "ovallab/core/fd.hpp"

namespace ovallab {
namespace {

struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    const double t = x - c;
    const double u = s + t;
    c = (u - s) - t;
    s = u;
  }
};

void check_dim(const FieldFn& f, const QuadratureRule& rule, const char* who) {
  require(f.dim == rule.dim, ErrorKind::invalid_argument,
          std::string(who) + ": field dim " + std::to_string(f.dim) +
              " != rule dim " + std::to_string(rule.dim));
  require(f.dim == 1 ? static_cast<bool>(f.f1) : static_cast<bool>(f.f2),
          ErrorKind::invalid_argument, std::string(who) + ": empty field");
}

/// Sums w * g over the 1-D rule nodes.
template <typename G>
double quad_sum1(const QuadratureRule& rule, G&& g) {
  KahanSum sum;
  for (int i = 0; i < rule.order; ++i)
    sum.add(rule.weights[i] * g(rule.nodes[i]));
  return sum.s;
}

/// Sums w_i w_j g(y_i, y_j) over the tensor-product nodes.
template <typename G>
double quad_sum2(const QuadratureRule& rule, G&& g) {
  KahanSum sum;
  for (int i = 0; i < rule.order; ++i) {
    const double wi = rule.weights[i], yi = rule.nodes[i];
    for (int j = 0; j < rule.order; ++j)
      sum.add(wi * rule.weights[j] * g(yi, rule.nodes[j]));
  }
  return sum.s;
}

/// Dim-general dispatch.
template <typename G1, typename G2>
double quad_sum(const QuadratureRule& rule, G1&& g1, G2&& g2) {
  return rule.dim == 1 ? quad_sum1(rule, g1) : quad_sum2(rule, g2);
}

}  // namespace

FieldFn FieldFn::radial(int dim, std::function<double(double)> f) {
  require(dim == 1 || dim == 2, ErrorKind::invalid_argument,
          "radial field dim must be 1 or 2");
  if (dim == 1) {
    return of1([f = std::move(f)](double y) { return f(std::abs(y)); });
  }
  return of2([f = std::move(f)](double y1, double y2) {
    return f(std::hypot(y1, y2));
  });
}

UniformGrid1D sample1(const std::function<double(double)>& f, double lo,
                      double hi, int n) {
  require(n >= 2 && hi > lo, ErrorKind::invalid_argument, "sample1: bad range");
  UniformGrid1D g;
  g.lo = lo;
  g.h = (hi - lo) / (n - 1);
  g.v.resize(n);
  for (int i = 0; i < n; ++i) g.v[i] = f(g.x(i));
  return g;
}

UniformGrid2D sample2(const std::function<double(double, double)>& f, double lo,
                      double hi, int n) {
  require(n >= 2 && hi > lo, ErrorKind::invalid_argument, "sample2: bad range");
  UniformGrid2D g;
  g.lo1 = g.lo2 = lo;
  g.h = (hi - lo) / (n - 1);
  g.n1 = g.n2 = n;
  g.v.resize(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.at(i, j) = f(g.x1(i), g.x2(j));
  return g;
}

double inner_h(const FieldFn& f, const FieldFn& g, const QuadratureRule& rule) {
  check_dim(f, rule, "inner_h");
  check_dim(g, rule, "inner_h");
  return quad_sum(
      rule, [&](double y) { return f.f1(y) * g.f1(y); },
      [&](double y1, double y2) { return f.f2(y1, y2) * g.f2(y1, y2); });
}

double norm_h(const FieldFn& f, const QuadratureRule& rule) {
  check_dim(f, rule, "norm_h");
  const double s = quad_sum(
      rule, [&](double y) { const double v = f.f1(y); return v * v; },
      [&](double y1, double y2) {
        const double v = f.f2(y1, y2);
        return v * v;
      });
  return std::sqrt(std::max(0.0, s));
}

double norm_d(const FieldFn& f, const QuadratureRule& rule, double fd_h) {
  check_dim(f, rule, "norm_d");
  require(fd_h > 0.0, ErrorKind::invalid_argument, "norm_d: fd_h must be > 0");
  const double nf = norm_h(f, rule);
  const double grad2 = quad_sum(
      rule,
      [&](double y) {
        const double d = (f.f1(y + fd_h) - f.f1(y - fd_h)) / (2.0 * fd_h);
        return d * d;
      },
      [&](double y1, double y2) {
        const double d1 =
            (f.f2(y1 + fd_h, y2) - f.f2(y1 - fd_h, y2)) / (2.0 * fd_h);
        const double d2 =
            (f.f2(y1, y2 + fd_h) - f.f2(y1, y2 - fd_h)) / (2.0 * fd_h);
        return d1 * d1 + d2 * d2;
      });
  return std::sqrt(nf * nf + std::max(0.0, grad2));
}

namespace {

/// First/second derivative arrays that degrade gracefully at n == 5
/// (all 2nd-order) while using the 4th-order interior beyond.
void derivatives_for_ou(const std::vector<double>& f, double h,
                        std::vector<double>* d1, std::vector<double>* d2) {
  const size_t n = f.size();
  require(n >= 5, ErrorKind::invalid_argument,
          "ou_apply needs >= 5 samples per axis");
  if (n >= 6) {
    *d1 = derivative1(f, h);
    *d2 = derivative2(f, h);
    return;
  }
  d1->resize(n);
  d2->resize(n);
  (*d1)[0] = d1_forward2(f, 0, h);
  (*d2)[0] = d2_forward2(f, 0, h);
  for (size_t i = 1; i + 1 < n; ++i) {
    (*d1)[i] = d1_center2(f, i, h);
    (*d2)[i] = d2_center2(f, i, h);
  }
  (*d1)[n - 1] = d1_backward2(f, n - 1, h);
  (*d2)[n - 1] = d2_backward2(f, n - 1, h);
}

}  // namespace

UniformGrid1D ou_apply(const UniformGrid1D& f) {
  std::vector<double> d1, d2;
  derivatives_for_ou(f.v, f.h, &d1, &d2);
  UniformGrid1D out = f;
  for (int i = 0; i < f.n(); ++i)
    out.v[i] = d2[i] - 0.5 * f.x(i) * d1[i] + f.v[i];
  return out;
}

UniformGrid2D ou_apply(const UniformGrid2D& f) {
  require(f.n1 >= 5 && f.n2 >= 5, ErrorKind::invalid_argument,
          "ou_apply needs >= 5 samples per axis");
  UniformGrid2D out = f;
  std::vector<double> line, d1, d2;
  // Axis 2 (contiguous rows): second derivative + drift along x2.
  line.resize(f.n2);
  for (int i = 0; i < f.n1; ++i) {
    for (int j = 0; j < f.n2; ++j) line[j] = f.at(i, j);
    derivatives_for_ou(line, f.h, &d1, &d2);
    for (int j = 0; j < f.n2; ++j)
      out.at(i, j) = f.at(i, j) + d2[j] - 0.5 * f.x2(j) * d1[j];
  }
  // Axis 1 (columns): add its second derivative + drift.
  line.resize(f.n1);
  for (int j = 0; j < f.n2; ++j) {
    for (int i = 0; i < f.n1; ++i) line[i] = f.at(i, j);
    derivatives_for_ou(line, f.h, &d1, &d2);
    for (int i = 0; i < f.n1; ++i)
      out.at(i, j) += d2[i] - 0.5 * f.x1(i) * d1[i];
  }
  return out;
}

SpectralCoeffMatrix project_modes(const FieldFn& v_c,
                                  const CylinderParams& params,
                                  const QuadratureRule& rule, double tau) {
  check_dim(v_c, rule, "project_modes");
  require(params.k == rule.dim, ErrorKind::invalid_argument,
          "project_modes: rule dim must equal params.k");
  const int k = params.k;
  const double radius = params.radius;
  const double m0 = 2.0 * std::sqrt(M_PI);          // weight mass per axis
  const double mass = std::pow(m0, k);              // norm_h(1)^2
  const double n_pos1 = 2.0 * mass;                 // norm of y_i squared
  const double n_diag = 8.0 * mass;                 // norm of y_i^2 - 2 squared
  const double n_off = 16.0 * mass;                 // norm of 2 y_i y_j squared

  auto u1 = [&](double y) { return v_c.f1(y) - radius; };
  auto u2 = [&](double y1, double y2) { return v_c.f2(y1, y2) - radius; };

  SpectralCoeffMatrix out;
  out.tau = tau;
  out.pos = Eigen::VectorXd::Zero(k + 1);
  out.a = Eigen::MatrixXd::Zero(k, k);

  if (k == 1) {
    out.pos(0) = quad_sum1(rule, [&](double y) { return u1(y); }) / mass;
    out.pos(1) = quad_sum1(rule, [&](double y) { return u1(y) * y; }) / n_pos1;
    out.a(0, 0) =
        quad_sum1(rule, [&](double y) { return u1(y) * (y * y - 2.0); }) /
        n_diag;
    return out;
  }

  auto pair2 = [&](auto&& psi) {
    return quad_sum2(rule, [&](double y1, double y2) {
      return u2(y1, y2) * psi(y1, y2);
    });
  };
  out.pos(0) = pair2([](double, double) { return 1.0; }) / mass;
  out.pos(1) = pair2([](double y1, double) { return y1; }) / n_pos1;
  out.pos(2) = pair2([](double, double y2) { return y2; }) / n_pos1;
  out.a(0, 0) = pair2([](double y1, double) { return y1 * y1 - 2.0; }) / n_diag;
  out.a(1, 1) = pair2([](double, double y2) { return y2 * y2 - 2.0; }) / n_diag;
  out.a(0, 1) = pair2([](double y1, double y2) { return 2.0 * y1 * y2; }) / n_off;
  out.a(1, 0) = out.a(0, 1);
  return out;
}

Eigen::VectorXd spectral_ratio(const FieldFn& v_c, const CylinderParams& params,
                               const QuadratureRule& rule) {
  check_dim(v_c, rule, "spectral_ratio");
  require(params.k == rule.dim, ErrorKind::invalid_argument,
          "spectral_ratio: rule dim must equal params.k");
  const int k = params.k;
  Eigen::VectorXd num(k);
  if (k == 1) {
    num(0) = quad_sum1(rule,
                       [&](double y) { return v_c.f1(y) * (y * y - 2.0); });
  } else {
    for (int j = 0; j < k; ++j) {
      num(j) = quad_sum2(rule, [&](double y1, double y2) {
        const double yj = (j == 0) ? y1 : y2;
        return v_c.f2(y1, y2) * (yj * yj - 2.0);
      });
    }
  }
  const double den = num.sum();
  const double floor = 1e-12 * norm_h(v_c, rule);
  require(std::abs(den) > floor || (den != 0.0 && floor == 0.0),
          ErrorKind::degenerate_ratio,
          "spectral_ratio: quadratic pairing " + std::to_string(den) +
              " below floor " + std::to_string(floor));
  return num / den;
}

double kappa_of(const FieldFn& v_c, const CylinderParams& params, double tau0,
                const QuadratureRule& rule) {
  check_dim(v_c, rule, "kappa_of");
  require(params.k == rule.dim, ErrorKind::invalid_argument,
          "kappa_of: rule dim must equal params.k");
  require(tau0 < 0.0, ErrorKind::invalid_argument, "kappa_of needs tau0 < 0");
  const double radius = params.radius;
  const double at = std::abs(tau0);
  const int twok = 2 * params.k;
  FieldFn w;
  if (params.k == 1) {
    w = FieldFn::of1([&, radius, at, twok](double y) {
      return v_c.f1(y) - radius + radius * (y * y - twok) / (4.0 * at);
    });
  } else {
    w = FieldFn::of2([&, radius, at, twok](double y1, double y2) {
      return v_c.f2(y1, y2) - radius +
             radius * (y1 * y1 + y2 * y2 - twok) / (4.0 * at);
    });
  }
  return at * norm_h(w, rule);
}

double poincare_ratio(const FieldFn& f, const QuadratureRule& rule, double fd_h) {
  check_dim(f, rule, "poincare_ratio");
  FieldFn wf;
  if (f.dim == 1) {
    wf = FieldFn::of1([&](double y) { return (1.0 + std::abs(y)) * f.f1(y); });
  } else {
    wf = FieldFn::of2([&](double y1, double y2) {
      return (1.0 + std::hypot(y1, y2)) * f.f2(y1, y2);
    });
  }
  const double num = norm_h(wf, rule);
  const double nf = norm_h(f, rule);
  const double nd = norm_d(f, rule, fd_h);
  // norm_d = sqrt(nf^2 + |Df|^2): recover the gradient part.
  const double ngrad = std::sqrt(std::max(0.0, nd * nd - nf * nf));
  const double den = nf + ngrad;
  require(den > 0.0, ErrorKind::invalid_argument,
          "poincare_ratio: zero denominator");
  return num / den;
}

}  // namespace ovallab
