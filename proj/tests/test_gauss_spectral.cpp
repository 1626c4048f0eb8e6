/// @file test_gauss_spectral.cpp
/// @brief Quadrature, weighted pairings, OU operator, spectral projections.
///
/// PURPOSE: verify against independent oracles that
///   (1) the mapped Gauss–Hermite rules integrate the Gaussian weight exactly
///       (total mass, even moments, smooth non-polynomials),
///   (2) the low modes {1, y_i, y_i^2-2, y_i y_j} are orthogonal with the
///       closed-form norms, and ou_apply reproduces their eigenvalues,
///   (3) project_modes / spectral_ratio / kappa_of match hand-computable
///       configurations,
///   (4) the weighted Poincare quotient stays below the pinned constant on a
///       randomized family, and the cutoff golden table is byte-stable.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "ovallab/core/csv.hpp"
#include "ovallab/core/errors.hpp"
#include "ovallab/gauss_spectral/cutoffs.hpp"
#include "ovallab/gauss_spectral/hspace.hpp"
#include "ovallab/gauss_spectral/quadrature.hpp"
#include "support/oracles.hpp"

using namespace ovallab;

namespace {
const double kMass1 = 2.0 * std::sqrt(M_PI);  // weight mass per axis

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}
}  // namespace

TEST_CASE("quadrature: mass, symmetry, moments, preconditions") {
  for (int order : {4, 7, 12, 40}) {
    const QuadratureRule rule = build_quadrature(1, order);
    double mass = 0.0;
    for (double w : rule.weights) mass += w;
    CHECK_MESSAGE(rel_err(mass, kMass1) < 1e-12, "order=", order,
                  " mass=", mass);
    // Exact odd symmetry after the symmetrization pass.
    for (int i = 0; i < order; ++i) {
      CHECK(rule.nodes[i] == -rule.nodes[order - 1 - i]);
      CHECK(rule.weights[i] == rule.weights[order - 1 - i]);
    }
    CHECK(rule.degree == 2 * order - 1);
  }

  // Even moments against the double-factorial recursion.
  const QuadratureRule r10 = build_quadrature(1, 10);
  for (int m = 0; m <= 9; ++m) {  // degree 2m <= 18 < 19 = exactness bound
    double got = 0.0;
    for (int i = 0; i < r10.order; ++i)
      got += r10.weights[i] * std::pow(r10.nodes[i], 2 * m);
    CHECK_MESSAGE(rel_err(got, oracles::gauss_even_moment(m)) < 1e-11,
                  "moment 2m=", 2 * m, " got=", got);
  }

  // Non-polynomial integrand vs adaptive Simpson.
  const QuadratureRule r40 = build_quadrature(1, 40);
  auto f = [](double y) { return std::cos(y) * std::exp(-y * y / 8.0); };
  double got = 0.0;
  for (int i = 0; i < r40.order; ++i) got += r40.weights[i] * f(r40.nodes[i]);
  const double want = oracles::gauss_integral_1d(f);
  CHECK_MESSAGE(std::abs(got - want) < 1e-10, "got=", got, " want=", want);

  // 2-D mass.
  const QuadratureRule r2 = build_quadrature(2, 20);
  double mass2 = 0.0;
  for (double wi : r2.weights)
    for (double wj : r2.weights) mass2 += wi * wj;
  CHECK(rel_err(mass2, kMass1 * kMass1) < 1e-12);

  CHECK_THROWS_AS(build_quadrature(3, 10), LabError);
  CHECK_THROWS_AS(build_quadrature(1, 3), LabError);
  try {
    build_quadrature(1, 2);
  } catch (const LabError& e) {
    CHECK(e.kind() == ErrorKind::invalid_argument);
  }
}

TEST_CASE("radial rules agree with full-dimension integrals") {
  // k = 1: fold of the symmetric rule.
  const RadialRule rr1 = build_radial_rule(1, 24);
  double got = 0.0;
  for (size_t i = 0; i < rr1.r.size(); ++i)
    got += rr1.w[i] * rr1.r[i] * rr1.r[i];
  CHECK_MESSAGE(rel_err(got, oracles::gauss_even_moment(1)) < 1e-12,
                "k=1 r^2 integral=", got);

  // k = 2: integral of |y|^2 exp(-|y|^2/4) over R^2 equals 16 pi.
  const RadialRule rr2 = build_radial_rule(2, 24);
  got = 0.0;
  for (size_t i = 0; i < rr2.r.size(); ++i)
    got += rr2.w[i] * rr2.r[i] * rr2.r[i];
  CHECK_MESSAGE(rel_err(got, 16.0 * M_PI) < 1e-12, "k=2 r^2 integral=", got);

  // Non-polynomial radial integrand vs adaptive Simpson in r.  The function
  // must be a smooth radial field on the plane (even in r at the origin),
  // which is exactly the class the rule is used on.
  auto g = [](double r) {
    return std::cos(r * r / 3.0) * std::exp(-r * r / 10.0);
  };
  got = 0.0;
  for (size_t i = 0; i < rr2.r.size(); ++i) got += rr2.w[i] * g(rr2.r[i]);
  const double want =
      2.0 * M_PI *
      oracles::integrate(
          [&](double r) { return g(r) * r * std::exp(-0.25 * r * r); }, 0.0,
          60.0);
  CHECK_MESSAGE(rel_err(got, want) < 1e-9, "k=2 radial smooth=", got,
                " want=", want);

  CHECK(sphere_surface(1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(sphere_surface(2) == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
  CHECK(sphere_surface(3) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
}

TEST_CASE("mode norms and Gram orthogonality") {
  const QuadratureRule r1 = build_quadrature(1, 16);
  const QuadratureRule r2 = build_quadrature(2, 16);

  // norm_h(y^2 - 2)^2 = 8 (2 sqrt(pi))^k.
  auto psi1 = FieldFn::of1([](double y) { return y * y - 2.0; });
  const double n1 = norm_h(psi1, r1);
  CHECK_MESSAGE(rel_err(n1 * n1, 8.0 * kMass1) < 1e-12, "1-D |psi|^2=", n1 * n1);

  auto psi11 = FieldFn::of2([](double y1, double) { return y1 * y1 - 2.0; });
  const double n2 = norm_h(psi11, r2);
  CHECK(rel_err(n2 * n2, 8.0 * kMass1 * kMass1) < 1e-12);

  auto psi12 = FieldFn::of2([](double y1, double y2) { return 2.0 * y1 * y2; });
  const double n3 = norm_h(psi12, r2);
  CHECK(rel_err(n3 * n3, 16.0 * kMass1 * kMass1) < 1e-12);

  // Gram off-diagonals of the 2-D nonnegative modes.
  std::vector<FieldFn> modes = {
      FieldFn::of2([](double, double) { return 1.0; }),
      FieldFn::of2([](double y1, double) { return y1; }),
      FieldFn::of2([](double, double y2) { return y2; }),
      psi11,
      FieldFn::of2([](double, double y2) { return y2 * y2 - 2.0; }),
      psi12};
  for (size_t i = 0; i < modes.size(); ++i) {
    for (size_t j = i + 1; j < modes.size(); ++j) {
      const double off = inner_h(modes[i], modes[j], r2);
      const double scale = norm_h(modes[i], r2) * norm_h(modes[j], r2);
      CHECK_MESSAGE(std::abs(off) <= 1e-10 * scale, "Gram(", i, ",", j,
                    ")=", off);
    }
  }
}

TEST_CASE("ou_apply reproduces the low-mode eigenvalues") {
  // 1-D, |y| <= 10, h = 0.05: interior stencils are exact on these
  // polynomials, so residuals are pure roundoff.
  const int n = 401;
  struct Mode {
    std::function<double(double)> f;
    double lambda;
  };
  const std::vector<Mode> modes = {{[](double) { return 1.0; }, 1.0},
                                   {[](double y) { return y; }, 0.5},
                                   {[](double y) { return y * y - 2.0; }, 0.0}};
  for (const auto& mode : modes) {
    const UniformGrid1D g = sample1(mode.f, -10.0, 10.0, n);
    const UniformGrid1D lg = ou_apply(g);
    double worst = 0.0;
    for (int i = 2; i + 2 < n; ++i)
      worst = std::max(worst,
                       std::abs(lg.v[i] - mode.lambda * g.v[i]));
    CHECK_MESSAGE(worst <= 1e-8, "eigen residual=", worst,
                  " lambda=", mode.lambda);
  }

  // 2-D cross mode y1*y2 (eigenvalue 0) and y1^2-2.
  const UniformGrid2D g12 =
      sample2([](double a, double b) { return a * b; }, -6.0, 6.0, 241);
  const UniformGrid2D lg12 = ou_apply(g12);
  double worst = 0.0;
  for (int i = 2; i + 2 < g12.n1; ++i)
    for (int j = 2; j + 2 < g12.n2; ++j)
      worst = std::max(worst, std::abs(lg12.at(i, j)));
  CHECK_MESSAGE(worst <= 1e-8, "2-D cross-mode residual=", worst);

  // Non-polynomial check with an analytic image:
  // f = exp(-y^2/8)  =>  L f = (3/4 + 3 y^2 / 16) f.
  const UniformGrid1D ge =
      sample1([](double y) { return std::exp(-y * y / 8.0); }, -10.0, 10.0, n);
  const UniformGrid1D lge = ou_apply(ge);
  worst = 0.0;
  for (int i = 2; i + 2 < n; ++i) {
    const double y = ge.x(i);
    const double want = (0.75 + 3.0 * y * y / 16.0) * ge.v[i];
    worst = std::max(worst, std::abs(lge.v[i] - want));
  }
  CHECK_MESSAGE(worst <= 1e-6, "smooth-image residual=", worst);

  UniformGrid1D tiny;
  tiny.lo = 0.0;
  tiny.h = 0.1;
  tiny.v = {1.0, 2.0, 3.0, 4.0};
  CHECK_THROWS_AS(ou_apply(tiny), LabError);
}

TEST_CASE("project_modes on hand-computable profiles") {
  // k = 1: pure neutral perturbation with amplitude eps/|tau0|.
  {
    const CylinderParams p = default_cylinder_params(2, 1);
    const QuadratureRule rule = build_quadrature(1, 40);
    const double eps = 0.3, at = 50.0;
    auto vc = FieldFn::of1([&](double y) {
      return p.radius + eps * (y * y - 2.0) / at;
    });
    const SpectralCoeffMatrix c = project_modes(vc, p, rule, -at);
    CHECK_MESSAGE(std::abs(c.a(0, 0) - eps / at) < 1e-12, "a11=", c.a(0, 0));
    CHECK(std::abs(c.pos(0)) < 1e-12);
    CHECK(std::abs(c.pos(1)) < 1e-12);
    CHECK(c.tau == -at);
  }

  // k = 2: quadratic-decay profile -> a = -(beta/|tau|) I.
  {
    const CylinderParams p = default_cylinder_params(3, 2);
    const QuadratureRule rule = build_quadrature(2, 40);
    const double at = 100.0;
    auto vc = FieldFn::of2([&](double y1, double y2) {
      return p.radius - p.beta * (y1 * y1 + y2 * y2 - 4.0) / at;
    });
    const SpectralCoeffMatrix c = project_modes(vc, p, rule);
    CHECK_MESSAGE(std::abs(c.a(0, 0) + p.beta / at) < 1e-12, "a11=", c.a(0, 0));
    CHECK(std::abs(c.a(1, 1) + p.beta / at) < 1e-12);
    CHECK(std::abs(c.a(0, 1)) < 1e-14);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(c.pos(i)) < 1e-12);
  }

  // k = 2: pure cross mode -> a12 = 1/|tau|.
  {
    const CylinderParams p = default_cylinder_params(3, 2);
    const QuadratureRule rule = build_quadrature(2, 40);
    const double at = 100.0;
    auto vc = FieldFn::of2([&](double y1, double y2) {
      return p.radius + 2.0 * y1 * y2 / at;
    });
    const SpectralCoeffMatrix c = project_modes(vc, p, rule);
    CHECK_MESSAGE(std::abs(c.a(0, 1) - 1.0 / at) < 1e-12, "a12=", c.a(0, 1));
    CHECK(std::abs(c.a(0, 0)) < 1e-14);
    CHECK(c.a(0, 1) == c.a(1, 0));
  }
}

TEST_CASE("spectral_ratio: shares, sum rule, degenerate floor") {
  const CylinderParams p = default_cylinder_params(3, 2);
  const QuadratureRule rule = build_quadrature(2, 40);
  const double at = 80.0;
  auto vc = FieldFn::of2([&](double y1, double y2) {
    return p.radius - 2.0 * p.beta * (y1 * y1 - 2.0) / at -
           p.beta * (y2 * y2 - 2.0) / at;
  });
  const Eigen::VectorXd ratio = spectral_ratio(vc, p, rule);
  CHECK_MESSAGE(std::abs(ratio(0) - 2.0 / 3.0) < 1e-6, "ratio0=", ratio(0));
  CHECK_MESSAGE(std::abs(ratio(1) - 1.0 / 3.0) < 1e-6, "ratio1=", ratio(1));
  CHECK(std::abs(ratio.sum() - 1.0) < 1e-13);

  auto flat = FieldFn::of2([&](double, double) { return p.radius; });
  CHECK_THROWS_AS(spectral_ratio(flat, p, rule), LabError);
  try {
    spectral_ratio(flat, p, rule);
  } catch (const LabError& e) {
    CHECK(e.kind() == ErrorKind::degenerate_ratio);
  }
}

TEST_CASE("kappa_of: exact quadratic profile and a frozen perturbation") {
  for (int k : {1, 2}) {
    const CylinderParams p = default_cylinder_params(k + 1, k);
    const QuadratureRule rule = build_quadrature(k, 40);
    const double at = 100.0;

    // The matched quadratic profile has kappa = 0.
    FieldFn quad =
        (k == 1) ? FieldFn::of1([&](double y) {
          return p.radius - p.radius * (y * y - 2.0) / (4.0 * at);
        })
                 : FieldFn::of2([&](double y1, double y2) {
                     return p.radius -
                            p.radius * (y1 * y1 + y2 * y2 - 4.0) / (4.0 * at);
                   });
    CHECK_MESSAGE(kappa_of(quad, p, -at, rule) < 1e-10, "k=", k);

    // Adding eps (y1^2-2)/|tau0| moves kappa to eps sqrt(8 (2 sqrt(pi))^k).
    const double eps = 0.05;
    FieldFn pert =
        (k == 1) ? FieldFn::of1([&](double y) {
          return p.radius - p.radius * (y * y - 2.0) / (4.0 * at) +
                 eps * (y * y - 2.0) / at;
        })
                 : FieldFn::of2([&](double y1, double y2) {
                     return p.radius -
                            p.radius * (y1 * y1 + y2 * y2 - 4.0) / (4.0 * at) +
                            eps * (y1 * y1 - 2.0) / at;
                   });
    const double want = eps * std::sqrt(8.0 * std::pow(kMass1, k));
    const double got = kappa_of(pert, p, -at, rule);
    CHECK_MESSAGE(rel_err(got, want) < 1e-10, "k=", k, " kappa=", got,
                  " want=", want);
  }
  const CylinderParams p = default_cylinder_params(2, 1);
  const QuadratureRule rule = build_quadrature(1, 16);
  auto flat = FieldFn::of1([&](double) { return p.radius; });
  CHECK_THROWS_AS(kappa_of(flat, p, +5.0, rule), LabError);
}

TEST_CASE("poincare_ratio stays below the pinned constant (randomized)") {
  // 100 random smooth fields per dimension: polynomials of degree <= 5 with
  // U(-1,1) coefficients times a Gaussian envelope.  The pinned constant 6
  // follows from the integration-by-parts bound with room to spare.
  auto gen = oracles::rng(20260815ull);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  const QuadratureRule r1 = build_quadrature(1, 40);
  const QuadratureRule r2 = build_quadrature(2, 32);

  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::array<double, 6> c;
    for (auto& x : c) x = coeff(gen);
    const double ratio =
        (trial % 2 == 0)
            ? poincare_ratio(FieldFn::of1([c](double y) {
                double poly = 0.0, pw = 1.0;
                for (double ci : c) {
                  poly += ci * pw;
                  pw *= y;
                }
                return poly * std::exp(-y * y / 8.0);
              }),
                             r1)
            : poincare_ratio(FieldFn::of2([c](double y1, double y2) {
                const double poly = c[0] + c[1] * y1 + c[2] * y2 +
                                    c[3] * y1 * y2 + c[4] * y1 * y1 +
                                    c[5] * y2 * y2;
                return poly * std::exp(-(y1 * y1 + y2 * y2) / 8.0);
              }),
                             r2);
    worst = std::max(worst, ratio);
  }
  CHECK_MESSAGE(worst <= 6.0, "(val=", worst, ", thr=6)");

  auto zero = FieldFn::of1([](double) { return 0.0; });
  CHECK_THROWS_AS(poincare_ratio(zero, r1), LabError);
}

TEST_CASE("cutoffs: plateaus, monotonicity, golden table") {
  const double th = 0.2;
  const CutoffSpec cyl{CutoffKind::cyl, th};
  const CutoffSpec tip{CutoffKind::tip, th};
  const CutoffSpec zeta{CutoffKind::zeta, th};

  CHECK(cutoff_eval(cyl, 0.0) == 0.0);
  CHECK(cutoff_eval(cyl, 5.0 * th / 8.0) == 0.0);
  CHECK(cutoff_eval(cyl, 7.0 * th / 8.0) == 1.0);
  CHECK(cutoff_eval(cyl, 10.0) == 1.0);
  CHECK(cutoff_eval(tip, 0.5 * th) == 1.0);
  CHECK(cutoff_eval(tip, th) == 1.0);
  CHECK(cutoff_eval(tip, 2.0 * th) == 0.0);
  CHECK(cutoff_eval(zeta, th / 8.0) == 0.0);
  CHECK(cutoff_eval(zeta, th / 4.0) == 1.0);

  for (int i = 1; i <= 400; ++i) {
    const double a = 0.005 * (i - 1), b = 0.005 * i;
    CHECK(cutoff_eval(cyl, b) >= cutoff_eval(cyl, a));
    CHECK(cutoff_eval(tip, b) <= cutoff_eval(tip, a));
    CHECK(cutoff_eval(zeta, b) >= cutoff_eval(zeta, a));
  }

  CHECK_THROWS_AS(cutoff_eval({CutoffKind::cyl, -1.0}, 0.1), LabError);
  CHECK_THROWS_AS(cutoff_eval(cyl, -0.1), LabError);

  // Byte-identical regeneration of the committed golden table.
  const std::string golden_path =
      std::string(OVALLAB_SOURCE_DATA_DIR) + "/cutoff_golden.csv";
  const std::string tmp_path = "cutoff_golden_regen.csv";
  write_cutoff_golden_csv(tmp_path);
  const std::string want = read_text_file(golden_path);
  const std::string got = read_text_file(tmp_path);
  CHECK_MESSAGE(want == got, "regenerated cutoff table differs from golden");
  std::remove(tmp_path.c_str());
}

TEST_CASE("norm_d matches the analytic graph norm") {
  const QuadratureRule rule = build_quadrature(1, 40);
  auto f = FieldFn::of1(
      [](double y) { return std::sin(y) * std::exp(-y * y / 8.0); });
  // |f'|^2 contribution computed with the adaptive oracle.
  const double nf2 = oracles::gauss_integral_1d([](double y) {
    const double v = std::sin(y) * std::exp(-y * y / 8.0);
    return v * v;
  });
  const double nd2 = oracles::gauss_integral_1d([](double y) {
    const double d = (std::cos(y) - 0.25 * y * std::sin(y)) *
                     std::exp(-y * y / 8.0);
    return d * d;
  });
  const double got = norm_d(f, rule);
  const double want = std::sqrt(nf2 + nd2);
  CHECK_MESSAGE(rel_err(got, want) < 1e-8, "norm_d=", got, " want=", want);
}
