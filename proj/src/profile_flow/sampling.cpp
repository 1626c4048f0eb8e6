/// @file sampling.cpp
/// @brief Chart-union radial evaluator and FieldFn lifts of flow states.

#include "ovallab/profile_flow/sampling.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "ovallab/core/errors.hpp"
#include "ovallab/core/interp.hpp"
#include "ovallab/gauss_spectral/cutoffs.hpp"

namespace ovallab::flow {

struct RadialSampler::Impl {
  CylinderParams params;
  bool cylinder = false;  ///< chartless state: constant continuation
  double y_edge = 0.0;    ///< last outer-chart node
  double v_edge = 0.0;    ///< profile value there
  double y_tip = 0.0;     ///< tip ordinate (chart_y.f.front())
  double tail_top = 0.0;  ///< largest v the inverse graph covers
  MonotoneCubic outer;      ///< y -> v over chart_v
  MonotoneCubic tip_v_of_y; ///< y -> v over the reversed tip chart
  MonotoneCubic tip_y_of_v; ///< v -> Y over the tip chart
  MonotoneCubic tail_y_of_v;///< v -> y over chart_v's decreasing suffix

  double eval_v(double r) const {
    r = std::abs(r);
    if (r <= outer.x_max()) return outer.eval(r);
    if (cylinder) return v_edge;
    if (r >= y_tip) return 0.0;
    return tip_v_of_y.eval(r);
  }
};

RadialSampler::RadialSampler(const ProfileState& state) {
  require(state.chart_v.n() >= 4, ErrorKind::invalid_argument,
          "RadialSampler: outer chart too short");
  auto impl = std::make_shared<Impl>();
  impl->params = state.params;
  impl->cylinder = !state.has_chart_y();
  impl->y_edge = state.chart_v.x.back();
  impl->v_edge = state.chart_v.f.back();
  impl->outer = MonotoneCubic(state.chart_v.x, state.chart_v.f);

  if (!impl->cylinder) {
    const int ny = state.chart_y.n();
    std::vector<double> ys(ny), vs(ny);
    for (int j = 0; j < ny; ++j) {
      ys[j] = state.chart_y.f[ny - 1 - j];
      vs[j] = state.chart_y.x[ny - 1 - j];
    }
    for (int j = 1; j < ny; ++j)
      require(ys[j] > ys[j - 1], ErrorKind::invalid_argument,
              "RadialSampler: tip chart is not strictly decreasing");
    impl->y_tip = ys.back();
    impl->tip_v_of_y = MonotoneCubic(std::move(ys), std::move(vs));
    impl->tip_y_of_v = MonotoneCubic(state.chart_y.x, state.chart_y.f);

    // Longest strictly decreasing suffix of the outer chart, inverted.
    const int n = state.chart_v.n();
    int first = n - 1;
    while (first > 0 && state.chart_v.f[first - 1] > state.chart_v.f[first])
      --first;
    require(n - first >= 4, ErrorKind::invalid_argument,
            "RadialSampler: outer chart has no invertible tail");
    std::vector<double> tv, ty;
    tv.reserve(n - first);
    ty.reserve(n - first);
    for (int i = n - 1; i >= first; --i) {
      tv.push_back(state.chart_v.f[i]);
      ty.push_back(state.chart_v.x[i]);
    }
    impl->tail_top = tv.back();
    impl->tail_y_of_v = MonotoneCubic(std::move(tv), std::move(ty));
  }
  impl_ = std::move(impl);
}

double RadialSampler::v_at(double r) const { return impl_->eval_v(r); }

double RadialSampler::y_tip() const {
  require(!impl_->cylinder, ErrorKind::invalid_argument,
          "RadialSampler: a chartless state has no tip");
  return impl_->y_tip;
}

double RadialSampler::v_edge() const { return impl_->v_edge; }

const CylinderParams& RadialSampler::params() const { return impl_->params; }

FieldFn RadialSampler::raw_field() const {
  auto impl = impl_;
  return FieldFn::radial(impl->params.k,
                         [impl](double r) { return impl->eval_v(r); });
}

FieldFn RadialSampler::truncated_field() const {
  auto impl = impl_;
  const CutoffSpec chi{CutoffKind::cyl, impl->params.theta};
  const double radius = impl->params.radius;
  return FieldFn::radial(impl->params.k, [impl, chi, radius](double r) {
    const double v = impl->eval_v(r);
    return radius + cutoff_eval(chi, v) * (v - radius);
  });
}

double RadialSampler::y_of_v(double v) const {
  require(!impl_->cylinder, ErrorKind::invalid_argument,
          "RadialSampler: a chartless state has no inverse graph");
  require(v >= 0.0, ErrorKind::invalid_argument,
          "RadialSampler: inverse graph target must be nonnegative");
  if (v <= impl_->tip_y_of_v.x_max()) return impl_->tip_y_of_v.eval(v);
  require(v <= impl_->tail_top, ErrorKind::out_of_domain,
          "RadialSampler: inverse graph target " + std::to_string(v) +
              " above the covered range " + std::to_string(impl_->tail_top));
  return impl_->tail_y_of_v.eval(v);
}

FieldFn grid_truncated_field(const GridProfileState& state) {
  require(state.params.k == 2, ErrorKind::invalid_argument,
          "grid_truncated_field: grid states are k = 2 only");
  require(state.m >= 2, ErrorKind::invalid_argument,
          "grid_truncated_field: empty grid");
  // Copy what the closure needs; the state itself may die.
  const auto v = state.v;
  const auto mask = state.mask;
  const int m = state.m;
  const double h = state.h;
  const double half = state.r();
  const double radius = state.params.radius;
  const CutoffSpec chi{CutoffKind::cyl, state.params.theta};

  auto sample = [v, mask, m, h, half, chi, radius](double y1,
                                                   double y2) -> double {
    // Beyond the square, or touching any masked corner, fall back to the
    // exact cylinder.  The splice can jump across the one-cell ring at the
    // mask boundary (|y| ~ sqrt(2|tau|), where the profile is steep), but
    // the Gaussian weight there is exp(-|tau|/2)-small, far below every
    // tolerance this field feeds.
    if (std::abs(y1) > half || std::abs(y2) > half) return radius;
    const double s1 = (y1 + half) / h;
    const double s2 = (y2 + half) / h;
    int i = static_cast<int>(std::floor(s1));
    int j = static_cast<int>(std::floor(s2));
    i = std::min(std::max(i, 0), m - 2);
    j = std::min(std::max(j, 0), m - 2);
    const auto idx = [m](int a, int b) {
      return static_cast<size_t>(b) * m + a;
    };
    if (!mask[idx(i, j)] || !mask[idx(i + 1, j)] || !mask[idx(i, j + 1)] ||
        !mask[idx(i + 1, j + 1)])
      return radius;
    const double t1 = s1 - i;
    const double t2 = s2 - j;
    const double va = v[idx(i, j)] * (1 - t1) + v[idx(i + 1, j)] * t1;
    const double vb = v[idx(i, j + 1)] * (1 - t1) + v[idx(i + 1, j + 1)] * t1;
    const double vv = va * (1 - t2) + vb * t2;
    return radius + cutoff_eval(chi, vv) * (vv - radius);
  };
  return FieldFn::of2(sample);
}

}  // namespace ovallab::flow
