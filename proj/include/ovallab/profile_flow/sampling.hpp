/// @file sampling.hpp
/// @brief Evaluation adapters from flow states to everywhere-defined fields.
///
/// Diagnostics and spectral projections consume profiles as functions on
/// R^k, but a flow state is two finite charts (radial) or a masked grid.
/// The adapters here glue the charts into a single radial evaluator and
/// wrap states as FieldFn objects, applying the cylindrical cutoff so that
/// the resulting deviation fields vanish identically beyond the tip, where
/// the profile ceases to exist.  All adapters copy the state data they
/// need, so the returned objects outlive the state.

#pragma once

#include <memory>

#include "ovallab/gauss_spectral/hspace.hpp"
#include "ovallab/profile_flow/flow.hpp"

namespace ovallab::flow {

/// Radial evaluator over the union of both charts.
///
///   r in [0, y_edge]   -> monotone-cubic interpolant of chart_v
///   r in (y_edge, tip] -> inversion of chart_y (v such that Y(v) = r)
///   r > tip            -> 0 (profile does not exist there)
///
/// For chartless states (cylinder runs) the outer chart value is continued
/// as a constant beyond its last node.
class RadialSampler {
 public:
  explicit RadialSampler(const ProfileState& state);

  double v_at(double r) const;
  double y_tip() const;
  double v_edge() const;  ///< outermost chart_v sample
  const CylinderParams& params() const;

  /// Raw profile lifted to R^k: f(y) = v_at(|y|).
  FieldFn raw_field() const;

  /// Cutoff deviation field lifted to R^k:
  ///   f(y) = radius + chi_cyl(v_at(|y|)) * (v_at(|y|) - radius),
  /// which equals the raw profile on the cylindrical region and the exact
  /// cylinder wherever v < 5 theta / 8 (including beyond the tip).
  FieldFn truncated_field() const;

  /// Inverse graph y(v) over [v_lo, v_hi] from whichever chart covers each
  /// target; used by the tip diagnostics to reach v above the tip chart.
  double y_of_v(double v) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Grid counterpart of truncated_field: bilinear interpolation over fully
/// live cells, the exact cylinder value wherever the stencil touches the
/// mask or leaves the square.  The splice is exact once v drops below
/// 5 theta / 8 and its residual jump lives on the one-cell mask ring at
/// |y| ~ sqrt(2 |tau|), which carries exp(-|tau|/2) Gaussian weight.
FieldFn grid_truncated_field(const GridProfileState& state);

}  // namespace ovallab::flow
