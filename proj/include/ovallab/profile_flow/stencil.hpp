/// @file stencil.hpp
/// @brief Row kernels of the grid2d sweep, scalar and AVX2+FMA variants.
///
/// The interior operator is evaluated row by row over contiguous live
/// spans; every node uses the same centered 9-point arithmetic (edge nodes
/// see quadratically extrapolated halo values prepared by the caller, which
/// reproduces the one-sided formulas exactly).  Both kernels perform the
/// identical per-node operation sequence with symmetric groupings --
/// (f[i+1] + f[i-1]) before subtracting 2 f[i], mixed derivative as
/// ((A - B) - (C - D)) -- so a mirror-symmetric field produces
/// mirror-symmetric output bit for bit, in either variant.  The AVX2
/// variant differs from scalar only through FMA contraction (about one ulp
/// per contracted product), which the equivalence test bounds at 1e-14.
///
/// Variant selection is a process-wide runtime choice: automatic (cpuid)
/// unless a test forces one.

#pragma once

namespace ovallab::flow {

enum class StencilBackend { automatic, scalar, avx2 };

/// Forces the sweep kernel (test hook).  `automatic` restores cpuid
/// dispatch.  Throws invalid-argument when avx2 is requested on a host
/// without AVX2+FMA.
void force_stencil_backend(StencilBackend backend);

/// Kernel that the next sweep will use (resolves `automatic`).
StencilBackend active_stencil_backend();

/// True when the host supports the AVX2+FMA kernel.
bool stencil_avx2_available();

/// Row-kernel arguments: rows j-1 / j / j+1 of the halo-extended field,
/// node range [i0, i1] inclusive, spacing h, the index sitting at x = 0,
/// row y-coordinate, and the reaction constant n-k.  The kernel forms
/// x_i = (i - i_center) * h from the exact integer offset so that mirrored
/// nodes see exactly negated coordinates.
struct StencilRowArgs {
  const double* row_below = nullptr;
  const double* row_mid = nullptr;
  const double* row_above = nullptr;
  int i0 = 0;
  int i1 = -1;
  double h = 0.0;
  int i_center = 0;
  double y = 0.0;
  double n_minus_k = 1.0;
};

/// out[i] (i in [i0, i1]) = full right-hand side at node i of the row.
void stencil_row_rhs_scalar(const StencilRowArgs& args, double* out);
void stencil_row_rhs_avx2(const StencilRowArgs& args, double* out);

/// Dispatched variant (per active_stencil_backend()).
void stencil_row_rhs(const StencilRowArgs& args, double* out);

}  // namespace ovallab::flow
