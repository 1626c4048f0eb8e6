/// @file stencil_dispatch.cpp
/// @brief Runtime kernel selection for the grid2d sweep.

#include <atomic>

#include "ovallab/core/errors.hpp"
#include "ovallab/profile_flow/stencil.hpp"

namespace ovallab::flow {

namespace {

std::atomic<StencilBackend> g_forced{StencilBackend::automatic};

}  // namespace

bool stencil_avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

void force_stencil_backend(StencilBackend backend) {
  if (backend == StencilBackend::avx2)
    require(stencil_avx2_available(), ErrorKind::invalid_argument,
            "force_stencil_backend: this host lacks AVX2+FMA");
  g_forced.store(backend, std::memory_order_relaxed);
}

StencilBackend active_stencil_backend() {
  const StencilBackend forced = g_forced.load(std::memory_order_relaxed);
  if (forced != StencilBackend::automatic) return forced;
  return stencil_avx2_available() ? StencilBackend::avx2
                                  : StencilBackend::scalar;
}

void stencil_row_rhs(const StencilRowArgs& args, double* out) {
  if (active_stencil_backend() == StencilBackend::avx2)
    stencil_row_rhs_avx2(args, out);
  else
    stencil_row_rhs_scalar(args, out);
}

}  // namespace ovallab::flow
