#include "qsl/kernels.hpp"

#include <atomic>
#include <cmath>

namespace qsl::kernels {

#if defined(QSL_HAVE_WIDE_KERNELS)
const Set& wide_set();
int wide_lanes_impl();
#endif

namespace {

bool wide_supported() {
#if !defined(QSL_HAVE_WIDE_KERNELS)
  return false;
#elif defined(QSL_WIDE_NEEDS_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return true;  // NEON is baseline on aarch64
#endif
}

// 0 = auto, 1 = scalar, 2 = wide
std::atomic<int> g_forced{0};

const Set& auto_set() {
#if defined(QSL_HAVE_WIDE_KERNELS)
  static const bool ok = wide_supported();
  if (ok) return wide_set();
#endif
  return scalar_set();
}

}  // namespace

BoostParams make_boost_params(double alpha) {
  if (std::isinf(alpha)) return {1.0, 0.0};
  // sech computed from exp(-alpha) so large rapidities cannot overflow
  const double e = std::exp(-alpha);
  return {std::tanh(alpha), 2.0 * e / (1.0 + e * e)};
}

const Set& active_set() {
  switch (g_forced.load(std::memory_order_relaxed)) {
    case 1:
      return scalar_set();
    case 2:
#if defined(QSL_HAVE_WIDE_KERNELS)
      if (wide_supported()) return wide_set();
#endif
      return scalar_set();
    default:
      return auto_set();
  }
}

Backend active_backend() {
  return &active_set() == &scalar_set() ? Backend::scalar : Backend::wide;
}

int wide_lanes() {
#if defined(QSL_HAVE_WIDE_KERNELS)
  if (wide_supported()) return wide_lanes_impl();
#endif
  return 1;
}

void force_backend(std::optional<Backend> b) {
  int v = 0;
  if (b) v = (*b == Backend::scalar) ? 1 : 2;
  g_forced.store(v, std::memory_order_relaxed);
}

}  // namespace qsl::kernels
