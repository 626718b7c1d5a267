// Wide kernel variants built on std::experimental::simd. On x86-64 this
// translation unit is compiled with -mavx2 -mfma (4 lanes of double); on
// aarch64 the native ABI is NEON (2 lanes). Tails shorter than one vector
// fall through to the scalar reference kernels.

#include "qsl/kernels.hpp"

#include <cmath>
#include <experimental/simd>

namespace stdx = std::experimental;

namespace qsl::kernels {

namespace {

using V = stdx::native_simd<double>;
constexpr std::size_t kLanes = V::size();

inline V load(const double* p) { return V(p, stdx::element_aligned); }

void chi_integrand_wide(const ChiIntegrandParams& p, const double* qx,
                        const double* qr, double* out, std::size_t n) {
  const V k = p.k, inv_w2 = p.inv_w2, norm = p.norm;
  const V tanh_a = p.boost.tanh_a, sech_a = p.boost.sech_a;
  const V one_minus_sech = 1.0 - p.boost.sech_a;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const V x = load(qx + i);
    const V r = load(qr + i);
    const V q0 = stdx::sqrt(x * x + r * r + V(1.0));
    const V dx = x - k;
    const V gauss = stdx::exp(-(dx * dx + r * r) * inv_w2);
    const V w = one_minus_sech / (V(2.0) * (q0 - x * tanh_a + sech_a));
    const V v = norm * r * r * r * gauss * w / (q0 + V(1.0));
    v.copy_to(out + i, stdx::element_aligned);
  }
  if (i < n) scalar_set().chi_integrand(p, qx + i, qr + i, out + i, n - i);
}

void chi_mc_weight_wide(const BoostParams& b, const double* qx,
                        const double* qy, const double* qz, double* out,
                        std::size_t n) {
  const V tanh_a = b.tanh_a, sech_a = b.sech_a;
  const V one_minus_sech = 1.0 - b.sech_a;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const V x = load(qx + i), y = load(qy + i), z = load(qz + i);
    const V q0 = stdx::sqrt(x * x + y * y + z * z + V(1.0));
    const V w = one_minus_sech / (V(2.0) * (q0 - x * tanh_a + sech_a));
    const V v = z * z * w / (q0 + V(1.0));
    v.copy_to(out + i, stdx::element_aligned);
  }
  if (i < n) scalar_set().chi_mc_weight(b, qx + i, qy + i, qz + i, out + i, n - i);
}

void rate_ohmic_wide(double c, double omega_c, const double* t, double* out,
                     std::size_t n) {
  const V cv = c, wc = omega_c;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const V x = wc * load(t + i);
    const V v = cv * x / (V(1.0) + x * x);
    v.copy_to(out + i, stdx::element_aligned);
  }
  if (i < n) scalar_set().rate_ohmic(c, omega_c, t + i, out + i, n - i);
}

void rate_super_ohmic2_wide(double c, double omega_c, const double* t,
                            double* out, std::size_t n) {
  const V cv = c, wc = omega_c;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const V x = wc * load(t + i);
    const V d = V(1.0) + x * x;
    const V v = cv * x / (d * d);
    v.copy_to(out + i, stdx::element_aligned);
  }
  if (i < n) scalar_set().rate_super_ohmic2(c, omega_c, t + i, out + i, n - i);
}

}  // namespace

const Set& wide_set();
const Set& wide_set() {
  static const Set set{
      "wide",
      chi_integrand_wide,
      chi_mc_weight_wide,
      rate_ohmic_wide,
      rate_super_ohmic2_wide,
  };
  return set;
}

int wide_lanes_impl();
int wide_lanes_impl() { return static_cast<int>(kLanes); }

}  // namespace qsl::kernels
