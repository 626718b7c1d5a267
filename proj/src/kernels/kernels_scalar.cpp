#include "qsl/kernels.hpp"

#include <cmath>

namespace qsl::kernels {

namespace {

void chi_integrand_scalar(const ChiIntegrandParams& p, const double* qx,
                          const double* qr, double* out, std::size_t n) {
  const double one_minus_sech = 1.0 - p.boost.sech_a;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = qx[i];
    const double r = qr[i];
    const double q0 = std::sqrt(x * x + r * r + 1.0);
    const double dx = x - p.k;
    const double gauss = std::exp(-(dx * dx + r * r) * p.inv_w2);
    const double w =
        one_minus_sech / (2.0 * (q0 - x * p.boost.tanh_a + p.boost.sech_a));
    out[i] = p.norm * r * r * r * gauss * w / (q0 + 1.0);
  }
}

void chi_mc_weight_scalar(const BoostParams& b, const double* qx,
                          const double* qy, const double* qz, double* out,
                          std::size_t n) {
  const double one_minus_sech = 1.0 - b.sech_a;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = qx[i];
    const double q0 = std::sqrt(x * x + qy[i] * qy[i] + qz[i] * qz[i] + 1.0);
    const double w = one_minus_sech / (2.0 * (q0 - x * b.tanh_a + b.sech_a));
    out[i] = qz[i] * qz[i] * w / (q0 + 1.0);
  }
}

void rate_ohmic_scalar(double c, double omega_c, const double* t, double* out,
                       std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double x = omega_c * t[i];
    out[i] = c * x / (1.0 + x * x);
  }
}

void rate_super_ohmic2_scalar(double c, double omega_c, const double* t,
                              double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double x = omega_c * t[i];
    const double d = 1.0 + x * x;
    out[i] = c * x / (d * d);
  }
}

}  // namespace

const Set& scalar_set() {
  static const Set set{
      "scalar",
      chi_integrand_scalar,
      chi_mc_weight_scalar,
      rate_ohmic_scalar,
      rate_super_ohmic2_scalar,
  };
  return set;
}

}  // namespace qsl::kernels
