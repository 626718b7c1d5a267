#pragma once

#include <cstddef>
#include <optional>

namespace qsl::kernels {

enum class Backend { scalar, wide };

/// Hyperbolic functions of the rapidity magnitude, precomputed once per
/// parameter set. The boost weight sinh^2(a/2)/(P0+1) with
/// P0 = Q0 cosh(a) - Qx sinh(a) is evaluated in the overflow-free form
///   (1 - sech a) / (2 (Q0 - Qx tanh a + sech a)),
/// whose alpha -> infinity limit is (tanh, sech) = (1, 0).
struct BoostParams {
  double tanh_a = 0.0;
  double sech_a = 1.0;
};

BoostParams make_boost_params(double alpha);  // alpha in [0, +inf]

/// Parameters of the reduced 2-D chi integrand over (Qx, Qr).
struct ChiIntegrandParams {
  double k = 0.0;        // normalized mean momentum
  double inv_w2 = 1.0;   // 1/W^2
  double norm = 1.0;     // pi^{-1/2} W^{-3}
  BoostParams boost;
};

/// Batch kernels behind the hot integration loops. Every function writes
/// out[0..n) from the input arrays; no accumulation happens inside a kernel,
/// so reductions stay ordered in the calling code.
struct Set {
  const char* name;

  // norm * Qr^3 * exp(-((Qx-K)^2 + Qr^2)/W^2) * w(Q0,Qx) / (Q0+1)
  void (*chi_integrand)(const ChiIntegrandParams& p, const double* qx,
                        const double* qr, double* out, std::size_t n);

  // qz^2 * w(q0,qx) / (q0+1) with q0 = sqrt(qx^2+qy^2+qz^2+1)
  void (*chi_mc_weight)(const BoostParams& b, const double* qx, const double* qy,
                        const double* qz, double* out, std::size_t n);

  // c * x / (1+x^2),  x = omega_c t       (Ohmic dephasing-rate integrand)
  void (*rate_ohmic)(double c, double omega_c, const double* t, double* out,
                     std::size_t n);

  // c * x / (1+x^2)^2, x = omega_c t      (n = 2 super-Ohmic integrand)
  void (*rate_super_ohmic2)(double c, double omega_c, const double* t,
                            double* out, std::size_t n);
};

const Set& scalar_set();

/// Runtime-selected kernel set: the wide variant when the build carries one
/// and the CPU supports it, the scalar reference otherwise.
const Set& active_set();
Backend active_backend();
int wide_lanes();  // vector width of the wide build, 1 if none

/// Test hook: pin the backend process-wide; nullopt restores autodetection.
/// Forcing Backend::wide on a CPU without the required extensions is ignored.
void force_backend(std::optional<Backend> b);

}  // namespace qsl::kernels
