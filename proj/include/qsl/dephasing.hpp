#pragma once

#include "qsl/numerics.hpp"
#include "qsl/qubit.hpp"

namespace qsl {

/// Ohmic-like bath at zero temperature: J(w) = (w^n / w_c^{n-1}) eta e^{-w/w_c}.
/// n = 1 is Ohmic, n > 1 super-Ohmic. The validated regime is n in [1, 2];
/// other n > 0 are accepted but flagged by in_validated_regime().
struct DephasingSpec {
  double eta = 1.0;
  double omega_c = 1.0;
  double n = 1.0;

  void validate() const;
  bool in_validated_regime() const { return n >= 1.0 && n <= 2.0; }
};

/// Spectral density J(omega) for omega >= 0.
double spectral_density(const DephasingSpec& spec, double omega);

/// Instantaneous dephasing rate d(gamma)/dt. Normalized so that the Ohmic
/// accumulated phase is exactly eta*ln(1+(w_c t)^2) and the n = 2 one is
/// eta*(w_c t)^2/(1+(w_c t)^2).
double gamma_rate(const DephasingSpec& spec, double t);

/// Accumulated dephasing gamma(t) = int_0^t rate dt', by adaptive quadrature
/// of the rate integrand; t = +inf delegates to gamma_infinity.
double gamma_accumulated(const DephasingSpec& spec, double t);

/// Limit of gamma(t) as t -> inf: +inf for n <= 1, finite for n in (1, 2].
double gamma_infinity(const DephasingSpec& spec);

/// Decoherence factor p_t = exp(-gamma(t)) in [0, 1]; accepts t = +inf.
double decoherence_factor(const DephasingSpec& spec, double t);

/// Pure-dephasing channel E1 rho E1^+ + E2 rho E2^+ with E1 = diag(1, p),
/// E2 = diag(0, sqrt(1-p^2)): populations fixed, coherences scaled by p.
QubitState kraus_evolve(const QubitState& rho, double p_t);

/// Nonunitary generator (rate/2)(sigma_z rho sigma_z - rho).
Mat2c dephasing_generator(const QubitState& rho, double rate);

/// True iff the rate is >= -1e-12 on a dense grid over [t_start, t_end]
/// (monotone p_t on the window).
bool is_markovian_window(const DephasingSpec& spec, double t_start, double t_end);

/// Batch rate integrand used by the quadrature paths; dispatches to the
/// SIMD kernels for n = 1 and n = 2.
void gamma_rate_batch(const DephasingSpec& spec, const double* t, double* out,
                      std::size_t n);

}  // namespace qsl
