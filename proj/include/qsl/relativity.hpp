#pragma once

#include <array>
#include <cstdint>

#include "qsl/numerics.hpp"
#include "qsl/qubit.hpp"

namespace qsl {

/// Boosted Gaussian wavepacket of a spin-1/2 particle, in mass-normalized
/// variables (momenta and width divided by m, hbar = c = 1). alpha is the
/// rapidity magnitude of a detector boost opposing the packet's +x mean
/// momentum (alpha = -atanh(v/c) for detector velocity v); +inf is a valid
/// value handled as an analytic limit.
struct BoostedPacketSpec {
  double theta = 0.0;  // coherence angle in [0, pi/4]
  double K = 0.0;      // mean momentum / m, >= 0
  double W = 1.0;      // packet width / m, > 0
  double alpha = 0.0;  // rapidity magnitude, >= 0 or +inf

  void validate() const;
};

enum class ChiMethod { quadrature2d, mc_oracle, analytic_zero, infinite_limit };

struct ChiResult {
  double value = 0.0;
  double error_estimate = 0.0;
  ChiMethod method = ChiMethod::analytic_zero;
};

const char* chi_method_name(ChiMethod m);

/// Momentum-space Gaussian profile f_k^w(q) (unit L2 norm).
double gaussian_profile(const std::array<double, 3>& q, double K, double W);

/// Wigner-rotated spinor amplitudes of the boosted packet at momentum q.
struct WignerAmplitudes {
  complexd a1{};
  complexd a2{};
  std::array<double, 3> q{};
  double q0 = 1.0;  // rest-frame energy sqrt(|q|^2 + 1)
  double p0 = 1.0;  // boosted energy
};

WignerAmplitudes wigner_amplitudes(const std::array<double, 3>& q,
                                   const BoostedPacketSpec& spec);

/// Coherence-degradation factor chi of the boosted packet:
///   chi = sinh^2(a/2) * pi^{-1/2} W^{-3} *
///         int int Qr^3 exp(-((Qx-K)^2+Qr^2)/W^2) / ((Q0+1)(P0+1)) dQx dQr
/// with Q0 = sqrt(Qr^2+Qx^2+1), P0 = Q0 cosh(a) - Qx sinh(a). alpha = 0
/// short-circuits to exactly 0; alpha = +inf delegates to chi_infinite.
ChiResult chi(const BoostedPacketSpec& spec, Tolerance tol = {});

/// Infinite-rapidity limit, where sinh^2(a/2)/(P0+1) -> 1/(2(Q0-Qx)).
ChiResult chi_infinite(double K, double W, Tolerance tol = {});

/// Monte-Carlo oracle for chi: samples q from |f_k^w|^2 (mean (K,0,0),
/// per-axis sigma W/sqrt(2)) and averages the non-Gaussian factor.
/// Deterministic for a fixed seed.
ChiResult chi_mc_oracle(const BoostedPacketSpec& spec, std::size_t samples,
                        std::uint64_t seed);

/// Initial spin density matrix of the boosted packet,
///   1/2 [[1+(1-2chi)cos2theta, (1-4chi)sin2theta],
///        [(1-4chi)sin2theta,   1-(1-2chi)cos2theta]].
QubitState initial_state(double chi_value, double theta);

}  // namespace qsl
