#include "qsl/relativity.hpp"

#include <cmath>
#include <numbers>

#include "qsl/kernels.hpp"
#include "qsl/mc.hpp"

namespace qsl {

namespace {

constexpr double kPi = std::numbers::pi;

// Truncation of the chi quadrature domain: the Gaussian envelope at 10 W from
// the mean is below 1e-20 of the peak, far under any requested tolerance.
constexpr double kTailWidths = 10.0;

kernels::ChiIntegrandParams chi_params(double K, double W, double alpha) {
  kernels::ChiIntegrandParams p;
  p.k = K;
  p.inv_w2 = 1.0 / (W * W);
  p.norm = std::pow(kPi, -0.5) / (W * W * W);
  p.boost = kernels::make_boost_params(alpha);
  return p;
}

ChiResult chi_by_quadrature(double K, double W, double alpha, Tolerance tol,
                            ChiMethod method) {
  const auto params = chi_params(K, W, alpha);
  const auto& kern = kernels::active_set();
  Rect domain{K - kTailWidths * W, K + kTailWidths * W, 0.0, kTailWidths * W};
  const auto r = integrate_2d(
      [&params, &kern](const double* qx, const double* qr, double* out,
                       std::size_t n) { kern.chi_integrand(params, qx, qr, out, n); },
      domain, tol);
  return {r.value, r.error_estimate, method};
}

}  // namespace

void BoostedPacketSpec::validate() const {
  if (!(theta >= 0.0 && theta <= kPi / 4.0 + 1e-15))
    throw std::domain_error("BoostedPacketSpec: theta must be in [0, pi/4]");
  if (!(K >= 0.0)) throw std::domain_error("BoostedPacketSpec: K must be >= 0");
  if (!(W > 0.0)) throw std::domain_error("BoostedPacketSpec: W must be > 0");
  if (!(alpha >= 0.0))
    throw std::domain_error("BoostedPacketSpec: alpha must be >= 0 or +inf");
}

const char* chi_method_name(ChiMethod m) {
  switch (m) {
    case ChiMethod::quadrature2d: return "quadrature-2d";
    case ChiMethod::mc_oracle: return "mc-oracle";
    case ChiMethod::analytic_zero: return "analytic-zero";
    case ChiMethod::infinite_limit: return "infinite-limit";
  }
  return "?";
}

double gaussian_profile(const std::array<double, 3>& q, double K, double W) {
  const double dx = q[0] - K;
  const double r2 = dx * dx + q[1] * q[1] + q[2] * q[2];
  return std::pow(kPi, -0.75) * std::pow(W, -1.5) * std::exp(-r2 / (2.0 * W * W));
}

WignerAmplitudes wigner_amplitudes(const std::array<double, 3>& q,
                                   const BoostedPacketSpec& spec) {
  spec.validate();
  if (std::isinf(spec.alpha))
    throw std::domain_error("wigner_amplitudes: alpha must be finite");
  const double a = spec.alpha;
  const double q0 = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + 1.0);
  // The boost rapidity is -alpha along x (detector opposing the packet), so
  // cosh/sinh of the half angle enter as (C, -S).
  const double c_half = std::cosh(0.5 * a);
  const double s_half = -std::sinh(0.5 * a);
  const double p0 = q0 * std::cosh(a) - q[0] * std::sinh(a);
  const double k = std::sqrt((q0 / p0) / ((q0 + 1.0) * (p0 + 1.0)));
  const double f = gaussian_profile(q, spec.K, spec.W);
  WignerAmplitudes out;
  out.q = q;
  out.q0 = q0;
  out.p0 = p0;
  out.a1 = k * f * complexd{c_half * (q0 + 1.0) + s_half * q[0], s_half * q[1]};
  out.a2 = k * f * s_half * q[2];
  return out;
}

ChiResult chi(const BoostedPacketSpec& spec, Tolerance tol) {
  spec.validate();
  tol.validate();
  if (spec.alpha == 0.0) return {0.0, 0.0, ChiMethod::analytic_zero};
  if (std::isinf(spec.alpha)) {
    ChiResult r = chi_infinite(spec.K, spec.W, tol);
    r.method = ChiMethod::infinite_limit;
    return r;
  }
  return chi_by_quadrature(spec.K, spec.W, spec.alpha, tol,
                           ChiMethod::quadrature2d);
}

ChiResult chi_infinite(double K, double W, Tolerance tol) {
  if (!(K >= 0.0) || !(W > 0.0))
    throw std::domain_error("chi_infinite: need K >= 0 and W > 0");
  tol.validate();
  return chi_by_quadrature(K, W, kInfinity, tol, ChiMethod::infinite_limit);
}

ChiResult chi_mc_oracle(const BoostedPacketSpec& spec, std::size_t samples,
                        std::uint64_t seed) {
  spec.validate();
  const auto boost = kernels::make_boost_params(spec.alpha);
  const auto& kern = kernels::active_set();
  const auto r = mc_integrate_gaussian3d(
      [&boost, &kern](const double* x, const double* y, const double* z,
                      double* out, std::size_t n) {
        kern.chi_mc_weight(boost, x, y, z, out, n);
      },
      {spec.K, 0.0, 0.0}, spec.W / std::sqrt(2.0), samples, seed);
  return {r.value, r.error_estimate, ChiMethod::mc_oracle};
}

QubitState initial_state(double chi_value, double theta) {
  if (!(chi_value >= 0.0 && chi_value <= 0.5))
    throw std::domain_error("initial_state: chi must be in [0, 0.5]");
  if (!(theta >= 0.0 && theta <= kPi / 4.0 + 1e-15))
    throw std::domain_error("initial_state: theta must be in [0, pi/4]");
  const double c = (1.0 - 2.0 * chi_value) * std::cos(2.0 * theta);
  const double s = (1.0 - 4.0 * chi_value) * std::sin(2.0 * theta);
  Mat2c m{0.5 * (1.0 + c), 0.5 * s, 0.5 * s, 0.5 * (1.0 - c)};
  return QubitState::from_matrix(m);
}

}  // namespace qsl
