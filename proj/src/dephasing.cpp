#include "qsl/dephasing.hpp"

#include <cmath>
#include <numbers>

#include "qsl/kernels.hpp"

namespace qsl {

namespace {

// Internal tolerance for gamma integrals: two digits tighter than the
// acceptance thresholds so quadrature error never shows up in them.
constexpr Tolerance kGammaTol{1e-11, 1e-14};
constexpr double kPiConst = std::numbers::pi;

double eigen_floor(const Mat2c& m) {
  const auto ev = hermitian_eigenvalues(m);
  return ev[1];
}

void validate_state(const Mat2c& m) {
  const double herm = std::max(std::abs(m.m01 - std::conj(m.m10)),
                               std::max(std::abs(m.m00.imag()), std::abs(m.m11.imag())));
  if (herm > 1e-12) throw std::domain_error("QubitState: not Hermitian");
  if (std::abs(m.trace() - 1.0) > 1e-12)
    throw std::domain_error("QubitState: trace != 1");
  if (eigen_floor(m) < -1e-12)
    throw std::domain_error("QubitState: negative eigenvalue");
}

}  // namespace

std::array<double, 2> hermitian_eigenvalues(const Mat2c& m) {
  const double a = m.m00.real();
  const double d = m.m11.real();
  const double half_tr = 0.5 * (a + d);
  const double off = std::abs(m.m01);
  const double r = std::hypot(0.5 * (a - d), off);
  return {half_tr + r, half_tr - r};
}

QubitState QubitState::from_matrix(const Mat2c& m) {
  validate_state(m);
  return QubitState{m};
}

double QubitState::purity() const { return (m * m).trace().real(); }

double max_abs_diff(const Mat2c& a, const Mat2c& b) {
  return std::max(std::max(std::abs(a.m00 - b.m00), std::abs(a.m01 - b.m01)),
                  std::max(std::abs(a.m10 - b.m10), std::abs(a.m11 - b.m11)));
}

void DephasingSpec::validate() const {
  if (!(eta >= 0.0)) throw std::domain_error("DephasingSpec: eta must be >= 0");
  if (!(omega_c > 0.0)) throw std::domain_error("DephasingSpec: omega_c must be > 0");
  if (!(n > 0.0)) throw std::domain_error("DephasingSpec: n must be > 0");
}

double spectral_density(const DephasingSpec& spec, double omega) {
  spec.validate();
  if (!(omega >= 0.0))
    throw std::domain_error("spectral_density: omega must be >= 0");
  return spec.eta * std::pow(omega, spec.n) * std::pow(spec.omega_c, 1.0 - spec.n) *
         std::exp(-omega / spec.omega_c);
}

double gamma_rate(const DephasingSpec& spec, double t) {
  double out;
  gamma_rate_batch(spec, &t, &out, 1);
  return out;
}

void gamma_rate_batch(const DephasingSpec& spec, const double* t, double* out,
                      std::size_t n) {
  const double c = 2.0 * spec.eta * spec.omega_c;
  const auto& k = kernels::active_set();
  if (spec.n == 1.0) {
    k.rate_ohmic(c, spec.omega_c, t, out, n);
  } else if (spec.n == 2.0) {
    k.rate_super_ohmic2(c, spec.omega_c, t, out, n);
  } else {
    const double cg = (2.0 / spec.n) * euler_gamma(spec.n) * spec.eta * spec.omega_c;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = spec.omega_c * t[i];
      out[i] = cg * std::sin(spec.n * std::atan(x)) *
               std::pow(1.0 + x * x, -0.5 * spec.n);
    }
  }
}

double gamma_accumulated(const DephasingSpec& spec, double t) {
  spec.validate();
  if (std::isinf(t)) return gamma_infinity(spec);
  if (!(t >= 0.0)) throw std::domain_error("gamma_accumulated: t must be >= 0");
  if (t == 0.0 || spec.eta == 0.0) return 0.0;
  const auto r = integrate_1d(
      [&spec](const double* ts, double* out, std::size_t n) {
        gamma_rate_batch(spec, ts, out, n);
      },
      0.0, t, kGammaTol);
  return r.value;
}

double gamma_infinity(const DephasingSpec& spec) {
  spec.validate();
  if (spec.eta == 0.0) return 0.0;
  if (spec.n <= 1.0) return kInfinity;  // rate tail ~ t^{-n} is not integrable
  if (spec.n >= 2.0) {
    // the rational map leaves a (1-x)^{n-2} endpoint factor, bounded here
    const auto r = integrate_1d(
        [&spec](const double* ts, double* out, std::size_t n) {
          gamma_rate_batch(spec, ts, out, n);
        },
        0.0, kInfinity, kGammaTol);
    return r.value;
  }

  // 1 < n < 2: bisection stalls on the (1-x)^{n-2} singularity of the
  // rational map, so handle the power-law tail with t = T u^{-1/(n-1)},
  // which turns rate ~ t^{-n} into a bounded integrand on (0, 1].
  const double head = gamma_accumulated(spec, 10.0 / spec.omega_c);
  const double big_t = 10.0 / spec.omega_c;
  const double p = 1.0 / (spec.n - 1.0);
  const double cg =
      (2.0 / spec.n) * euler_gamma(spec.n) * spec.eta * spec.omega_c;
  const double u0_limit = cg * std::sin(0.5 * kPiConst * spec.n) *
                          std::pow(spec.omega_c, -spec.n) * p *
                          std::pow(big_t, 1.0 - spec.n);
  const auto tail = integrate_1d(
      [&](const double* us, double* out, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
          const double t = big_t * std::pow(us[i], -p);
          if (!(t < 1e130)) {
            out[i] = u0_limit;  // asymptote; corrections are O(u^p) here
            continue;
          }
          out[i] = gamma_rate(spec, t) * big_t * p *
                   std::pow(us[i], -(p + 1.0));
        }
      },
      0.0, 1.0, kGammaTol);
  return head + tail.value;
}

double decoherence_factor(const DephasingSpec& spec, double t) {
  return std::exp(-gamma_accumulated(spec, t));
}

QubitState kraus_evolve(const QubitState& rho, double p_t) {
  if (!(p_t >= 0.0 && p_t <= 1.0))
    throw std::domain_error("kraus_evolve: p_t must be in [0, 1]");
  Mat2c out = rho.m;
  out.m01 *= p_t;
  out.m10 *= p_t;
  return QubitState::from_matrix(out);
}

Mat2c dephasing_generator(const QubitState& rho, double rate) {
  return {0.0, -rate * rho.m.m01, -rate * rho.m.m10, 0.0};
}

bool is_markovian_window(const DephasingSpec& spec, double t_start, double t_end) {
  spec.validate();
  if (!(t_start >= 0.0 && t_start < t_end) || std::isinf(t_end))
    throw std::domain_error("is_markovian_window: need 0 <= t_start < t_end < inf");
  constexpr std::size_t kGrid = 2049;
  double ts[kGrid], rs[kGrid];
  for (std::size_t i = 0; i < kGrid; ++i)
    ts[i] = t_start + (t_end - t_start) * static_cast<double>(i) / (kGrid - 1);
  gamma_rate_batch(spec, ts, rs, kGrid);
  for (std::size_t i = 0; i < kGrid; ++i)
    if (rs[i] < -1e-12) return false;
  return true;
}

}  // namespace qsl
