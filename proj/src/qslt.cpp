#include "qsl/qslt.hpp"

#include <cmath>
#include <vector>

namespace qsl {

namespace {

// Time averages are driven by relative error only, so both assembly routes of
// the same integrand subdivide identically and criterion-level comparisons do
// not pick up absolute-floor noise.
constexpr Tolerance kAvgTol{1e-10, 0.0};
constexpr double kDenominatorFloor = 1e-300;

double sin2t(double theta) { return std::sin(2.0 * theta); }

void check_chi(double chi_value) {
  if (!(chi_value >= 0.0 && chi_value <= 0.5))
    throw std::domain_error("qslt: chi must be in [0, 0.5]");
}

// p(t) along the window, one nested quadrature per node.
void p_batch(const DephasingSpec& bath, const double* t, double* out,
             std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = decoherence_factor(bath, t[i]);
}

struct WindowEndpoints {
  double p_tau, p_t;
  QubitState rho_tau, rho_t;
};

WindowEndpoints endpoints(const QsltProblem& prob, double chi_value) {
  const double tau = prob.window.tau;
  const double t_end = tau + prob.window.delta_tau;
  const double p_tau = decoherence_factor(prob.bath, tau);
  const double p_t = decoherence_factor(prob.bath, t_end);
  const QubitState rho0 = initial_state(chi_value, prob.packet.theta);
  return {p_tau, p_t, kraus_evolve(rho0, p_tau), kraus_evolve(rho0, p_t)};
}

void validate_finite_window(const QsltProblem& prob) {
  prob.bath.validate();
  prob.packet.validate();
  prob.window.validate();
  if (std::isinf(prob.window.tau))
    throw std::domain_error("qslt: tau = +inf is only defined for the Markovian closed form");
}

// Average of sum_j lambda_j(t) mu_j(t) over the window, assembled literally
// from the two singular-value operations.
double avg_lambda_mu(const QsltProblem& prob, double chi_value) {
  const double theta = prob.packet.theta;
  const auto r = integrate_1d(
      [&](const double* t, double* out, std::size_t n) {
        std::vector<double> rate(n), p(n);
        gamma_rate_batch(prob.bath, t, rate.data(), n);
        p_batch(prob.bath, t, p.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
          const auto lam = state_singular_values(p[i], chi_value, theta);
          const auto mu = generator_singular_values(p[i], rate[i], chi_value, theta);
          out[i] = lam[0] * mu[0] + lam[1] * mu[1];
        }
      },
      prob.window.tau, prob.window.tau + prob.window.delta_tau, kAvgTol);
  return r.value / prob.window.delta_tau;
}

// Average of sqrt(sum_j mu_j(t)^2).
double avg_mu_hs(const QsltProblem& prob, double chi_value) {
  const double theta = prob.packet.theta;
  const auto r = integrate_1d(
      [&](const double* t, double* out, std::size_t n) {
        std::vector<double> rate(n), p(n);
        gamma_rate_batch(prob.bath, t, rate.data(), n);
        p_batch(prob.bath, t, p.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
          const auto mu = generator_singular_values(p[i], rate[i], chi_value, theta);
          out[i] = std::sqrt(mu[0] * mu[0] + mu[1] * mu[1]);
        }
      },
      prob.window.tau, prob.window.tau + prob.window.delta_tau, kAvgTol);
  return r.value / prob.window.delta_tau;
}

}  // namespace

void EvolutionWindow::validate() const {
  if (!(delta_tau > 0.0))
    throw std::domain_error("EvolutionWindow: delta_tau must be > 0");
  if (!(tau >= 0.0))
    throw std::domain_error("EvolutionWindow: tau must be >= 0 or +inf");
}

double relative_purity(const QubitState& rho_t, const QubitState& rho_tau) {
  const double denom = rho_tau.purity();
  const double num = (rho_t.m * rho_tau.m).trace().real();
  return num / denom;
}

double purity_displacement(const QubitState& rho_t, const QubitState& rho_tau) {
  const Mat2c diff = rho_t.m - rho_tau.m;
  return std::abs((diff * rho_tau.m).trace().real());
}

std::array<double, 2> state_singular_values(double p_t, double chi_value,
                                            double theta) {
  if (!(p_t >= 0.0 && p_t <= 1.0))
    throw std::domain_error("state_singular_values: p_t must be in [0, 1]");
  check_chi(chi_value);
  const double a = (1.0 - 2.0 * chi_value);
  const double b = p_t * (1.0 - 4.0 * chi_value);
  const double arg = b * b + a * a - (b * b - a * a) * std::cos(4.0 * theta);
  const double half_gap = std::sqrt(std::max(arg, 0.0)) / (2.0 * std::sqrt(2.0));
  return {0.5 + half_gap, 0.5 - half_gap};
}

std::array<double, 2> generator_singular_values(double p_t, double rate,
                                                double chi_value, double theta) {
  if (!(p_t >= 0.0 && p_t <= 1.0))
    throw std::domain_error("generator_singular_values: p_t must be in [0, 1]");
  check_chi(chi_value);
  const double mu =
      0.5 * std::abs(rate * p_t * (1.0 - 4.0 * chi_value)) * sin2t(theta);
  return {mu, mu};
}

double time_average(const ScalarFn1& g, const EvolutionWindow& window,
                    Tolerance tol) {
  window.validate();
  if (std::isinf(window.tau))
    throw std::domain_error("time_average: window must be finite");
  const auto r =
      integrate_1d(g, window.tau, window.tau + window.delta_tau, tol);
  return r.value / window.delta_tau;
}

double ml_bound_open(const QsltProblem& prob, double chi_value) {
  validate_finite_window(prob);
  check_chi(chi_value);
  if (1.0 - 4.0 * chi_value == 0.0) return 0.0;  // critical point
  const auto ep = endpoints(prob, chi_value);
  const double num = purity_displacement(ep.rho_t, ep.rho_tau);
  const double denom = avg_lambda_mu(prob, chi_value);
  if (denom < kDenominatorFloor) return kInfinity;  // no evolution
  return num / denom;
}

double mt_bound_open(const QsltProblem& prob, double chi_value) {
  validate_finite_window(prob);
  check_chi(chi_value);
  if (1.0 - 4.0 * chi_value == 0.0) return 0.0;
  const auto ep = endpoints(prob, chi_value);
  const double num = purity_displacement(ep.rho_t, ep.rho_tau);
  const double denom = avg_mu_hs(prob, chi_value);
  if (denom < kDenominatorFloor) return kInfinity;
  return num / denom;
}

double ml_bound_closed(double f_final, double purity_initial,
                       double averaged_energy) {
  if (!(averaged_energy > 0.0))
    throw std::domain_error("ml_bound_closed: averaged energy must be > 0");
  return std::abs(f_final - 1.0) * purity_initial / (2.0 * averaged_energy);
}

double ml_bound_closed(const QsltProblem& prob, double chi_value,
                       double averaged_energy) {
  validate_finite_window(prob);
  check_chi(chi_value);
  const auto ep = endpoints(prob, chi_value);
  return ml_bound_closed(relative_purity(ep.rho_t, ep.rho_tau),
                         ep.rho_tau.purity(), averaged_energy);
}

QsltResult unified_qslt(const QsltProblem& prob, double chi_value) {
  validate_finite_window(prob);
  check_chi(chi_value);
  QsltResult out;
  const auto ep = endpoints(prob, chi_value);
  out.f_final = relative_purity(ep.rho_t, ep.rho_tau);
  out.purity_initial = ep.rho_tau.purity();

  if (1.0 - 4.0 * chi_value == 0.0) {
    out.ml_term = out.mt_term = out.value = 0.0;
    out.active_bound = ActiveBound::ML;
    return out;
  }

  const double num = purity_displacement(ep.rho_t, ep.rho_tau);
  const double d_ml = avg_lambda_mu(prob, chi_value);
  const double d_mt = avg_mu_hs(prob, chi_value);
  out.ml_term = d_ml < kDenominatorFloor ? kInfinity : num / d_ml;
  out.mt_term = d_mt < kDenominatorFloor ? kInfinity : num / d_mt;
  out.active_bound = out.mt_term > out.ml_term ? ActiveBound::MT : ActiveBound::ML;
  out.value = std::max(out.ml_term, out.mt_term);
  return out;
}

double relativistic_qslt(const QsltProblem& prob, double chi_value) {
  validate_finite_window(prob);
  check_chi(chi_value);
  const double b = 1.0 - 4.0 * chi_value;
  if (b == 0.0) return 0.0;
  const double tau = prob.window.tau;
  const double t_end = tau + prob.window.delta_tau;
  const double p_tau = decoherence_factor(prob.bath, tau);
  const double p_t = decoherence_factor(prob.bath, t_end);
  const double num =
      std::abs(b * (p_tau * p_t - p_tau * p_tau)) * sin2t(prob.packet.theta);
  const auto integral = integrate_1d(
      [&](const double* t, double* out, std::size_t n) {
        std::vector<double> rate(n), p(n);
        gamma_rate_batch(prob.bath, t, rate.data(), n);
        p_batch(prob.bath, t, p.data(), n);
        for (std::size_t i = 0; i < n; ++i) out[i] = std::abs(rate[i]) * p[i];
      },
      tau, t_end, kAvgTol);
  const double denom = integral.value / prob.window.delta_tau;
  if (denom < kDenominatorFloor) return kInfinity;  // p constant on the window
  return num / denom;
}

double markovian_qslt(double p_tau, double delta_tau, double chi_value,
                      double theta) {
  if (!(p_tau >= 0.0 && p_tau <= 1.0))
    throw std::domain_error("markovian_qslt: p_tau must be in [0, 1]");
  if (!(delta_tau > 0.0))
    throw std::domain_error("markovian_qslt: delta_tau must be > 0");
  check_chi(chi_value);
  return p_tau * delta_tau * std::abs(1.0 - 4.0 * chi_value) * sin2t(theta);
}

}  // namespace qsl
