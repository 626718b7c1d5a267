#pragma once

#include <array>

#include "qsl/dephasing.hpp"
#include "qsl/numerics.hpp"
#include "qsl/qubit.hpp"
#include "qsl/relativity.hpp"

namespace qsl {

/// Driving window: the state prepared at tau evolves until tau + delta_tau.
/// tau may be +inf; only the Markovian closed form accepts that limit.
struct EvolutionWindow {
  double tau = 0.0;
  double delta_tau = 1.0;

  void validate() const;
};

/// Full problem bundle: bath, boosted packet, window. The packet determines
/// chi, but every bound below takes chi as an explicit value so tests can
/// probe the critical point directly.
struct QsltProblem {
  DephasingSpec bath;
  BoostedPacketSpec packet;
  EvolutionWindow window;
};

enum class ActiveBound { ML, MT };

struct QsltResult {
  double value = 0.0;
  double ml_term = 0.0;
  double mt_term = 0.0;
  ActiveBound active_bound = ActiveBound::ML;
  double f_final = 1.0;        // relative purity at the window end
  double purity_initial = 1.0; // tr rho(tau)^2
};

/// Relative purity tr(rho_t rho_tau) / tr(rho_tau^2).
double relative_purity(const QubitState& rho_t, const QubitState& rho_tau);

/// |f(t) - 1| tr(rho_tau^2) = |tr((rho_t - rho_tau) rho_tau)|, formed from the
/// difference matrix so nearby states do not cancel catastrophically.
double purity_displacement(const QubitState& rho_t, const QubitState& rho_tau);

/// Singular values {lambda+, lambda-} of the evolved state rho(t);
/// lambda+ + lambda- = 1 exactly.
std::array<double, 2> state_singular_values(double p_t, double chi_value,
                                            double theta);

/// Singular values {mu1, mu2} (equal) of the dephasing generator acting on
/// rho(t), with the generator's gamma read as the instantaneous rate.
std::array<double, 2> generator_singular_values(double p_t, double rate,
                                                double chi_value, double theta);

/// (1/delta_tau) * int_tau^{tau+delta_tau} g dt.
double time_average(const ScalarFn1& g, const EvolutionWindow& window,
                    Tolerance tol = {});

/// ML-type bound for open dynamics: |f-1| tr(rho_tau^2) / avg(sum lambda_j mu_j).
/// Returns +inf when the averaged denominator vanishes (state never evolves);
/// returns 0 at the critical chi = 1/4.
double ml_bound_open(const QsltProblem& prob, double chi_value);

/// MT-type bound: |f-1| tr(rho_tau^2) / avg(sqrt(sum mu_j^2)).
double mt_bound_open(const QsltProblem& prob, double chi_value);

/// ML bound for closed (unitary) dynamics: |f-1| tr(rho_tau^2) / (2 E_avg).
double ml_bound_closed(double f_final, double purity_initial,
                       double averaged_energy);
double ml_bound_closed(const QsltProblem& prob, double chi_value,
                       double averaged_energy);

/// Unified QSLT: max of the ML and MT bounds with the shared numerator
/// factored once. For this model the ML bound is always the larger.
QsltResult unified_qslt(const QsltProblem& prob, double chi_value);

/// Closed-form relativistic QSLT,
///   |(1-4chi)(p_tau p_t - p_tau^2)| sin(2 theta) / ((1/dtau) int |dp/dt'| dt'),
/// with |dp/dt| = |rate| p evaluated by quadrature. Requires finite tau.
double relativistic_qslt(const QsltProblem& prob, double chi_value);

/// Markovian closed form p_tau * delta_tau * |1-4chi| * sin(2 theta).
double markovian_qslt(double p_tau, double delta_tau, double chi_value,
                      double theta);

}  // namespace qsl
