#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace qsl {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Relative/absolute tolerance pair driving adaptive numerics.
struct Tolerance {
  double rel = 1e-8;
  double abs = 1e-12;

  void validate() const {
    if (!(rel > 0.0)) throw std::domain_error("Tolerance: rel must be > 0");
    if (!(abs >= 0.0)) throw std::domain_error("Tolerance: abs must be >= 0");
  }
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // absolute
  std::size_t evaluations = 0;
};

/// Thrown when an integral fails to reach tolerance within its evaluation
/// budget; carries the best estimate so callers can degrade gracefully.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, QuadratureResult best)
      : std::runtime_error(what), best_(best) {}
  const QuadratureResult& best_estimate() const noexcept { return best_; }

 private:
  QuadratureResult best_;
};

inline constexpr std::size_t kDefaultEvalBudget = 1000000;

/// Batch integrand: fill out[0..n) with f applied to x[0..n).
using BatchFn1 = std::function<void(const double* x, double* out, std::size_t n)>;
using ScalarFn1 = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b]. Either bound
/// may be infinite; semi-infinite and doubly infinite ranges are mapped onto
/// finite intervals by rational substitutions before subdividing.
QuadratureResult integrate_1d(const BatchFn1& f, double a, double b,
                              Tolerance tol = {},
                              std::size_t max_evals = kDefaultEvalBudget);
QuadratureResult integrate_1d(const ScalarFn1& f, double a, double b,
                              Tolerance tol = {},
                              std::size_t max_evals = kDefaultEvalBudget);

/// Axis-aligned rectangle; any bound may be +/-infinity.
struct Rect {
  double x_lo = 0.0, x_hi = 1.0;
  double y_lo = 0.0, y_hi = 1.0;
};

using BatchFn2 =
    std::function<void(const double* x, const double* y, double* out, std::size_t n)>;
using ScalarFn2 = std::function<double(double, double)>;

/// Iterated adaptive integration over a rectangle (outer x, inner y). The
/// error estimate covers both axes; the evaluation budget is shared.
QuadratureResult integrate_2d(const BatchFn2& f, Rect domain, Tolerance tol = {},
                              std::size_t max_evals = kDefaultEvalBudget);
QuadratureResult integrate_2d(const ScalarFn2& f, Rect domain, Tolerance tol = {},
                              std::size_t max_evals = kDefaultEvalBudget);

/// Euler Gamma function for n > 0, accurate to well beyond 12 significant
/// digits. Throws std::domain_error for n <= 0.
double euler_gamma(double n);

}  // namespace qsl
