#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qsl/numerics.hpp"

using namespace qsl;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("integrate_1d: constant over [0,1]") {
  const auto r = integrate_1d([](double) { return 1.0; }, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.error_estimate >= 0.0);
  CHECK(r.evaluations >= 15);
}

TEST_CASE("integrate_1d: sin over [0,pi]") {
  const auto r = integrate_1d([](double x) { return std::sin(x); }, 0.0, kPi);
  CHECK(std::abs(r.value - 2.0) < 1e-12);
}

TEST_CASE("integrate_1d: Ohmic dephasing-rate integrand over [0,1] is ln 2") {
  // eta = omega_c = 1, n = 1: rate integrand 2t/(1+t^2), antiderivative
  // ln(1+t^2)
  const auto r = integrate_1d(
      [](double t) { return 2.0 * t / (1.0 + t * t); }, 0.0, 1.0);
  CHECK(std::abs(r.value - std::log(2.0)) < 1e-12);
}

TEST_CASE("integrate_1d: semi-infinite Gaussian") {
  const auto r =
      integrate_1d([](double x) { return std::exp(-x * x); }, 0.0, kInfinity);
  CHECK(std::abs(r.value - 0.5 * std::sqrt(kPi)) < 1e-12);
}

TEST_CASE("integrate_1d: doubly infinite Lorentzian") {
  const auto r = integrate_1d([](double x) { return 1.0 / (1.0 + x * x); },
                              -kInfinity, kInfinity);
  CHECK(std::abs(r.value - kPi) < 1e-10);
}

TEST_CASE("integrate_1d: linearity in random prefactor") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> cdist(-10.0, 10.0);
  for (int i = 0; i < 20; ++i) {
    const double c = cdist(rng);
    const auto base =
        integrate_1d([](double x) { return std::cos(x) + 2.0; }, 0.0, 3.0);
    const auto scaled = integrate_1d(
        [c](double x) { return c * (std::cos(x) + 2.0); }, 0.0, 3.0);
    CHECK(std::abs(scaled.value - c * base.value) <=
          1e-8 * std::abs(c * base.value) + 1e-12);
  }
}

TEST_CASE("integrate_1d: interval additivity on random smooth functions") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.1, 4.0);
  for (int i = 0; i < 20; ++i) {
    const double w = u(rng), s = u(rng);
    auto f = [w, s](double x) { return std::exp(-s * x) * std::sin(w * x) + x; };
    const double a = 0.0, b = u(rng), c = b + u(rng);
    const auto left = integrate_1d(f, a, b);
    const auto right = integrate_1d(f, b, c);
    const auto whole = integrate_1d(f, a, c);
    const double tol =
        left.error_estimate + right.error_estimate + whole.error_estimate + 1e-12;
    CHECK(std::abs(left.value + right.value - whole.value) <= 10 * tol);
  }
}

TEST_CASE("integrate_1d: budget exhaustion raises with best estimate") {
  // integrable endpoint singularity with a tiny budget cannot converge
  auto f = [](double x) { return std::pow(x, -0.9); };
  CHECK_THROWS_AS(integrate_1d(f, 0.0, 1.0, Tolerance{1e-12, 0.0}, 300),
                  ConvergenceError);
  try {
    integrate_1d(f, 0.0, 1.0, Tolerance{1e-12, 0.0}, 300);
  } catch (const ConvergenceError& e) {
    CHECK(e.best_estimate().evaluations <= 300);
    CHECK(e.best_estimate().value > 0.0);
  }
}

TEST_CASE("integrate_1d: invalid arguments") {
  CHECK_THROWS_AS(integrate_1d([](double) { return 0.0; }, 1.0, 0.0),
                  std::domain_error);
  CHECK_THROWS_AS(
      integrate_1d([](double) { return 0.0; }, 0.0, 1.0, Tolerance{0.0, 0.0}),
      std::domain_error);
}

TEST_CASE("integrate: degenerate intervals are exactly zero") {
  const auto r1 = integrate_1d([](double) { return 7.0; }, 2.0, 2.0);
  CHECK(r1.value == 0.0);
  CHECK(r1.evaluations == 0);
  const auto r2 =
      integrate_2d([](double, double) { return 7.0; }, Rect{0, 1, 3, 3});
  CHECK(r2.value == 0.0);
  CHECK_THROWS_AS(
      integrate_2d([](double, double) { return 0.0; }, Rect{1, 0, 0, 1}),
      std::domain_error);
}

TEST_CASE("integrate_2d: constant on unit square") {
  const auto r =
      integrate_2d([](double, double) { return 1.0; }, Rect{0, 1, 0, 1});
  CHECK(std::abs(r.value - 1.0) < 1e-13);
}

TEST_CASE("integrate_2d: separable polynomial x*y") {
  const auto r =
      integrate_2d([](double x, double y) { return x * y; }, Rect{0, 1, 0, 1});
  CHECK(std::abs(r.value - 0.25) < 1e-13);
}

TEST_CASE("integrate_2d: Gaussian on the first quadrant is pi/4") {
  const auto r = integrate_2d(
      [](double x, double y) { return std::exp(-x * x - y * y); },
      Rect{0, kInfinity, 0, kInfinity});
  CHECK(std::abs(r.value - kPi / 4.0) < 1e-9);
}

TEST_CASE("euler_gamma: integers and half-integer") {
  CHECK(euler_gamma(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(euler_gamma(4.0) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(std::abs(euler_gamma(1.5) - 0.5 * std::sqrt(kPi)) < 1e-12);
}

TEST_CASE("euler_gamma: recurrence on a grid") {
  for (double n = 0.5; n <= 10.0; n += 0.173) {
    const double lhs = euler_gamma(n + 1.0);
    const double rhs = n * euler_gamma(n);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
  }
}

TEST_CASE("euler_gamma: domain error for n <= 0") {
  CHECK_THROWS_AS(euler_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(euler_gamma(-1.5), std::domain_error);
}
