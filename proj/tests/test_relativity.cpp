#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "qsl/relativity.hpp"

using namespace qsl;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent high-precision references computed with an external adaptive
// quadrature over the same reduced integrand before this module was built.
constexpr double kChiInf_K100_W30 = 0.48049345916529;
constexpr double kChiInf_K001_W30 = 0.23956256128661;
constexpr double kChi_a2_K1_W4 = 0.12262335226786;

}  // namespace

TEST_CASE("wigner_amplitudes: alpha = 0 reduces to the bare profile") {
  BoostedPacketSpec spec{kPi / 4.0, 1.0, 2.0, 0.0};
  const std::array<double, 3> q{0.3, -0.7, 1.1};
  const auto w = wigner_amplitudes(q, spec);
  CHECK(std::abs(w.a2) == 0.0);
  CHECK(std::abs(w.a1 - gaussian_profile(q, spec.K, spec.W)) < 1e-15);
  CHECK(w.p0 == doctest::Approx(w.q0));
}

TEST_CASE("wigner_amplitudes: a2 vanishes in the qz = 0 plane") {
  BoostedPacketSpec spec{0.3, 2.0, 1.5, 1.7};
  const auto w = wigner_amplitudes({1.0, 0.5, 0.0}, spec);
  CHECK(std::abs(w.a2) == 0.0);
  CHECK(std::abs(w.a1) > 0.0);
}

TEST_CASE("wigner_amplitudes: spinor norm identity on random inputs") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> qd(-3.0, 3.0);
  std::uniform_real_distribution<double> ad(0.0, 6.0);
  std::uniform_real_distribution<double> kd(0.0, 5.0);
  std::uniform_real_distribution<double> wd(0.3, 8.0);
  for (int i = 0; i < 1000; ++i) {
    BoostedPacketSpec spec{0.5, kd(rng), wd(rng), ad(rng)};
    const std::array<double, 3> q{qd(rng), qd(rng), qd(rng)};
    const auto w = wigner_amplitudes(q, spec);
    const double f = gaussian_profile(q, spec.K, spec.W);
    const double lhs = std::norm(w.a1) + std::norm(w.a2);
    const double rhs = (w.q0 / w.p0) * f * f;
    CHECK(w.q0 >= 1.0);
    CHECK(w.p0 >= 1.0 - 1e-14);
    if (rhs > 1e-290) CHECK(std::abs(lhs - rhs) <= 1e-10 * rhs);
  }
}

TEST_CASE("wigner_amplitudes: example identity at alpha=2, K=1, W=1") {
  BoostedPacketSpec spec{kPi / 4.0, 1.0, 1.0, 2.0};
  const std::array<double, 3> q{1.0, 0.5, 0.5};
  const auto w = wigner_amplitudes(q, spec);
  const double f = gaussian_profile(q, spec.K, spec.W);
  const double lhs = std::norm(w.a1) + std::norm(w.a2);
  const double rhs = (w.q0 / w.p0) * f * f;
  CHECK(std::abs(lhs - rhs) <= 1e-12 * rhs);
  CHECK_THROWS_AS(wigner_amplitudes(q, BoostedPacketSpec{0.1, 1, 1, kInfinity}),
                  std::domain_error);
}

TEST_CASE("chi: exact zero at alpha = 0") {
  for (double K : {0.01, 1.0, 100.0}) {
    for (double W : {4.0, 30.0}) {
      const auto r = chi(BoostedPacketSpec{0.2, K, W, 0.0});
      CHECK(r.value == 0.0);
      CHECK(r.method == ChiMethod::analytic_zero);
    }
  }
}

TEST_CASE("chi: frozen external references") {
  const auto inf_a = chi_infinite(100.0, 30.0);
  CHECK(std::abs(inf_a.value - kChiInf_K100_W30) < 1e-6);
  CHECK(4.0 * inf_a.value > 1.0);
  CHECK(inf_a.method == ChiMethod::infinite_limit);

  const auto inf_b = chi_infinite(0.01, 30.0);
  CHECK(std::abs(inf_b.value - kChiInf_K001_W30) < 1e-6);
  CHECK(4.0 * inf_b.value < 1.0);

  const auto fin = chi(BoostedPacketSpec{0.0, 1.0, 4.0, 2.0});
  CHECK(fin.method == ChiMethod::quadrature2d);
  CHECK(std::abs(fin.value - kChi_a2_K1_W4) < 1e-6);

  // the infinite-rapidity input delegates to the limit path
  const auto via_chi = chi(BoostedPacketSpec{0.0, 100.0, 30.0, kInfinity});
  CHECK(via_chi.method == ChiMethod::infinite_limit);
  CHECK(via_chi.value == inf_a.value);
}

TEST_CASE("chi: non-decreasing in alpha, bounded by the infinite limit") {
  for (double K : {0.01, 100.0}) {
    const double W = 30.0;
    double prev = 0.0;
    for (double a : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
      const auto r = chi(BoostedPacketSpec{0.0, K, W, a});
      CHECK(r.value >= prev - 1e-10);
      prev = r.value;
    }
    const auto lim = chi_infinite(K, W);
    CHECK(lim.value >= prev - 1e-9);
  }
}

TEST_CASE("chi_infinite: shrinks to zero with the packet width") {
  const auto r = chi_infinite(0.0, 1e-2);
  CHECK(r.value >= 0.0);
  CHECK(r.value < 1e-4);
}

TEST_CASE("chi_mc_oracle: deterministic, zero at alpha = 0") {
  BoostedPacketSpec spec{0.0, 1.0, 4.0, 0.0};
  const auto z = chi_mc_oracle(spec, 10000, 77);
  CHECK(z.value == 0.0);
  CHECK(z.method == ChiMethod::mc_oracle);

  spec.alpha = 2.0;
  const auto a = chi_mc_oracle(spec, 50000, 123);
  const auto b = chi_mc_oracle(spec, 50000, 123);
  CHECK(a.value == b.value);
  CHECK(a.error_estimate == b.error_estimate);
}

TEST_CASE("chi_mc_oracle agrees with quadrature on a spot grid") {
  for (double a : {0.5, 2.0, kInfinity}) {
    for (double K : {0.01, 1.0}) {
      for (double W : {4.0, 30.0}) {
        BoostedPacketSpec spec{0.0, K, W, a};
        const auto q = chi(spec);
        const auto m = chi_mc_oracle(spec, 200000, 42);
        CHECK(std::abs(q.value - m.value) <= 3.5 * m.error_estimate);
      }
    }
  }
}

TEST_CASE("chi_mc_oracle error shrinks like 1/sqrt(samples)") {
  BoostedPacketSpec spec{0.0, 1.0, 4.0, 2.0};
  const auto small = chi_mc_oracle(spec, 50000, 9);
  const auto big = chi_mc_oracle(spec, 200000, 10);
  const double ratio = big.error_estimate / small.error_estimate;
  CHECK(ratio > 0.4);
  CHECK(ratio < 0.6);
}

TEST_CASE("chi via the amplitude route matches the weight route") {
  // |a2|^2 (p0/q0) / |f|^2 reconstructs the chi integrand pointwise
  BoostedPacketSpec spec{0.0, 1.0, 2.0, 1.3};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> qd(-3.0, 3.0);
  const double s2 = std::sinh(spec.alpha / 2.0) * std::sinh(spec.alpha / 2.0);
  for (int i = 0; i < 200; ++i) {
    const std::array<double, 3> q{qd(rng), qd(rng), qd(rng)};
    const auto w = wigner_amplitudes(q, spec);
    const double f = gaussian_profile(q, spec.K, spec.W);
    const double via_a2 = std::norm(w.a2) * (w.p0 / w.q0) / (f * f);
    const double direct = s2 * q[2] * q[2] / ((w.q0 + 1.0) * (w.p0 + 1.0));
    CHECK(std::abs(via_a2 - direct) <= 1e-12 * std::max(direct, 1e-30));
  }
}

TEST_CASE("initial_state: pinned matrices") {
  const QubitState max_coh = initial_state(0.0, kPi / 4.0);
  CHECK(max_abs_diff(max_coh.m, Mat2c{0.5, 0.5, 0.5, 0.5}) < 1e-15);
  const QubitState up = initial_state(0.0, 0.0);
  CHECK(max_abs_diff(up.m, Mat2c{1.0, 0.0, 0.0, 0.0}) < 1e-15);
  const QubitState mixed = initial_state(0.25, kPi / 4.0);
  CHECK(max_abs_diff(mixed.m, Mat2c{0.5, 0.0, 0.0, 0.5}) < 1e-15);
  CHECK_THROWS_AS(initial_state(-0.01, 0.1), std::domain_error);
  CHECK_THROWS_AS(initial_state(0.51, 0.1), std::domain_error);
  CHECK_THROWS_AS(initial_state(0.1, kPi), std::domain_error);
}

TEST_CASE("initial_state eigenvalues match a generic eigensolver") {
  std::mt19937_64 rng(100);
  std::uniform_real_distribution<double> cd(0.0, 0.5);
  std::uniform_real_distribution<double> td(0.0, kPi / 4.0);
  for (int i = 0; i < 300; ++i) {
    const double c = cd(rng), th = td(rng);
    const QubitState rho = initial_state(c, th);
    const auto ev = hermitian_eigenvalues(rho.m);

    Eigen::Matrix2cd m;
    m << rho.m.m00, rho.m.m01, rho.m.m10, rho.m.m11;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(m);
    const double lo = solver.eigenvalues()(0), hi = solver.eigenvalues()(1);
    CHECK(std::abs(ev[0] - hi) < 1e-12);
    CHECK(std::abs(ev[1] - lo) < 1e-12);

    // closed-form radius
    const double a = (1.0 - 2.0 * c) * std::cos(2.0 * th);
    const double b = (1.0 - 4.0 * c) * std::sin(2.0 * th);
    const double r = std::sqrt(a * a + b * b);
    CHECK(r <= 1.0 + 1e-12);
    CHECK(std::abs(ev[0] - 0.5 * (1.0 + r)) < 1e-12);
  }
}
