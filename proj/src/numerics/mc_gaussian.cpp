#include "qsl/mc.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace qsl {

namespace detail {

std::uint64_t counter_mix64(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + (k + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double counter_uniform(std::uint64_t seed, std::uint64_t k) {
  return static_cast<double>(counter_mix64(seed, k) >> 11) * 0x1.0p-53;
}

std::array<double, 3> counter_normal3(std::uint64_t seed, std::uint64_t i) {
  const double u0 = counter_uniform(seed, 4 * i);
  const double u1 = counter_uniform(seed, 4 * i + 1);
  const double u2 = counter_uniform(seed, 4 * i + 2);
  const double u3 = counter_uniform(seed, 4 * i + 3);
  // 1-u keeps the logs finite: u in [0,1) -> 1-u in (0,1]
  const double r0 = std::sqrt(-2.0 * std::log(1.0 - u0));
  const double r1 = std::sqrt(-2.0 * std::log(1.0 - u2));
  const double a0 = 2.0 * std::numbers::pi * u1;
  const double a1 = 2.0 * std::numbers::pi * u3;
  return {r0 * std::cos(a0), r0 * std::sin(a0), r1 * std::cos(a1)};
}

}  // namespace detail

QuadratureResult mc_integrate_gaussian3d(const BatchFn3& g,
                                         std::array<double, 3> mean, double sigma,
                                         std::size_t samples, std::uint64_t seed) {
  if (samples < 1000)
    throw std::domain_error("mc_integrate_gaussian3d: need samples >= 1000");
  if (!(sigma > 0.0))
    throw std::domain_error("mc_integrate_gaussian3d: need sigma > 0");

  constexpr std::size_t kBlock = 4096;
  std::vector<double> qx(kBlock), qy(kBlock), qz(kBlock), val(kBlock);

  // Welford accumulation in sample order keeps the result independent of the
  // block size and bit-stable for a fixed (seed, samples) pair.
  double m = 0.0, m2 = 0.0;
  std::size_t count = 0;
  for (std::size_t base = 0; base < samples; base += kBlock) {
    const std::size_t n = std::min(kBlock, samples - base);
    for (std::size_t j = 0; j < n; ++j) {
      const auto z = detail::counter_normal3(seed, base + j);
      qx[j] = mean[0] + sigma * z[0];
      qy[j] = mean[1] + sigma * z[1];
      qz[j] = mean[2] + sigma * z[2];
    }
    g(qx.data(), qy.data(), qz.data(), val.data(), n);
    for (std::size_t j = 0; j < n; ++j) {
      ++count;
      const double d = val[j] - m;
      m += d / static_cast<double>(count);
      m2 += d * (val[j] - m);
    }
  }
  const double nd = static_cast<double>(samples);
  const double stderr_est =
      samples > 1 ? std::sqrt(m2 / (nd * (nd - 1.0))) : kInfinity;
  return {m, stderr_est, samples};
}

QuadratureResult mc_integrate_gaussian3d(const ScalarFn3& g,
                                         std::array<double, 3> mean, double sigma,
                                         std::size_t samples, std::uint64_t seed) {
  return mc_integrate_gaussian3d(
      [&g](const double* x, const double* y, const double* z, double* out,
           std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) out[i] = g({x[i], y[i], z[i]});
      },
      mean, sigma, samples, seed);
}

}  // namespace qsl
