#pragma once

#include <array>
#include <cstdint>
#include <functional>

#include "qsl/numerics.hpp"

namespace qsl {

/// Batch function of a 3-vector sample block.
using BatchFn3 = std::function<void(const double* x, const double* y,
                                    const double* z, double* out, std::size_t n)>;
using ScalarFn3 = std::function<double(const std::array<double, 3>&)>;

/// Monte-Carlo estimate of E[g(q)] with q ~ N(mean, sigma^2 I), i.e. of
/// the integral of g against an isotropic Gaussian density. error_estimate is
/// the sample standard error. The generator is counter-based: a fixed
/// (seed, samples) pair yields a bit-identical result on any thread.
QuadratureResult mc_integrate_gaussian3d(const BatchFn3& g,
                                         std::array<double, 3> mean, double sigma,
                                         std::size_t samples, std::uint64_t seed);
QuadratureResult mc_integrate_gaussian3d(const ScalarFn3& g,
                                         std::array<double, 3> mean, double sigma,
                                         std::size_t samples, std::uint64_t seed);

namespace detail {

/// SplitMix64 stream member k for a given seed: stateless, so samples can be
/// generated from bare counters.
std::uint64_t counter_mix64(std::uint64_t seed, std::uint64_t k);

/// Uniform in [0, 1) from the counter stream.
double counter_uniform(std::uint64_t seed, std::uint64_t k);

/// Standard normal triple for sample index i (Box-Muller over counters 4i..4i+3).
std::array<double, 3> counter_normal3(std::uint64_t seed, std::uint64_t i);

}  // namespace detail

}  // namespace qsl
