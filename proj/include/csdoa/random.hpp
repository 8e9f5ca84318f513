// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

#include "csdoa/types.hpp"

namespace csdoa {

/// splitmix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t x);

/// Seed for a child stream `stream` of `parent`. Distinct streams of the same
/// parent are decorrelated, and the map is pure, so parallel trials can derive
/// their seeds without coordination.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream);

// Random stream with platform-independent output. The std distributions are
// implementation-defined, so the transforms are done here on top of the
// (fully specified) mt19937_64 engine.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller (no cached second variate).
  double normal();
  /// Circular complex Gaussian with E|z|^2 = variance.
  Complex complex_normal(double variance);
  /// exp(i*phi) with phi uniform on [0, 2*pi).
  Complex unit_phase();

 private:
  std::mt19937_64 engine_;
};

}  // namespace csdoa
