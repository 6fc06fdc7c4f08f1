// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace rischan {

using Rng = std::mt19937_64;

/// Independent generator derived from a top-level seed, a stream name
/// ("dataset", "init", "shuffle", "noise", ...) and an index within it.
Rng make_stream(std::uint64_t seed, std::string_view name, std::uint64_t index = 0);

/// Circularly-symmetric complex normal draw with unit variance
/// (real and imaginary parts each N(0, 1/2)).
struct ComplexNormal {
  template <class G>
  std::complex<double> operator()(G& g) {
    return {dist(g), dist(g)};
  }
  std::normal_distribution<double> dist{0.0, 0.7071067811865476};
};

}  // namespace rischan
