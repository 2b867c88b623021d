// Copyright 2026 The hjw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Shot sampling streams.
//
// Shots are split into chunks of kShotChunk. Chunk c (0-based) is served by a
// std::mt19937_64 whose seed is the (c+1)-th SplitMix64 output starting from
// state = seed. Each draw maps a 64-bit output x to u = (x >> 11) * 2^-53 and
// selects the first outcome whose cumulative weight exceeds u. Counts are
// therefore independent of thread count and of the standard library.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace hjw::rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of chunk `chunk`, i.e. the (chunk+1)-th SplitMix64 output.
inline std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) {
  std::uint64_t state = seed + chunk * 0x9E3779B97F4A7C15ULL;
  return splitmix64(state);
}

inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Running sums of the weights.
inline std::vector<double> cumulative(std::span<const double> weights) {
  std::vector<double> cdf(weights.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    cdf[i] = acc;
  }
  return cdf;
}

/// First index with u < cdf[i]; rounding overflow lands on the last index
/// with positive weight.
inline std::size_t pick(std::span<const double> cdf, std::span<const double> weights, double u) {
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    if (u < cdf[i] && weights[i] > 0.0) return i;
  }
  for (std::size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0.0) return i;
  }
  return 0;
}

}  // namespace hjw::rng
