// Copyright 2026 The qf5 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

#include "qf/fourier.hpp"

namespace qf {

/// splitmix64: the fixed portable generator behind every seeded experiment.
/// Ports in other languages reproduce identical streams from the same seed:
///   state += 0x9E3779B97F4A7C15; z = state;
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
///   return z ^ (z >> 31);
/// Doubles are (next() >> 11) * 2^-53, uniform on [0, 1).
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on [-1, 1].
  double next_signed() { return 2.0 * next_double() - 1.0; }
};

/// Coin-toss set: each index joins independently with probability alpha,
/// one draw per index in increasing order.
std::vector<std::size_t> random_set(const GroupConfig& cfg, double alpha, std::uint64_t seed);

DenseFunction random_pm1(const GroupConfig& cfg, SplitMix64& rng);           // values in {-1,+1}
DenseFunction random_real_bounded(const GroupConfig& cfg, SplitMix64& rng);  // uniform [-1,1]
DenseFunction random_complex_bounded(const GroupConfig& cfg, SplitMix64& rng);  // unit disc

LinearForm random_form(int n, SplitMix64& rng);
Mat5 random_mat(int n, SplitMix64& rng);
Mat5 random_sym(int n, SplitMix64& rng);

}  // namespace qf
