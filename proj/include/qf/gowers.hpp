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
#include <span>

#include "qf/fourier.hpp"

namespace qf {

// Gowers uniformity norms on G = F_5^n.
//
//   ||f||_{U^k}^{2^k} = E_{x,h_1,...,h_k} prod_{w in {0,1}^k} C^{|w|} f(x + w.h)
//
// with C = complex conjugation applied at odd-weight cube vertices. Two
// evaluation routes are provided: the definitional O(N^{k+1}) sum, and the
// fast route using ||f||_{U^2} = ||fhat||_4 plus the recursion
// ||f||_{U^k}^{2^k} = E_h ||D(f;h)||_{U^{k-1}}^{2^{k-1}} on multiplicative
// derivatives D(f;h)(x) = f(x) conj(f(x-h)).

inline constexpr std::uint64_t kDefaultBudget = 1'000'000'000ULL;

enum class GowersMethod { kDirect, kFast };

struct GowersReport {
  int k = 0;
  double value = 0.0;
  GowersMethod method = GowersMethod::kDirect;
  std::uint64_t cost = 0;  // inner-loop evaluation count
};

/// D(f;h)(x) = f(x) conj(f(x-h)).
DenseFunction derivative(const DenseFunction& f, std::size_t h_index);
DenseFunction derivative(const DenseFunction& f, const GroupPoint& h);

/// Definitional sum; k in {2,3,4}, refuses when N^{k+1} exceeds the budget.
GowersReport gowers_norm_direct(const DenseFunction& f, int k,
                                std::uint64_t budget = kDefaultBudget);

/// Spectral route for k = 2, derivative recursion for k = 3, 4.
GowersReport gowers_norm_fast(const DenseFunction& f, int k);

/// Gowers inner product of 2^k functions, f[w] sitting at cube vertex w
/// (bit i of w chooses h_{i+1}). Direct when within budget, otherwise the
/// spectral box evaluation (k <= 3). All f[w] = f gives ||f||_{U^k}^{2^k}.
Cplx gowers_inner_product(std::span<const DenseFunction> fs, int k,
                          std::uint64_t budget = kDefaultBudget);

struct SamorodnitskySides {
  double lhs = 0.0;  // sum_{r1+r2=r3+r4} E_{h1+h2=h3+h4} prod |D(f;h_i)^(r_i)|^2
  double rhs = 0.0;  // E_h sum_r |D(f;h)^(r)|^8
};

/// Both sides of the derivative-spectrum identity; restricted to n <= 2.
SamorodnitskySides samorodnitsky_sides(const DenseFunction& f);

}  // namespace qf
