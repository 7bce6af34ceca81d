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
#include <vector>

#include "qf/fourier.hpp"

namespace qf {

// Counting operators for 3- and 4-term arithmetic progressions:
//   Lambda_3(f1,f2,f3)    = E_{x,d} f1(x) f2(x+d) f3(x+2d)
//   Lambda_4(f1,...,f4)   = E_{x,d} f1(x) f2(x+d) f3(x+2d) f4(x+3d)
// The d = 0 (trivial) progressions are included throughout; ap_census
// reports counts both with and without them.

Cplx lambda3(const DenseFunction& f1, const DenseFunction& f2, const DenseFunction& f3);

/// Lambda_3 via the spectral formula sum_r fhat1(r) fhat2(-2r) fhat3(r).
Cplx lambda3_spectral(const DenseFunction& f1, const DenseFunction& f2, const DenseFunction& f3);

Cplx lambda4(const DenseFunction& f1, const DenseFunction& f2, const DenseFunction& f3,
             const DenseFunction& f4);

/// E_{x,d} f1(x) f2(x+d) f3(x+2d) f4(x+3d) w(d), for a density w on the
/// common difference (w >= 0, E w = 1; non-normalized w only warns).
Cplx lambda4_weighted(const DenseFunction& f1, const DenseFunction& f2, const DenseFunction& f3,
                      const DenseFunction& f4, const DenseFunction& w);

/// Balanced function 1_A - alpha, alpha = |A|/N; has mean zero.
DenseFunction balanced(const std::vector<std::size_t>& members, const GroupConfig& cfg);

struct ExpansionTerm {
  unsigned mask = 0;  // bit i set: slot i carries the balanced function, else the density
  Cplx value = 0.0;
};

struct ExpansionReport {
  int k = 0;
  std::vector<ExpansionTerm> terms;  // 2^k terms, mask order
  Cplx term_sum = 0.0;
  Cplx direct = 0.0;  // Lambda_k of the raw indicators
  double error = 0.0;
};

/// Expands Lambda_k(1_{A_1},...) into the 2^k density/balanced terms and
/// checks the sum against the direct evaluation (throws beyond 1e-9).
ExpansionReport balanced_expansion_check(const std::vector<std::vector<std::size_t>>& sets,
                                         const GroupConfig& cfg);

struct GvnReport {
  double lambda4_abs = 0.0;
  double min_u3 = 0.0;
  double slack4 = 0.0;  // min_u3 - lambda4_abs
  double lambda3_abs = 0.0;
  double min_u2 = 0.0;
  double slack3 = 0.0;
};

/// |Lambda_4| <= min_i ||f_i||_{U^3} plus the Lambda_3 / U^2 analogue on
/// (f1,f2,f3). Inputs must be 1-bounded; inequality violations throw.
GvnReport gvn_check(const DenseFunction& f1, const DenseFunction& f2, const DenseFunction& f3,
                    const DenseFunction& f4);

struct ApCensus {
  std::uint64_t total = 0;       // includes the d = 0 progressions
  std::uint64_t nontrivial = 0;  // d != 0 only
};

/// Exact k-term progression count in A by integer enumeration, k in {3,4}.
ApCensus ap_census(const std::vector<std::size_t>& members, const GroupConfig& cfg, int k);

}  // namespace qf
