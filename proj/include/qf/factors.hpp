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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qf/fourier.hpp"
#include "qf/growth.hpp"

namespace qf {

// Quadratic factors: the sigma-algebra pair (B_1, B_2) generated by d_1
// linear forms r_j^T x and d_2 pure quadratics x^T M_j x. Atoms are the
// joint level sets, indexed by configuration space F_5^{d_1} x F_5^{d_2}
// through the maps Gamma(x) = (r_j^T x)_j and Phi(x) = (x^T M_j x)_j.

struct QuadraticFactor {
  GroupConfig cfg;
  std::vector<LinearForm> linear_forms;  // linearly independent (enforced)
  std::vector<Mat5> quadratics;          // symmetric, no duplicates

  int d1() const { return static_cast<int>(linear_forms.size()); }
  int d2() const { return static_cast<int>(quadratics.size()); }
  std::pair<int, int> complexity() const { return {d1(), d2()}; }
};

/// Builds a factor: reduces the linear forms to an independent set, drops
/// zero/duplicate matrices, symmetrizes. The trivial factor has d1 = d2 = 0.
QuadraticFactor make_factor(const GroupConfig& cfg, const std::vector<LinearForm>& forms,
                            const std::vector<Mat5>& mats);

struct Atom {
  F5Vec a;  // Gamma values
  F5Vec b;  // Phi values

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

Atom atom_of(const QuadraticFactor& factor, std::size_t x_index);
Atom atom_of(const QuadraticFactor& factor, const GroupPoint& x);

/// Atom label of every x in one pass, as flat keys a + 5^{d1} * b.
std::vector<std::uint32_t> atom_keys(const QuadraticFactor& factor);
std::uint32_t atom_key(const QuadraticFactor& factor, const Atom& atom);

/// E(f|B_2): constant on atoms, mean preserving, idempotent.
DenseFunction conditional_expectation(const DenseFunction& f, const QuadraticFactor& factor);

/// ||E(f|B_2)||_2^2.
double energy(const DenseFunction& f, const QuadraticFactor& factor);

/// Common refinement: union of generators with dependent forms and duplicate
/// matrices dropped.
QuadraticFactor join(const QuadraticFactor& fa, const QuadraticFactor& fb);

/// min over nonzero lambda in F_5^{d2} of rk(sum lambda_j M_j); the sentinel
/// n + 1 ("infinite") when d2 = 0. Enumerates 5^{d2} - 1 combinations, d2 <= 6.
int factor_rank(const QuadraticFactor& factor);

/// Repeatedly removes a low-rank pencil combination (first violating lambda
/// in lexicographic order, last nonzero coordinate normalized to 1) and adds
/// a row basis of it as linear forms, until rank >= omega1(d1 + d2) or no
/// quadratics remain. The result refines the input.
QuadraticFactor rank_reduce(const QuadraticFactor& factor, const GrowthFn& omega1);

struct AtomStat {
  Atom atom;
  std::uint64_t size = 0;
  double probability = 0.0;
  double deviation = 0.0;  // |probability - 5^{-d1-d2}|
  bool flagged = false;    // deviation > 5^{-rank/2}
};

struct AtomStatistics {
  int rank = 0;  // factor_rank (n + 1 sentinel when d2 = 0)
  double uniform_probability = 0.0;
  double tolerance = 0.0;  // 5^{-rank/2}
  std::vector<AtomStat> atoms;  // nonempty atoms only, sorted by label
};

/// Exact atom census by enumeration (n <= 4).
AtomStatistics atom_statistics(const QuadraticFactor& factor);

/// Probability over uniform (x, d) that x + i d lands in atoms[i] for
/// i = 0..3. Verifies the progression constraints: exact zero unless the
/// a-labels are in arithmetic progression and b1 - 3 b2 + 3 b3 - b4 = 0;
/// within 5^{-rank/2} of 5^{-2 d1 - 3 d2} when both hold. Violations throw.
double ap4_atom_probability(const QuadraticFactor& factor, const std::array<Atom, 4>& atoms);

/// Normalized measure mu_H = 1_H / E(1_H) on the span of the basis.
/// A dependent basis is reduced automatically (with a warning to stderr).
DenseFunction haar_on_subspace(const std::vector<GroupPoint>& basis, const GroupConfig& cfg);

}  // namespace qf
