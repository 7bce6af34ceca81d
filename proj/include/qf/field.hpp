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

#include <cstddef>
#include <cstdint>
#include <vector>

namespace qf {

// Exact arithmetic over F_5 and the ambient group G = F_5^n, |G| = 5^n.
// Group elements are held either as digit vectors (GroupPoint) or as flat
// indices in little-endian base 5: coordinate 0 is the least significant
// digit. No floating point anywhere in this module.

inline constexpr int kP = 5;

using Residue = std::uint8_t;  // element of F_5, always in {0,...,4}
using F5Vec = std::vector<Residue>;
using GroupPoint = F5Vec;  // x, h, d : elements of G
using LinearForm = F5Vec;  // r : elements of the dual group

inline Residue add5(Residue a, Residue b) { return static_cast<Residue>((a + b) % kP); }
inline Residue sub5(Residue a, Residue b) { return static_cast<Residue>((a + kP - b) % kP); }
inline Residue mul5(Residue a, Residue b) { return static_cast<Residue>((a * b) % kP); }
inline Residue neg5(Residue a) { return static_cast<Residue>((kP - a) % kP); }

/// Multiplicative inverse in F_5; a must be nonzero.
Residue inv5(Residue a);

/// Reduces an arbitrary integer into {0,...,4}.
inline Residue mod5(long long v) {
  long long m = v % kP;
  return static_cast<Residue>(m < 0 ? m + kP : m);
}

struct GroupConfig {
  int n = 0;
  std::size_t order = 1;  // 5^n

  friend bool operator==(const GroupConfig&, const GroupConfig&) = default;
};

/// Config for G = F_5^n. Throws std::invalid_argument unless 0 <= n <= 12.
GroupConfig make_group(int n);

GroupPoint index_to_point(std::size_t i, const GroupConfig& cfg);
std::size_t point_to_index(const GroupPoint& x, const GroupConfig& cfg);

// Group operations directly on flat indices (digitwise mod 5).
std::size_t add_index(std::size_t i, std::size_t j, const GroupConfig& cfg);
std::size_t sub_index(std::size_t i, std::size_t j, const GroupConfig& cfg);
std::size_t neg_index(std::size_t i, const GroupConfig& cfg);
std::size_t scale_index(std::size_t i, int c, const GroupConfig& cfg);

/// r^T x mod 5.
Residue dot5(const F5Vec& a, const F5Vec& b);

/// Dense square matrix over F_5, row-major. Symmetry, where required, is an
/// enforced invariant rather than a packed format.
struct Mat5 {
  int n = 0;
  std::vector<Residue> a;

  Mat5() = default;
  explicit Mat5(int dim) : n(dim), a(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), 0) {}

  Residue& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  Residue at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

  static Mat5 identity(int dim);
  bool is_zero() const;
  bool is_symmetric() const;

  friend bool operator==(const Mat5&, const Mat5&) = default;
};

Mat5 transpose(const Mat5& m);
Mat5 mat_add(const Mat5& x, const Mat5& y);
Mat5 mat_scale(const Mat5& m, Residue c);

/// Rank over F_5 by exact Gaussian elimination.
int mat_rank(const Mat5& m);

/// 3*(M + M^T) mod 5 (3 = 2^{-1} in F_5). Output symmetric; fixes symmetric inputs.
Mat5 symmetrize(const Mat5& m);

/// x^T M x mod 5.
Residue quad_eval(const Mat5& m, const GroupPoint& x);

/// Basis of {x : r^T x = 0 for all r in forms}; dimension n - rank(forms).
/// An empty form list annihilates nothing, so the basis spans all of G.
std::vector<GroupPoint> null_space(const std::vector<LinearForm>& forms, const GroupConfig& cfg);

/// Basis (RREF rows) of the span of the given vectors, each of length n.
std::vector<F5Vec> span_basis(const std::vector<F5Vec>& vectors, int n);

int rank_of(const std::vector<F5Vec>& vectors, int n);

/// True if v lies in the F_5-span of the given vectors.
bool in_span(const F5Vec& v, const std::vector<F5Vec>& vectors, int n);

/// Basis of the row space of m. For symmetric m this is ker(m)^perp.
std::vector<LinearForm> row_space_basis(const Mat5& m);

/// All 5^k points of the subspace spanned by the basis, as sorted flat indices.
/// The basis is reduced first, so dependent inputs are tolerated.
std::vector<std::size_t> span_points(const std::vector<GroupPoint>& basis, const GroupConfig& cfg);

}  // namespace qf
