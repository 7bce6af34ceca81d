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

#include "qf/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qf {

std::vector<std::size_t> random_set(const GroupConfig& cfg, double alpha, std::uint64_t seed) {
  if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("random_set: alpha in [0,1]");
  SplitMix64 rng(seed);
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < cfg.order; ++i)
    if (rng.next_double() < alpha) members.push_back(i);
  return members;
}

DenseFunction random_pm1(const GroupConfig& cfg, SplitMix64& rng) {
  DenseFunction f{cfg, std::vector<Cplx>(cfg.order)};
  for (Cplx& z : f.v) z = rng.next_double() < 0.5 ? -1.0 : 1.0;
  return f;
}

DenseFunction random_real_bounded(const GroupConfig& cfg, SplitMix64& rng) {
  DenseFunction f{cfg, std::vector<Cplx>(cfg.order)};
  for (Cplx& z : f.v) z = rng.next_signed();
  return f;
}

DenseFunction random_complex_bounded(const GroupConfig& cfg, SplitMix64& rng) {
  DenseFunction f{cfg, std::vector<Cplx>(cfg.order)};
  for (Cplx& z : f.v) {
    double radius = std::sqrt(rng.next_double());
    double angle = 2.0 * std::numbers::pi * rng.next_double();
    z = Cplx(radius * std::cos(angle), radius * std::sin(angle));
  }
  return f;
}

LinearForm random_form(int n, SplitMix64& rng) {
  LinearForm r(static_cast<std::size_t>(n));
  for (Residue& d : r) d = static_cast<Residue>(rng.next() % kP);
  return r;
}

Mat5 random_mat(int n, SplitMix64& rng) {
  Mat5 m(n);
  for (Residue& d : m.a) d = static_cast<Residue>(rng.next() % kP);
  return m;
}

Mat5 random_sym(int n, SplitMix64& rng) {
  Mat5 m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Residue d = static_cast<Residue>(rng.next() % kP);
      m.at(i, j) = d;
      m.at(j, i) = d;
    }
  return m;
}

}  // namespace qf
