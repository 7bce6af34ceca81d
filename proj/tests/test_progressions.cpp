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

#include <doctest.h>

#include <cmath>

#include "qf/factors.hpp"
#include "qf/progressions.hpp"
#include "qf/quadratic.hpp"
#include "qf/rng.hpp"

using namespace qf;

namespace {

std::vector<std::size_t> whole_group(const GroupConfig& cfg) {
  std::vector<std::size_t> all(cfg.order);
  for (std::size_t i = 0; i < cfg.order; ++i) all[i] = i;
  return all;
}

// Integer 4-AP count by brute force, the oracle for lambda4 on indicators.
std::uint64_t count_4aps(const std::vector<char>& in, const GroupConfig& cfg) {
  std::uint64_t count = 0;
  for (std::size_t d = 0; d < cfg.order; ++d)
    for (std::size_t x = 0; x < cfg.order; ++x) {
      std::size_t x1 = add_index(x, d, cfg);
      std::size_t x2 = add_index(x1, d, cfg);
      std::size_t x3 = add_index(x2, d, cfg);
      if (in[x] && in[x1] && in[x2] && in[x3]) ++count;
    }
  return count;
}

}  // namespace

TEST_CASE("lambda3 on constants and indicators") {
  GroupConfig cfg = make_group(2);
  DenseFunction ones = constant_fn(cfg, 1.0);
  CHECK(std::abs(lambda3(ones, ones, ones) - Cplx(1.0)) < 1e-12);

  DenseFunction full = indicator(whole_group(cfg), cfg);
  CHECK(std::abs(lambda3(full, full, full) - Cplx(1.0)) < 1e-12);

  DenseFunction empty = indicator({}, cfg);
  CHECK(std::abs(lambda3(empty, empty, empty)) < 1e-12);
}

TEST_CASE("spectral lambda3 equals the direct double loop") {
  SplitMix64 rng(301);
  for (int n = 1; n <= 3; ++n) {
    GroupConfig cfg = make_group(n);
    for (int t = 0; t < 34; ++t) {
      DenseFunction f1 = random_real_bounded(cfg, rng);
      DenseFunction f2 = random_real_bounded(cfg, rng);
      DenseFunction f3 = random_real_bounded(cfg, rng);
      CHECK(std::abs(lambda3(f1, f2, f3) - lambda3_spectral(f1, f2, f3)) < 1e-10);
    }
  }

  // f1 = f3 = omega^{x^2}, f2 = 1 at n = 1
  GroupConfig g1 = make_group(1);
  DenseFunction sq = quad_phase_fn(make_phase(Mat5::identity(1), {0}), g1);
  DenseFunction mid = constant_fn(g1, 1.0);
  CHECK(std::abs(lambda3(sq, mid, sq) - lambda3_spectral(sq, mid, sq)) < 1e-10);

  // balanced function triples
  GroupConfig g2 = make_group(2);
  for (int t = 0; t < 10; ++t) {
    DenseFunction b = balanced(random_set(g2, 0.4, 900 + static_cast<std::uint64_t>(t)), g2);
    CHECK(std::abs(lambda3(b, b, b) - lambda3_spectral(b, b, b)) < 1e-10);
  }
}

TEST_CASE("lambda4 against exhaustive enumeration") {
  GroupConfig g1 = make_group(1);
  DenseFunction ones = constant_fn(g1, 1.0);
  CHECK(std::abs(lambda4(ones, ones, ones, ones) - Cplx(1.0)) < 1e-12);

  // G minus one point at n = 1
  std::vector<std::size_t> minus{1, 2, 3, 4};
  DenseFunction ind = indicator(minus, g1);
  std::vector<char> in(g1.order, 0);
  for (std::size_t m : minus) in[m] = 1;
  double expected = static_cast<double>(count_4aps(in, g1)) / 25.0;
  CHECK(std::abs(lambda4(ind, ind, ind, ind) - Cplx(expected)) < 1e-12);

  // quadratic phases are 1-bounded, so the count is too
  DenseFunction sq = quad_phase_fn(make_phase(Mat5::identity(1), {0}), g1);
  CHECK(std::abs(lambda4(sq, sq, sq, sq)) <= 1.0 + 1e-9);
}

TEST_CASE("weighted lambda4 with uniform, point, and subspace weights") {
  GroupConfig cfg = make_group(2);
  SplitMix64 rng(303);
  DenseFunction f1 = random_real_bounded(cfg, rng);
  DenseFunction f2 = random_real_bounded(cfg, rng);
  DenseFunction f3 = random_real_bounded(cfg, rng);
  DenseFunction f4 = random_real_bounded(cfg, rng);

  DenseFunction uniform = constant_fn(cfg, 1.0);
  CHECK(std::abs(lambda4_weighted(f1, f2, f3, f4, uniform) - lambda4(f1, f2, f3, f4)) < 1e-12);

  DenseFunction point = constant_fn(cfg, 0.0);
  point.v[0] = static_cast<double>(cfg.order);
  Cplx only_d0 = 0.0;
  for (std::size_t x = 0; x < cfg.order; ++x) only_d0 += f1.v[x] * f2.v[x] * f3.v[x] * f4.v[x];
  only_d0 /= static_cast<double>(cfg.order);
  CHECK(std::abs(lambda4_weighted(f1, f2, f3, f4, point) - only_d0) < 1e-12);

  // mu_H against explicit enumeration over d in H, n = 3
  GroupConfig g3 = make_group(3);
  auto set = random_set(g3, 0.5, 71);
  DenseFunction ind = indicator(set, g3);
  std::vector<GroupPoint> basis{index_to_point(1, g3), index_to_point(5, g3)};
  DenseFunction mu = haar_on_subspace(basis, g3);
  std::vector<char> in(g3.order, 0);
  for (std::size_t m : set) in[m] = 1;
  std::uint64_t hits = 0;
  std::vector<std::size_t> h_points = span_points(basis, g3);
  for (std::size_t d : h_points)
    for (std::size_t x = 0; x < g3.order; ++x) {
      std::size_t x1 = add_index(x, d, g3);
      std::size_t x2 = add_index(x1, d, g3);
      std::size_t x3 = add_index(x2, d, g3);
      if (in[x] && in[x1] && in[x2] && in[x3]) ++hits;
    }
  double expected = static_cast<double>(hits) / static_cast<double>(h_points.size()) /
                    static_cast<double>(g3.order);
  CHECK(std::abs(lambda4_weighted(ind, ind, ind, ind, mu) - Cplx(expected)) < 1e-10);
}

TEST_CASE("balanced functions have mean zero and the right values") {
  GroupConfig g1 = make_group(1);
  CHECK(norm_linf(balanced(whole_group(g1), g1)) < 1e-12);
  CHECK(norm_linf(balanced({}, g1)) < 1e-12);

  DenseFunction f = balanced({0}, g1);
  CHECK(f.v[0].real() == doctest::Approx(0.8));
  for (std::size_t x = 1; x < 5; ++x) CHECK(f.v[x].real() == doctest::Approx(-0.2));
  CHECK(std::abs(mean(f)) < 1e-12);
}

TEST_CASE("balanced expansion reconciles with the direct count") {
  GroupConfig cfg = make_group(2);

  std::vector<std::vector<std::size_t>> all_full(4, whole_group(cfg));
  ExpansionReport full = balanced_expansion_check(all_full, cfg);
  CHECK(std::abs(full.terms[0].value - Cplx(1.0)) < 1e-12);  // densities-only term
  for (std::size_t i = 1; i < full.terms.size(); ++i) CHECK(std::abs(full.terms[i].value) < 1e-12);

  std::vector<std::vector<std::size_t>> all_empty(4);
  ExpansionReport empty = balanced_expansion_check(all_empty, cfg);
  for (const auto& term : empty.terms) CHECK(std::abs(term.value) < 1e-12);

  SplitMix64 rng(305);
  for (int t = 0; t < 10; ++t) {
    std::vector<std::vector<std::size_t>> sets;
    for (int i = 0; i < 4; ++i) sets.push_back(random_set(cfg, 0.5, rng.next()));
    ExpansionReport rep = balanced_expansion_check(sets, cfg);
    CHECK(rep.terms.size() == 16);
    CHECK(rep.error < 1e-9);
    sets.resize(3);
    ExpansionReport rep3 = balanced_expansion_check(sets, cfg);
    CHECK(rep3.terms.size() == 8);
    CHECK(rep3.error < 1e-9);
  }
}

TEST_CASE("generalized von Neumann check") {
  GroupConfig cfg = make_group(2);
  DenseFunction ones = constant_fn(cfg, 1.0);
  GvnReport tight = gvn_check(ones, ones, ones, ones);
  CHECK(tight.lambda4_abs == doctest::Approx(1.0));
  CHECK(tight.min_u3 == doctest::Approx(1.0));

  SplitMix64 rng(306);
  DenseFunction bal = balanced(random_set(cfg, 0.5, rng.next()), cfg);
  GvnReport rep = gvn_check(bal, ones, ones, ones);
  CHECK(rep.slack4 >= -1e-9);
  CHECK(rep.slack3 >= -1e-9);

  for (int t = 0; t < 100; ++t) {
    DenseFunction f1 = random_pm1(cfg, rng), f2 = random_pm1(cfg, rng);
    DenseFunction f3 = random_pm1(cfg, rng), f4 = random_pm1(cfg, rng);
    CHECK_NOTHROW(gvn_check(f1, f2, f3, f4));
  }

  DenseFunction big = constant_fn(cfg, 2.0);
  CHECK_THROWS_AS(gvn_check(big, ones, ones, ones), std::invalid_argument);
}

TEST_CASE("ap_census counts progressions exactly") {
  GroupConfig g1 = make_group(1);
  CHECK(ap_census(whole_group(g1), g1, 4).total == 25);  // N^2
  CHECK(ap_census({0}, g1, 3).total == 1);               // only d = 0
  CHECK(ap_census({0}, g1, 3).nontrivial == 0);

  GroupConfig g2 = make_group(2);
  SplitMix64 rng(307);
  for (int t = 0; t < 10; ++t) {
    auto set = random_set(g2, 0.6, rng.next());
    DenseFunction ind = indicator(set, g2);
    ApCensus census = ap_census(set, g2, 4);
    double scaled = lambda4(ind, ind, ind, ind).real() * 625.0;
    CHECK(std::abs(scaled - static_cast<double>(census.total)) < 1e-6);
  }
}
