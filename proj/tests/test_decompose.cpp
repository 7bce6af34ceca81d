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

#include "qf/decompose.hpp"
#include "qf/gowers.hpp"
#include "qf/progressions.hpp"
#include "qf/rng.hpp"

using namespace qf;

namespace {

double reconstruction_error(const Decomposition& d, const DenseFunction& f) {
  double worst = 0.0;
  for (std::size_t i = 0; i < f.v.size(); ++i) {
    Cplx sum = d.f1.v[i] + d.f2.v[i];
    if (d.f3) sum += d.f3->v[i];
    worst = std::max(worst, std::abs(sum - f.v[i]));
  }
  return worst;
}

}  // namespace

TEST_CASE("linear KvN on structured inputs") {
  GroupConfig g2 = make_group(2);

  // constants project onto the trivial factor
  DenseFunction c = constant_fn(g2, 0.6);
  Decomposition dc = linear_kvn(c, 0.5);
  CHECK(dc.factor.d1() == 0);
  CHECK(norm_linf(dc.f2) < 1e-12);
  CHECK(std::abs(dc.f1.v[0] - Cplx(0.6)) < 1e-12);

  // a pure character is its own projection, complexity 1
  DenseFunction chi = quad_phase_fn(make_phase(Mat5(2), {1, 0}), g2);
  Decomposition dx = linear_kvn(chi, 0.5);
  CHECK(dx.factor.d1() == 1);
  CHECK(norm_linf(dx.f2) < 1e-10);
  CHECK(reconstruction_error(dx, chi) < 1e-10);

  // omega^{x^T x} at n = 2: every coefficient has modulus 1/5 >= eta = 1/8,
  // so the whole dual space enters S and the factor resolves f exactly.
  DenseFunction sq = quad_phase_fn(make_phase(Mat5::identity(2), {0, 0}), g2);
  Decomposition dq = linear_kvn(sq, 0.5);
  CHECK(dq.factor.d1() == 2);
  CHECK(norm_linf(dq.f2) < 1e-10);
  CHECK(dq.f2_norm <= 0.5 + 1e-9);
}

TEST_CASE("linear KvN contract on random inputs") {
  GroupConfig g3 = make_group(3);
  SplitMix64 rng(601);
  for (int t = 0; t < 10; ++t)
    for (double delta : {0.3, 0.5}) {
      DenseFunction f = random_real_bounded(g3, rng);
      Decomposition d = linear_kvn(f, delta);
      CHECK(static_cast<double>(d.factor.d1()) <= 4.0 * std::pow(delta, -4.0));
      CHECK(d.f2_norm <= delta + 1e-9);
      CHECK(reconstruction_error(d, f) < 1e-10);
    }
  CHECK_THROWS_AS(linear_kvn(constant_fn(g3, 1.0), 1.5), std::invalid_argument);
  CHECK_THROWS_AS(linear_kvn(constant_fn(g3, 3.0), 0.5), std::invalid_argument);
}

TEST_CASE("energy increment step") {
  GroupConfig g2 = make_group(2);
  QuadraticFactor trivial = make_factor(g2, {}, {});

  // measurable input: nothing to do
  DenseFunction c = constant_fn(g2, 0.3);
  CHECK(!energy_increment_step(c, trivial, 0.5).has_value());

  // the key example: one step absorbs the phase and the energy hits 1
  DenseFunction sq = quad_phase_fn(make_phase(Mat5::identity(2), {0, 0}), g2);
  auto step = energy_increment_step(sq, trivial, 0.5);
  REQUIRE(step.has_value());
  CHECK(step->first.d2() == 1);
  CHECK(energy(sq, step->first) == doctest::Approx(1.0));
  // the certificate phase is equivalent to x^T x up to scaling
  CHECK(mat_rank(step->second.phase.m) == 2);

  // a pure character yields a certificate with M = 0
  DenseFunction chi = quad_phase_fn(make_phase(Mat5(2), {2, 1}), g2);
  auto lin = energy_increment_step(chi, trivial, 0.5);
  REQUIRE(lin.has_value());
  CHECK(lin->second.phase.m.is_zero());
  CHECK(lin->first.d1() == 1);
}

TEST_CASE("quadratic KvN terminates with a uniform remainder") {
  GroupConfig g2 = make_group(2);
  QuadraticFactor trivial = make_factor(g2, {}, {});

  DenseFunction zero = constant_fn(g2, 0.0);
  Decomposition dz = quadratic_kvn(zero, 0.5, trivial);
  CHECK(dz.iterations == 0);
  CHECK(norm_linf(dz.f1) < 1e-12);
  CHECK(norm_linf(dz.f2) < 1e-12);

  DenseFunction sq = quad_phase_fn(make_phase(Mat5::identity(2), {1, 4}), g2);
  Decomposition dq = quadratic_kvn(sq, 0.5, trivial);
  CHECK(dq.iterations <= 2);
  CHECK(norm_linf(dq.f2) < 1e-9);

  SplitMix64 rng(602);
  for (int t = 0; t < 5; ++t) {
    DenseFunction f = balanced(random_set(g2, 0.5, rng.next()), g2);
    Decomposition d = quadratic_kvn(f, 0.6, trivial);
    CHECK(reconstruction_error(d, f) < 1e-10);
    CHECK(gowers_norm_direct(d.f2, 3).value <= 0.6 + 1e-9);
    for (std::size_t i = 1; i < d.energy_history.size(); ++i)
      CHECK(d.energy_history[i] > d.energy_history[i - 1]);
  }
}

TEST_CASE("regularity produces the three-term split") {
  GroupConfig g2 = make_group(2);
  QuadraticFactor trivial = make_factor(g2, {}, {});
  GrowthFn omega = GrowthFn::polynomial(2.0);

  DenseFunction c = constant_fn(g2, 0.4);
  Decomposition dc = regularity(c, 0.5, omega, trivial);
  CHECK(norm_linf(dc.f2) < 1e-12);
  CHECK(norm_linf(*dc.f3) < 1e-12);

  DenseFunction sq = quad_phase_fn(make_phase(Mat5::identity(2), {0, 0}), g2);
  Decomposition dq = regularity(sq, 0.5, omega, trivial);
  CHECK(gowers_norm_fast(*dq.f3, 3).value < 1e-9);

  SplitMix64 rng(603);
  for (int t = 0; t < 3; ++t) {
    DenseFunction f = balanced(random_set(g2, 0.5, rng.next()), g2);
    Decomposition d = regularity(f, 0.5, omega, trivial);
    CHECK(reconstruction_error(d, f) < 1e-10);
    CHECK(norm_l2(d.f2) <= 0.5 + 1e-9);
    double bound = 1.0 / omega(d.factor.d1() + d.factor.d2());
    CHECK(gowers_norm_direct(*d.f3, 3).value <= bound + 1e-9);
  }
}

TEST_CASE("high-rank regularity certifies the factor rank") {
  GroupConfig g2 = make_group(2);
  QuadraticFactor trivial = make_factor(g2, {}, {});
  GrowthFn omega1 = GrowthFn::constant(2.0);
  GrowthFn omega2 = GrowthFn::polynomial(1.0);

  SplitMix64 rng(604);
  for (int t = 0; t < 3; ++t) {
    DenseFunction f = balanced(random_set(g2, 0.5, rng.next()), g2);
    Decomposition d = regularity_high_rank(f, 0.5, omega1, omega2, trivial);
    CHECK(reconstruction_error(d, f) < 1e-10);
    bool rank_ok = d.factor.d2() == 0 || factor_rank(d.factor) >= 2;
    CHECK(rank_ok);
    CHECK(norm_l2(d.f2) <= 0.5 + 1e-9);
    CHECK(gowers_norm_direct(*d.f3, 3).value <=
          1.0 / omega2(d.factor.d1() + d.factor.d2()) + 1e-9);
    for (std::size_t i = 1; i < d.energy_history.size(); ++i)
      CHECK(d.energy_history[i] >= d.energy_history[i - 1] - 1e-12);
  }

  // a function generated by a rank-deficient pencil exercises the reducer
  Mat5 low(2);
  low.at(0, 0) = 1;
  QuadraticFactor degenerate = make_factor(g2, {}, {low, mat_scale(low, 2)});
  DenseFunction f = conditional_expectation(balanced(random_set(g2, 0.5, 9090), g2), degenerate);
  Decomposition d = regularity_high_rank(f, 0.4, omega1, omega2, trivial);
  bool rank_ok = d.factor.d2() == 0 || factor_rank(d.factor) >= 2;
    CHECK(rank_ok);
  CHECK(reconstruction_error(d, f) < 1e-10);
}

TEST_CASE("configuration-space counting inequality") {
  ConfigSpaceFn ones;
  ones.d1 = 1;
  ones.d2 = 1;
  ones.v.assign(25, 1.0);
  CountIneqReport r1 = configspace_count_inequality(ones);
  CHECK(r1.lhs == doctest::Approx(1.0));
  CHECK(r1.rhs == doctest::Approx(1.0));
  CHECK(r1.lhs_fourier == doctest::Approx(1.0));

  ConfigSpaceFn zero;
  zero.d1 = 1;
  zero.d2 = 1;
  zero.v.assign(25, 0.0);
  CountIneqReport r0 = configspace_count_inequality(zero);
  CHECK(r0.lhs == doctest::Approx(0.0));
  CHECK(r0.rhs == doctest::Approx(0.0));

  SplitMix64 rng(605);
  for (int t = 0; t < 50; ++t) {
    ConfigSpaceFn f;
    f.d1 = 1;
    f.d2 = 1;
    f.v.resize(25);
    for (double& x : f.v) x = rng.next_double();
    CountIneqReport rep = configspace_count_inequality(f);
    CHECK(rep.lhs >= rep.rhs - 1e-10);
    CHECK(std::abs(rep.lhs - rep.lhs_fourier) < 1e-9);
  }

  ConfigSpaceFn negative = ones;
  negative.v[3] = -0.5;
  CHECK_THROWS_AS(configspace_count_inequality(negative), std::invalid_argument);
}

TEST_CASE("4-AP experiment on the full group and random sets") {
  GroupConfig g2 = make_group(2);

  std::vector<std::size_t> all(g2.order);
  for (std::size_t i = 0; i < g2.order; ++i) all[i] = i;
  BhkReport full = bhk_experiment(all, g2, 0.1);
  CHECK(full.alpha == doctest::Approx(1.0));
  CHECK(full.witness_ok);
  CHECK(full.witness_d != 0);
  CHECK(full.witness_count == g2.order);
  CHECK(full.term_sum_error < 1e-8);

  SplitMix64 rng(606);
  for (int t = 0; t < 2; ++t) {
    auto set = random_set(g2, 0.5, rng.next());
    BhkReport rep = bhk_experiment(set, g2, 0.2);
    CHECK(rep.witness_ok);
    CHECK(rep.witness_d != 0);
    CHECK(rep.term_sum_error < 1e-8);
    // witness recount
    std::vector<char> in(g2.order, 0);
    for (std::size_t m : set) in[m] = 1;
    std::uint64_t count = 0;
    for (std::size_t x = 0; x < g2.order; ++x) {
      std::size_t x1 = add_index(x, rep.witness_d, g2);
      std::size_t x2 = add_index(x1, rep.witness_d, g2);
      std::size_t x3 = add_index(x2, rep.witness_d, g2);
      if (in[x] && in[x1] && in[x2] && in[x3]) ++count;
    }
    CHECK(count == rep.witness_count);
  }
}

TEST_CASE("4-AP experiment on a quadric level set at n = 3") {
  GroupConfig g3 = make_group(3);
  std::vector<std::size_t> level_set;
  for (std::size_t x = 0; x < g3.order; ++x)
    if (quad_eval(Mat5::identity(3), index_to_point(x, g3)) == 0) level_set.push_back(x);

  BhkReport rep = bhk_experiment(level_set, g3, 0.05);
  CHECK(rep.witness_d != 0);
  CHECK(rep.witness_ok);
  CHECK(rep.term_sum_error < 1e-8);
  std::vector<char> in(g3.order, 0);
  for (std::size_t m : level_set) in[m] = 1;
  std::uint64_t recount = 0;
  for (std::size_t x = 0; x < g3.order; ++x) {
    std::size_t x1 = add_index(x, rep.witness_d, g3);
    std::size_t x2 = add_index(x1, rep.witness_d, g3);
    std::size_t x3 = add_index(x2, rep.witness_d, g3);
    if (in[x] && in[x1] && in[x2] && in[x3]) ++recount;
  }
  CHECK(recount == rep.witness_count);
}

TEST_CASE("increment floor echoes the oracle floor") {
  CHECK(energy_increment_floor(0.5) ==
        doctest::Approx(oracle_accept_floor(0.5) * oracle_accept_floor(0.5) / 4.0));
}
