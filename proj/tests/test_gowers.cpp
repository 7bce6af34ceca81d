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

#include "qf/gowers.hpp"
#include "qf/quadratic.hpp"
#include "qf/rng.hpp"

using namespace qf;

namespace {

DenseFunction key_example(int n) {
  return quad_phase_fn(make_phase(Mat5::identity(n), LinearForm(static_cast<std::size_t>(n), 0)),
                       make_group(n));
}

// Sixteen-fold configuration sum: the common value of both identity sides,
//   N^{-8} sum over {c_i, c_i + t : sum of first four c's = sum of last four}
// of the product of f at all sixteen points. Real f, n = 1 scale.
double sixteenfold_config_sum(const DenseFunction& f) {
  const GroupConfig& cfg = f.cfg;
  const std::size_t n = cfg.order;
  double total = 0.0;
  std::size_t c[8];
  for (c[0] = 0; c[0] < n; ++c[0])
    for (c[1] = 0; c[1] < n; ++c[1])
      for (c[2] = 0; c[2] < n; ++c[2])
        for (c[4] = 0; c[4] < n; ++c[4])
          for (c[5] = 0; c[5] < n; ++c[5])
            for (c[6] = 0; c[6] < n; ++c[6])
              for (c[7] = 0; c[7] < n; ++c[7]) {
                std::size_t rhs = add_index(add_index(c[4], c[5], cfg), add_index(c[6], c[7], cfg), cfg);
                std::size_t lhs_part = add_index(add_index(c[0], c[1], cfg), c[2], cfg);
                c[3] = sub_index(rhs, lhs_part, cfg);
                for (std::size_t t = 0; t < n; ++t) {
                  double prod = 1.0;
                  for (int i = 0; i < 8; ++i)
                    prod *= f.v[c[i]].real() * f.v[add_index(c[i], t, cfg)].real();
                  total += prod;
                }
              }
  double scale = 1.0;
  for (int i = 0; i < 8; ++i) scale *= static_cast<double>(n);
  return total / scale;
}

}  // namespace

TEST_CASE("multiplicative derivative") {
  GroupConfig g1 = make_group(1);
  SplitMix64 rng(12);

  DenseFunction f = random_complex_bounded(g1, rng);
  DenseFunction d0 = derivative(f, static_cast<std::size_t>(0));
  for (std::size_t x = 0; x < g1.order; ++x)
    CHECK(std::abs(d0.v[x] - Cplx(std::norm(f.v[x]), 0.0)) < 1e-12);

  DenseFunction ones = constant_fn(g1, 1.0);
  for (std::size_t h = 0; h < 5; ++h)
    for (const Cplx& z : derivative(ones, h).v) CHECK(std::abs(z - 1.0) < 1e-12);

  // f = omega^{x^2}, h = 1: the derivative is the linear phase omega^{2x-1}
  DenseFunction sq = key_example(1);
  DenseFunction d1 = derivative(sq, static_cast<std::size_t>(1));
  const auto& w = omega_table();
  for (std::size_t x = 0; x < 5; ++x)
    CHECK(std::abs(d1.v[x] - w[mod5(2 * static_cast<long long>(x) - 1)]) < 1e-12);
}

TEST_CASE("direct norm on trivial and key inputs") {
  CHECK(gowers_norm_direct(constant_fn(make_group(1), 1.0), 2).value == doctest::Approx(1.0));
  CHECK(gowers_norm_direct(key_example(1), 3).value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("U^2 equals the spectral 4-norm") {
  SplitMix64 rng(31);
  GroupConfig g1 = make_group(1);
  for (int t = 0; t < 20; ++t) {
    DenseFunction f = random_pm1(g1, rng);
    double direct = gowers_norm_direct(f, 2).value;
    CHECK(std::abs(direct - spec_norm_l4(dft(f))) < 1e-10);
  }
}

TEST_CASE("budget refusal carries the cost estimate") {
  DenseFunction f = constant_fn(make_group(2), 1.0);
  CHECK_THROWS_WITH_AS(gowers_norm_direct(f, 3, 1000), doctest::Contains("exceeds budget"),
                       std::invalid_argument);
}

TEST_CASE("fast norm values for the key example") {
  for (int n = 1; n <= 2; ++n) {
    DenseFunction f = key_example(n);
    CHECK(gowers_norm_fast(f, 3).value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(gowers_norm_fast(f, 2).value ==
          doctest::Approx(std::pow(5.0, -0.25 * n)).epsilon(1e-9));
  }
}

TEST_CASE("fast equals direct for k = 2, 3 on random functions") {
  SplitMix64 rng(77);
  for (int t = 0; t < 100; ++t)
    for (int n = 1; n <= 2; ++n)
      for (int k = 2; k <= 3; ++k) {
        DenseFunction f = random_complex_bounded(make_group(n), rng);
        CHECK(std::abs(gowers_norm_fast(f, k).value - gowers_norm_direct(f, k).value) < 1e-9);
      }
}

TEST_CASE("fast equals direct for k = 4 at n = 1") {
  SplitMix64 rng(78);
  for (int t = 0; t < 10; ++t) {
    DenseFunction f = random_complex_bounded(make_group(1), rng);
    CHECK(std::abs(gowers_norm_fast(f, 4).value - gowers_norm_direct(f, 4).value) < 1e-9);
  }
}

TEST_CASE("norms are nested and the key example separates them") {
  SplitMix64 rng(55);
  GroupConfig g2 = make_group(2);
  for (int t = 0; t < 50; ++t) {
    DenseFunction f = random_complex_bounded(g2, rng);
    CHECK(gowers_norm_fast(f, 2).value <= gowers_norm_fast(f, 3).value + 1e-9);
    CHECK(gowers_norm_fast(f, 3).value <= gowers_norm_fast(f, 4).value + 1e-9);
  }
  DenseFunction f = key_example(2);
  CHECK(gowers_norm_fast(f, 3).value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(gowers_norm_fast(f, 2).value < 0.72);  // 5^{-1/2}, far from 1
}

TEST_CASE("inner product generalizes the norm") {
  GroupConfig g1 = make_group(1);
  SplitMix64 rng(91);

  std::vector<DenseFunction> ones(4, constant_fn(g1, 1.0));
  CHECK(std::abs(gowers_inner_product(ones, 2) - Cplx(1.0)) < 1e-12);

  DenseFunction f = random_complex_bounded(g1, rng);
  std::vector<DenseFunction> same(8, f);
  double u3 = gowers_norm_direct(f, 3).value;
  CHECK(std::abs(gowers_inner_product(same, 3) - Cplx(std::pow(u3, 8.0))) < 1e-9);
}

TEST_CASE("Gowers-Cauchy-Schwarz on random tuples") {
  SplitMix64 rng(13);
  for (int n = 1; n <= 2; ++n)
    for (int k = 2; k <= 3; ++k)
      for (int t = 0; t < 10; ++t) {
        GroupConfig cfg = make_group(n);
        std::vector<DenseFunction> fs;
        double prod = 1.0;
        for (int m = 0; m < (1 << k); ++m) {
          fs.push_back(random_complex_bounded(cfg, rng));
          prod *= gowers_norm_fast(fs.back(), k).value;
        }
        CHECK(std::abs(gowers_inner_product(fs, k)) <= prod + 1e-9);
      }
}

TEST_CASE("box evaluation agrees with the direct inner product") {
  SplitMix64 rng(14);
  GroupConfig g1 = make_group(1);
  for (int k = 2; k <= 3; ++k)
    for (int t = 0; t < 10; ++t) {
      std::vector<DenseFunction> fs;
      for (int m = 0; m < (1 << k); ++m) fs.push_back(random_complex_bounded(g1, rng));
      Cplx direct_ip = gowers_inner_product(fs, k);
      Cplx box = gowers_inner_product(fs, k, 1);  // budget 1 forces the box path
      CHECK(std::abs(direct_ip - box) < 1e-9);
    }
}

TEST_CASE("derivative-spectrum identity sides agree") {
  GroupConfig g1 = make_group(1);

  SamorodnitskySides ones = samorodnitsky_sides(constant_fn(g1, 1.0));
  CHECK(ones.lhs == doctest::Approx(1.0));
  CHECK(ones.rhs == doctest::Approx(1.0));

  SamorodnitskySides zero = samorodnitsky_sides(constant_fn(g1, 0.0));
  CHECK(zero.lhs == doctest::Approx(0.0));
  CHECK(zero.rhs == doctest::Approx(0.0));

  SplitMix64 rng(101);
  for (int t = 0; t < 10; ++t) {
    DenseFunction f = random_pm1(g1, rng);
    SamorodnitskySides sides = samorodnitsky_sides(f);
    CHECK(std::abs(sides.lhs - sides.rhs) < 1e-9);
    double config = sixteenfold_config_sum(f);
    CHECK(std::abs(sides.lhs - config) < 1e-9);
    CHECK(std::abs(sides.rhs - config) < 1e-9);
  }

  CHECK_THROWS_AS(samorodnitsky_sides(constant_fn(make_group(3), 1.0)), std::invalid_argument);
}
