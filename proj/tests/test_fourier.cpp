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

#include "qf/fourier.hpp"
#include "qf/quadratic.hpp"
#include "qf/rng.hpp"

using namespace qf;

namespace {

// O(N^2) oracle for the per-axis transform.
Spectrum dft_direct(const DenseFunction& f) {
  const auto& w = omega_table();
  Spectrum s{f.cfg, std::vector<Cplx>(f.cfg.order, 0.0)};
  for (std::size_t r = 0; r < f.cfg.order; ++r) {
    GroupPoint rp = index_to_point(r, f.cfg);
    Cplx acc = 0.0;
    for (std::size_t x = 0; x < f.cfg.order; ++x)
      acc += f.v[x] * w[dot5(rp, index_to_point(x, f.cfg))];
    s.v[r] = acc / static_cast<double>(f.cfg.order);
  }
  return s;
}

double max_diff(const std::vector<Cplx>& a, const std::vector<Cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("transform of the constant function is a point mass at zero") {
  GroupConfig cfg = make_group(2);
  Spectrum s = dft(constant_fn(cfg, 1.0));
  CHECK(std::abs(s.v[0] - 1.0) < 1e-12);
  for (std::size_t r = 1; r < cfg.order; ++r) CHECK(std::abs(s.v[r]) < 1e-12);
}

TEST_CASE("transform of the scaled point mass is flat") {
  GroupConfig cfg = make_group(2);
  DenseFunction f = constant_fn(cfg, 0.0);
  f.v[0] = static_cast<double>(cfg.order);
  Spectrum s = dft(f);
  for (std::size_t r = 0; r < cfg.order; ++r) CHECK(std::abs(s.v[r] - 1.0) < 1e-12);
}

TEST_CASE("per-axis transform equals the direct double sum") {
  SplitMix64 rng(41);
  for (int n = 1; n <= 3; ++n) {
    GroupConfig cfg = make_group(n);
    for (int t = 0; t < 20; ++t) {
      DenseFunction f = random_complex_bounded(cfg, rng);
      CHECK(max_diff(dft(f).v, dft_direct(f).v) < 1e-12);
    }
  }
}

TEST_CASE("inversion undoes the transform") {
  GroupConfig cfg = make_group(3);
  SplitMix64 rng(5);

  DenseFunction ones = constant_fn(cfg, 1.0);
  CHECK(max_diff(idft(dft(ones)).v, ones.v) < 1e-12);

  Spectrum delta{cfg, std::vector<Cplx>(cfg.order, 0.0)};
  delta.v[0] = 1.0;
  CHECK(max_diff(idft(delta).v, ones.v) < 1e-12);

  for (int t = 0; t < 20; ++t) {
    DenseFunction f = random_complex_bounded(cfg, rng);
    CHECK(max_diff(idft(dft(f)).v, f.v) < 1e-10);
  }
}

TEST_CASE("convolution carries the transform identity") {
  GroupConfig cfg = make_group(2);
  SplitMix64 rng(17);

  DenseFunction unit = constant_fn(cfg, 0.0);
  unit.v[0] = static_cast<double>(cfg.order);  // N delta_0, the convolution identity
  DenseFunction f = random_complex_bounded(cfg, rng);
  CHECK(max_diff(convolve(f, unit).v, f.v) < 1e-10);

  DenseFunction ones = constant_fn(cfg, 1.0);
  CHECK(max_diff(convolve(ones, ones).v, ones.v) < 1e-10);

  for (int t = 0; t < 20; ++t) {
    DenseFunction a = random_complex_bounded(cfg, rng);
    DenseFunction b = random_complex_bounded(cfg, rng);
    Spectrum lhs = dft(convolve(a, b));
    Spectrum sa = dft(a), sb = dft(b);
    double worst = 0.0;
    for (std::size_t r = 0; r < cfg.order; ++r)
      worst = std::max(worst, std::abs(lhs.v[r] - sa.v[r] * sb.v[r]));
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("convolution requires matching groups") {
  DenseFunction a = constant_fn(make_group(1), 1.0);
  DenseFunction b = constant_fn(make_group(2), 1.0);
  CHECK_THROWS_AS(convolve(a, b), std::invalid_argument);
}

TEST_CASE("large_spectrum picks exactly the big coefficients") {
  GroupConfig g1 = make_group(1);

  auto spec = large_spectrum(constant_fn(g1, 1.0), 0.5);
  REQUIRE(spec.size() == 1);
  CHECK(spec[0] == LinearForm{0});

  // x -> omega^{x^2}: all coefficients have modulus 5^{-1/2} ~ 0.447 < 0.5
  DenseFunction squares = quad_phase_fn(make_phase(Mat5::identity(1), {0}), g1);
  CHECK(large_spectrum(squares, 0.5).empty());
  CHECK(large_spectrum(squares, 0.4).size() == 5);

  CHECK_THROWS_AS(large_spectrum(squares, 0.0), std::invalid_argument);
}

TEST_CASE("large spectrum of a balanced indicator obeys the Parseval count") {
  GroupConfig cfg = make_group(3);
  SplitMix64 rng(23);
  for (int t = 0; t < 10; ++t) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < cfg.order; ++i)
      if (rng.next_double() < 0.5) members.push_back(i);
    DenseFunction f = indicator(members, cfg);
    double alpha = static_cast<double>(members.size()) / static_cast<double>(cfg.order);
    for (Cplx& z : f.v) z -= alpha;
    CHECK(large_spectrum(f, 0.1).size() <= 100);  // eta^{-2}
  }
}

TEST_CASE("Parseval identity and norm equalities") {
  SplitMix64 rng(3);
  for (int n = 1; n <= 4; ++n) {
    GroupConfig cfg = make_group(n);
    DenseFunction f = random_complex_bounded(cfg, rng);
    DenseFunction g = random_complex_bounded(cfg, rng);
    Spectrum fs = dft(f), gs = dft(g);

    Cplx lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i < cfg.order; ++i) lhs += f.v[i] * std::conj(g.v[i]);
    lhs /= static_cast<double>(cfg.order);
    for (std::size_t i = 0; i < cfg.order; ++i) rhs += fs.v[i] * std::conj(gs.v[i]);
    CHECK(std::abs(lhs - rhs) < 1e-10);

    CHECK(std::abs(norm_l2(f) - spec_norm_l2(fs)) < 1e-10);
    CHECK(spec_norm_linf(fs) <= norm_l1(f) + 1e-12);
  }
}
