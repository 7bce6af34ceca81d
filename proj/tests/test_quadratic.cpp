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
#include "qf/progressions.hpp"
#include "qf/quadratic.hpp"
#include "qf/rng.hpp"

using namespace qf;

TEST_CASE("quadratic phase values") {
  GroupConfig g1 = make_group(1);
  const auto& w = omega_table();

  DenseFunction trivial = quad_phase_fn(make_phase(Mat5(1), {0}), g1);
  for (const Cplx& z : trivial.v) CHECK(std::abs(z - 1.0) < 1e-12);

  DenseFunction character = quad_phase_fn(make_phase(Mat5(1), {1}), g1);
  for (std::size_t x = 0; x < 5; ++x) CHECK(std::abs(character.v[x] - w[x % 5]) < 1e-12);

  DenseFunction squares = quad_phase_fn(make_phase(Mat5::identity(1), {0}), g1);
  for (std::size_t x = 0; x < 5; ++x) CHECK(std::abs(squares.v[x] - w[(x * x) % 5]) < 1e-12);
  for (const Cplx& z : squares.v) CHECK(std::abs(z) == doctest::Approx(1.0));
}

TEST_CASE("Gauss sums meet 5^{-rank/2} with equality at r = 0") {
  GroupConfig g1 = make_group(1);
  CHECK(std::abs(gauss_sum(make_phase(Mat5(1), {0}), g1) - Cplx(1.0)) < 1e-12);
  CHECK(std::abs(gauss_sum(make_phase(Mat5::identity(1), {0}), g1)) ==
        doctest::Approx(std::pow(5.0, -0.5)));

  // M = diag(1,0), r = (0,1): the character on ker M kills the sum
  GroupConfig g2 = make_group(2);
  Mat5 m(2);
  m.at(0, 0) = 1;
  Cplx killed = gauss_sum(make_phase(m, {0, 1}), g2);
  CHECK(std::abs(killed) < 1e-12);

  // direct 25-term check of the same value
  const auto& w = omega_table();
  Cplx direct = 0.0;
  for (std::size_t x = 0; x < 25; ++x) {
    GroupPoint p = index_to_point(x, g2);
    direct += w[(p[0] * p[0] + p[1]) % 5];
  }
  direct /= 25.0;
  CHECK(std::abs(killed - direct) < 1e-12);

  SplitMix64 rng(401);
  for (int t = 0; t < 200; ++t) {
    int n = 1 + static_cast<int>(rng.next() % 3);
    GroupConfig cfg = make_group(n);
    QuadraticPhase q = make_phase(random_sym(n, rng), random_form(n, rng));
    Cplx value = gauss_sum(q, cfg);  // internal bound checks
    CHECK(std::abs(value) <= std::pow(5.0, -0.5 * mat_rank(q.m)) + 1e-9);
  }
}

TEST_CASE("correlation certificates") {
  GroupConfig g1 = make_group(1);
  QuadraticPhase q = make_phase(Mat5::identity(1), {2});

  DenseFunction conj_phase = quad_phase_fn(q, g1);
  for (Cplx& z : conj_phase.v) z = std::conj(z);
  CorrelationCertificate perfect = quad_correlation(conj_phase, q);
  CHECK(std::abs(perfect.correlation - Cplx(1.0)) < 1e-12);
  CHECK(perfect.magnitude == doctest::Approx(1.0));

  CorrelationCertificate gauss = quad_correlation(constant_fn(g1, 1.0),
                                                  make_phase(Mat5::identity(1), {0}));
  CHECK(gauss.magnitude == doctest::Approx(std::pow(5.0, -0.5)));

  SplitMix64 rng(402);
  GroupConfig g2 = make_group(2);
  for (int t = 0; t < 20; ++t) {
    DenseFunction f = random_pm1(g2, rng);
    QuadraticPhase qq = make_phase(random_sym(2, rng), random_form(2, rng));
    CHECK(quad_correlation(f, qq).magnitude <= 1.0 + 1e-12);
  }
}

TEST_CASE("a large correlation forces a large U^3 norm") {
  SplitMix64 rng(403);
  GroupConfig g2 = make_group(2);
  for (int t = 0; t < 20; ++t) {
    QuadraticPhase q = make_phase(random_sym(2, rng), random_form(2, rng));
    DenseFunction f = quad_phase_fn(q, g2);
    DenseFunction noise = random_complex_bounded(g2, rng);
    for (std::size_t i = 0; i < f.v.size(); ++i) f.v[i] *= noise.v[i];

    QuadraticPhase probe = make_phase(mat_scale(q.m, 4), q.r);
    for (Residue& d : probe.r) d = neg5(d);
    double corr = quad_correlation(f, probe).magnitude;
    CHECK(gowers_norm_fast(f, 3).value >= corr - 1e-9);
  }
}

TEST_CASE("inverse oracle recovers planted structure") {
  GroupConfig g2 = make_group(2);

  // the key example is itself a quadratic phase: magnitude exactly 1
  DenseFunction squares = quad_phase_fn(make_phase(Mat5::identity(2), {0, 0}), g2);
  auto cert = inverse_oracle(squares, 0.9);
  REQUIRE(cert.has_value());
  CHECK(cert->magnitude == doctest::Approx(1.0).epsilon(1e-12));
  // maximizer is the negated matrix, so the product of phases is constant
  CHECK(cert->phase.m == mat_scale(Mat5::identity(2), 4));
  CHECK(cert->phase.r == LinearForm{0, 0});

  // pure character: M = 0 and the negated frequency
  DenseFunction chi = quad_phase_fn(make_phase(Mat5(2), {1, 2}), g2);
  auto chi_cert = inverse_oracle(chi, 0.9);
  REQUIRE(chi_cert.has_value());
  CHECK(chi_cert->magnitude == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(chi_cert->phase.m == Mat5(2));
  CHECK(chi_cert->phase.r == LinearForm{4, 3});
}

TEST_CASE("oracle recovers every phase exactly at n <= 2") {
  for (int n = 1; n <= 2; ++n) {
    GroupConfig cfg = make_group(n);
    // enumerate all symmetric M (via upper-triangle digits) and all r
    int params = n * (n + 1) / 2;
    std::size_t m_total = 1;
    for (int i = 0; i < params; ++i) m_total *= 5;
    for (std::size_t mi = 0; mi < m_total; ++mi) {
      Mat5 m(n);
      std::size_t rem = mi;
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          m.at(i, j) = static_cast<Residue>(rem % 5);
          m.at(j, i) = m.at(i, j);
          rem /= 5;
        }
      for (std::size_t ri = 0; ri < cfg.order; ++ri) {
        QuadraticPhase q = make_phase(m, index_to_point(ri, cfg));
        auto cert = inverse_oracle(quad_phase_fn(q, cfg), 0.9);
        REQUIRE(cert.has_value());
        REQUIRE(cert->magnitude == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("oracle certifies the balanced quadric level set") {
  GroupConfig g2 = make_group(2);
  std::vector<std::size_t> quadric;
  for (std::size_t x = 0; x < g2.order; ++x)
    if (quad_eval(Mat5::identity(2), index_to_point(x, g2)) == 0) quadric.push_back(x);
  DenseFunction f = balanced(quadric, g2);

  CHECK(spec_norm_linf(dft(f)) < 0.2);  // linear analysis sees little

  OracleSettings settings;
  settings.floor_override = 0.0;
  auto cert = inverse_oracle(f, 0.5, settings);
  REQUIRE(cert.has_value());
  CHECK(cert->magnitude >= 0.1);
}

TEST_CASE("oracle argmax is delta-independent and refusals are explicit") {
  GroupConfig g2 = make_group(2);
  SplitMix64 rng(404);
  OracleSettings always;
  always.floor_override = 0.0;
  for (int t = 0; t < 5; ++t) {
    DenseFunction f = random_real_bounded(g2, rng);
    auto lo = inverse_oracle(f, 0.2, always);
    auto hi = inverse_oracle(f, 0.95, always);
    REQUIRE(lo.has_value());
    REQUIRE(hi.has_value());
    CHECK(lo->phase.m == hi->phase.m);
    CHECK(lo->phase.r == hi->phase.r);
  }

  // acceptance floor rejects weakly-correlated inputs at large delta
  DenseFunction weak = random_pm1(g2, rng);
  auto reject = inverse_oracle(weak, 0.99);
  if (reject) CHECK(reject->magnitude >= oracle_accept_floor(0.99));

  DenseFunction big = constant_fn(make_group(4), 1.0);
  CHECK_THROWS_WITH_AS(inverse_oracle(big, 0.5), doctest::Contains("n <= 3"),
                       std::invalid_argument);
}

TEST_CASE("derivative spectrum map") {
  GroupConfig g2 = make_group(2);

  DenseFunction squares = quad_phase_fn(make_phase(Mat5::identity(2), {0, 0}), g2);
  DerivativeSpectrumMap map = derivative_spectrum(squares, 0.9);
  CHECK(map.large_set.size() == g2.order);
  for (std::size_t h = 0; h < g2.order; ++h) {
    REQUIRE(map.entries[h].size() == 1);
    REQUIRE(map.phi[h].has_value());
  }
  CHECK(additive_quadruple_count(map) == 25ULL * 25 * 25);

  DenseFunction ones = constant_fn(g2, 1.0);
  DerivativeSpectrumMap flat = derivative_spectrum(ones, 0.5);
  for (std::size_t h = 0; h < g2.order; ++h) {
    REQUIRE(flat.phi[h].has_value());
    CHECK(*flat.phi[h] == LinearForm{0, 0});
  }

  SplitMix64 rng(405);
  DenseFunction noise = random_pm1(g2, rng);
  DerivativeSpectrumMap sparse = derivative_spectrum(noise, 0.9);
  CHECK(sparse.large_set.size() <= 2);  // random +-1 derivative spectra are small

  DerivativeSpectrumMap empty;
  empty.cfg = g2;
  empty.entries.resize(g2.order);
  empty.phi.resize(g2.order);
  CHECK(additive_quadruple_count(empty) == 0);
}

TEST_CASE("Phi size respects the Parseval budget") {
  GroupConfig g2 = make_group(2);
  SplitMix64 rng(406);
  for (int t = 0; t < 10; ++t) {
    DenseFunction f = random_complex_bounded(g2, rng);
    double eta = 0.3;
    DerivativeSpectrumMap map = derivative_spectrum(f, eta);
    for (std::size_t h = 0; h < g2.order; ++h)
      CHECK(static_cast<double>(map.entries[h].size()) <= 1.0 / (eta * eta) + 1e-9);
  }
}
