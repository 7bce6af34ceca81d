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

#include "qf/quadratic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "qf/gowers.hpp"

namespace qf {

namespace {

// Big-endian value of a digit vector; index order is little-endian, so this
// is the comparison key for "lexicographic in digit order".
std::uint64_t digit_lex_key(const F5Vec& v) {
  std::uint64_t key = 0;
  for (Residue d : v) key = key * kP + d;
  return key;
}

std::uint64_t ipow5(int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= kP;
  return r;
}

// Symmetric matrix from its upper-triangle digits in row-major order.
Mat5 sym_from_params(const std::vector<Residue>& params, int n) {
  Mat5 m(n);
  std::size_t t = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      m.at(i, j) = params[t];
      m.at(j, i) = params[t];
      ++t;
    }
  return m;
}

struct SearchBest {
  double magnitude = -1.0;
  std::uint64_t m_rank = 0;  // row-major lex rank of the matrix parameters
  std::uint64_t r_key = 0;   // digit-lex key of the vector
  std::size_t r_index = 0;
  std::vector<Residue> params;

  bool improves_on(const SearchBest& other) const {
    if (magnitude != other.magnitude) return magnitude > other.magnitude;
    if (m_rank != other.m_rank) return m_rank < other.m_rank;
    return r_key < other.r_key;
  }
};

// Scans matrices with lex rank in [lo, hi), keeping the deterministic best.
SearchBest scan_matrices(const DenseFunction& f, std::uint64_t lo, std::uint64_t hi, int t_count) {
  const GroupConfig& cfg = f.cfg;
  const auto& w = omega_table();
  const int params = t_count;

  std::vector<Residue> p(static_cast<std::size_t>(params), 0);
  // decompose lo into digits, p[0] most significant
  std::uint64_t rem = lo;
  for (int i = params - 1; i >= 0; --i) {
    p[static_cast<std::size_t>(i)] = static_cast<Residue>(rem % kP);
    rem /= kP;
  }

  // per-point quadratic values, refreshed per matrix
  std::vector<Residue> qvals(cfg.order);
  std::vector<GroupPoint> pts(cfg.order);
  for (std::size_t x = 0; x < cfg.order; ++x) pts[x] = index_to_point(x, cfg);

  SearchBest best;
  DenseFunction g{cfg, std::vector<Cplx>(cfg.order)};
  for (std::uint64_t rank = lo; rank < hi; ++rank) {
    Mat5 m = sym_from_params(p, cfg.n);
    for (std::size_t x = 0; x < cfg.order; ++x) qvals[x] = quad_eval(m, pts[x]);
    for (std::size_t x = 0; x < cfg.order; ++x) g.v[x] = f.v[x] * w[qvals[x]];
    Spectrum ghat = dft(g);  // ghat(r) = E_x f(x) omega^{x^T M x + r^T x}

    for (std::size_t r = 0; r < cfg.order; ++r) {
      SearchBest cand;
      cand.magnitude = std::abs(ghat.v[r]);
      cand.m_rank = rank;
      cand.r_key = digit_lex_key(pts[r]);
      cand.r_index = r;
      if (cand.improves_on(best)) {
        cand.params = p;
        best = std::move(cand);
      }
    }
    // advance the row-major odometer, last parameter fastest
    for (int i = params - 1; i >= 0; --i) {
      if (++p[static_cast<std::size_t>(i)] < kP) break;
      p[static_cast<std::size_t>(i)] = 0;
    }
  }
  return best;
}

}  // namespace

QuadraticPhase make_phase(const Mat5& m, LinearForm r) {
  if (m.n != static_cast<int>(r.size()))
    throw std::invalid_argument("make_phase: matrix/vector dimension mismatch");
  return QuadraticPhase{symmetrize(m), std::move(r)};
}

DenseFunction quad_phase_fn(const QuadraticPhase& q, const GroupConfig& cfg) {
  if (q.m.n != cfg.n || q.r.size() != static_cast<std::size_t>(cfg.n))
    throw std::invalid_argument("quad_phase_fn: phase dimension mismatch");
  const auto& w = omega_table();
  DenseFunction f{cfg, std::vector<Cplx>(cfg.order)};
  for (std::size_t x = 0; x < cfg.order; ++x) {
    GroupPoint p = index_to_point(x, cfg);
    f.v[x] = w[add5(quad_eval(q.m, p), dot5(q.r, p))];
  }
  return f;
}

Cplx gauss_sum(const QuadraticPhase& q, const GroupConfig& cfg) {
  Cplx value = mean(quad_phase_fn(q, cfg));
  const double bound = std::pow(5.0, -0.5 * mat_rank(q.m));
  const double mag = std::abs(value);
  if (mag > bound + 1e-9) throw std::logic_error("gauss_sum: magnitude exceeds 5^{-rk/2}");
  const bool r_zero = std::all_of(q.r.begin(), q.r.end(), [](Residue d) { return d == 0; });
  if (r_zero && std::abs(mag - bound) > 1e-9)
    throw std::logic_error("gauss_sum: equality fails at r = 0");
  return value;
}

CorrelationCertificate quad_correlation(const DenseFunction& f, const QuadraticPhase& q) {
  DenseFunction phase = quad_phase_fn(q, f.cfg);
  Cplx acc = 0.0;
  for (std::size_t x = 0; x < f.cfg.order; ++x) acc += f.v[x] * phase.v[x];
  acc /= static_cast<double>(f.cfg.order);
  return CorrelationCertificate{q, acc, std::abs(acc)};
}

double oracle_accept_floor(double delta) {
  return 0.5 * delta * delta * delta * delta;
}

std::optional<CorrelationCertificate> inverse_oracle(const DenseFunction& f, double delta,
                                                     const OracleSettings& settings) {
  const GroupConfig& cfg = f.cfg;
  if (cfg.n > settings.max_n)
    throw std::invalid_argument("inverse_oracle: exhaustive search bounded at n <= " +
                                std::to_string(settings.max_n) + ", got n = " +
                                std::to_string(cfg.n));
  const int t_count = cfg.n * (cfg.n + 1) / 2;
  const std::uint64_t m_total = ipow5(t_count);

  SearchBest best;
  int threads = std::max(1, settings.threads);
  if (threads == 1 || m_total < 64) {
    best = scan_matrices(f, 0, m_total, t_count);
  } else {
    threads = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), m_total));
    std::vector<SearchBest> partial(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      std::uint64_t lo = m_total * static_cast<std::uint64_t>(t) / static_cast<std::uint64_t>(threads);
      std::uint64_t hi = m_total * static_cast<std::uint64_t>(t + 1) / static_cast<std::uint64_t>(threads);
      pool.emplace_back([&f, lo, hi, t_count, &partial, t] {
        partial[static_cast<std::size_t>(t)] = scan_matrices(f, lo, hi, t_count);
      });
    }
    for (auto& th : pool) th.join();
    best = partial[0];
    for (int t = 1; t < threads; ++t)
      if (partial[static_cast<std::size_t>(t)].improves_on(best))
        best = partial[static_cast<std::size_t>(t)];
  }

  QuadraticPhase q{sym_from_params(best.params, cfg.n), index_to_point(best.r_index, cfg)};
  CorrelationCertificate cert = quad_correlation(f, q);

  const double floor = settings.floor_override >= 0.0 ? settings.floor_override
                                                      : oracle_accept_floor(delta);
  if (cert.magnitude < floor) return std::nullopt;
  return cert;
}

DerivativeSpectrumMap derivative_spectrum(const DenseFunction& f, double eta) {
  if (eta <= 0) throw std::invalid_argument("derivative_spectrum: eta must be positive");
  const GroupConfig& cfg = f.cfg;
  DerivativeSpectrumMap map;
  map.cfg = cfg;
  map.eta = eta;
  map.entries.resize(cfg.order);
  map.phi.resize(cfg.order);

  for (std::size_t h = 0; h < cfg.order; ++h) {
    Spectrum dhat = dft(derivative(f, h));
    double best_mag = -1.0;
    std::uint64_t best_key = 0;
    std::size_t best_r = 0;
    for (std::size_t r = 0; r < cfg.order; ++r) {
      double mag = std::abs(dhat.v[r]);
      if (mag < eta) continue;
      LinearForm form = index_to_point(r, cfg);
      std::uint64_t key = digit_lex_key(form);
      map.entries[h].push_back(std::move(form));
      if (mag > best_mag || (mag == best_mag && key < best_key)) {
        best_mag = mag;
        best_key = key;
        best_r = r;
      }
    }
    if (!map.entries[h].empty()) {
      map.phi[h] = index_to_point(best_r, cfg);
      map.large_set.push_back(h);
    }
  }
  return map;
}

std::uint64_t additive_quadruple_count(const DerivativeSpectrumMap& map) {
  const GroupConfig& cfg = map.cfg;
  std::vector<char> in_s(cfg.order, 0);
  std::vector<std::size_t> phi_idx(cfg.order, 0);
  for (std::size_t h : map.large_set) {
    in_s[h] = 1;
    phi_idx[h] = point_to_index(*map.phi[h], cfg);
  }

  std::uint64_t count = 0;
  for (std::size_t s1 : map.large_set)
    for (std::size_t s2 : map.large_set) {
      std::size_t hsum = add_index(s1, s2, cfg);
      std::size_t psum = add_index(phi_idx[s1], phi_idx[s2], cfg);
      for (std::size_t s3 : map.large_set) {
        std::size_t s4 = sub_index(hsum, s3, cfg);
        if (!in_s[s4]) continue;
        if (add_index(phi_idx[s3], phi_idx[s4], cfg) == psum) ++count;
      }
    }
  return count;
}

}  // namespace qf
