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

#include <optional>
#include <vector>

#include "qf/fourier.hpp"

namespace qf {

// Quadratic phases x -> omega^{x^T M x + r^T x} with M symmetric over F_5,
// their Gauss sums, correlation certificates, and the exhaustive search
// that realizes the U^3 inverse theorem at desk scale.

struct QuadraticPhase {
  Mat5 m;        // symmetric
  LinearForm r;  // length n
};

/// Builds a phase, symmetrizing m (idempotent on symmetric inputs).
QuadraticPhase make_phase(const Mat5& m, LinearForm r);

/// x -> omega^{x^T M x + r^T x}; all values on the unit circle.
DenseFunction quad_phase_fn(const QuadraticPhase& q, const GroupConfig& cfg);

/// E_x omega^{x^T M x + r^T x}. Checks |value| <= 5^{-rk(M)/2} + 1e-9, with
/// equality when r = 0; a violation throws (it would mean broken arithmetic).
Cplx gauss_sum(const QuadraticPhase& q, const GroupConfig& cfg);

struct CorrelationCertificate {
  QuadraticPhase phase;
  Cplx correlation = 0.0;  // E_x f(x) omega^{x^T M x + r^T x}, no conjugate
  double magnitude = 0.0;
};

CorrelationCertificate quad_correlation(const DenseFunction& f, const QuadraticPhase& q);

/// Oracle acceptance floor theta(delta) = delta^4 / 2. The literature only
/// guarantees an unspecified positive correlation; this explicit monotone
/// stand-in makes the decomposition loops' termination accounting auditable,
/// and every report echoes it.
double oracle_accept_floor(double delta);

struct OracleSettings {
  int max_n = 3;              // exhaustion bound: 5^{n(n+1)/2} matrices x 5^n vectors
  int threads = 1;            // search partitions merge deterministically
  double floor_override = -1.0;  // >= 0 replaces theta(delta)
};

/// Exhaustive maximizer of |E_x f(x) omega^{x^T M x + r^T x}| over all
/// symmetric M and all r; ties broken by lexicographically least (M, r) in
/// row-major/digit order. Returns nothing when the maximum falls below the
/// acceptance floor. Throws when cfg.n exceeds the exhaustion bound.
std::optional<CorrelationCertificate> inverse_oracle(const DenseFunction& f, double delta,
                                                     const OracleSettings& settings = {});

struct DerivativeSpectrumMap {
  GroupConfig cfg;
  double eta = 0.0;
  std::vector<std::vector<LinearForm>> entries;  // Phi(h), indexed by h
  std::vector<std::optional<LinearForm>> phi;    // argmax coefficient per h
  std::vector<std::size_t> large_set;            // S = {h : Phi(h) nonempty}
};

/// Phi(h) = {r : |D(f;h)^(r)| >= eta} for every h; phi(h) the modulus argmax
/// (deterministic, lexicographic tie-break).
DerivativeSpectrumMap derivative_spectrum(const DenseFunction& f, double eta);

/// Number of quadruples in S^4 with s1+s2 = s3+s4 and
/// phi(s1)+phi(s2) = phi(s3)+phi(s4), by O(|S|^3) enumeration.
std::uint64_t additive_quadruple_count(const DerivativeSpectrumMap& map);

}  // namespace qf
