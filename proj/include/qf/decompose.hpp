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
#include <optional>
#include <utility>
#include <vector>

#include "qf/factors.hpp"
#include "qf/growth.hpp"
#include "qf/quadratic.hpp"

namespace qf {

// Decomposition drivers: Koopman-von Neumann splits f = f1 + f2 with f1 a
// projection onto a bounded-complexity factor and f2 uniform, and the
// regularity refinements f = f1 + f2 + f3 with f2 small in L^2 and f3 small
// in U^3 relative to an arbitrary growth function of the complexity.
//
// The energy increment floor per step is c(delta) = theta(delta)^2 / 4 with
// theta the oracle acceptance floor; every report echoes it.

struct DecomposeSettings {
  OracleSettings oracle;
  int max_iterations = 100000;  // runaway guard on top of the proof caps
};

struct Decomposition {
  DenseFunction f1, f2;
  std::optional<DenseFunction> f3;
  QuadraticFactor factor;
  int iterations = 0;
  std::vector<double> energy_history;  // initial energy, then one entry per step
  std::vector<double> step_floors;     // c(delta) in force at each step
  std::vector<CorrelationCertificate> certificates;

  double delta = 0.0;
  double increment_floor = 0.0;
  double f2_norm = 0.0;  // measured in the driver's governing norm
  double f2_bound = 0.0;
  double f3_norm = 0.0;  // U^3 norm, when f3 is present
  double f3_bound = 0.0;
  std::vector<double> round_deltas;  // regularity schedule delta_i
};

double energy_increment_floor(double delta);

/// Constructive Fourier proof: eta = delta^2/2, S = Spec_eta(f), H = S^perp,
/// f1 = f * mu_H. Guarantees complexity <= 4 delta^-4 and ||f2||_{U^2} <= delta.
Decomposition linear_kvn(const DenseFunction& f, double delta);

/// One energy increment: absent when ||f - E(f|B_2)||_{U^3} < delta, else
/// joins the oracle certificate of g = f - E(f|B_2) as a (1,1) factor.
/// Realized energy gain below c(delta) throws, as does an empty oracle
/// result (either would falsify the implementation at desk scale).
std::optional<std::pair<QuadraticFactor, CorrelationCertificate>> energy_increment_step(
    const DenseFunction& f, const QuadraticFactor& factor, double delta,
    const DecomposeSettings& settings = {});

/// Iterates energy_increment_step until the remainder is delta-uniform in U^3.
Decomposition quadratic_kvn(const DenseFunction& f, double delta, const QuadraticFactor& initial,
                            const DecomposeSettings& settings = {});

/// Three-term split: iterated KvN with schedule delta_{i+1} <= 1/omega(C_i),
/// stopped at the first energy gap <= delta^2. Output satisfies
/// ||f2||_2 <= delta and ||f3||_{U^3} <= 1/omega(d1 + d2) for the returned factor.
Decomposition regularity(const DenseFunction& f, double delta, const GrowthFn& omega,
                         const QuadraticFactor& initial, const DecomposeSettings& settings = {});

/// As regularity, with the factor additionally made high-rank: final rank
/// >= omega1(d1 + d2) (or d2 = 0) and ||f3||_{U^3} <= 1/omega2(d1 + d2).
Decomposition regularity_high_rank(const DenseFunction& f, double delta, const GrowthFn& omega1,
                                   const GrowthFn& omega2, const QuadraticFactor& initial,
                                   const DecomposeSettings& settings = {});

/// Non-negative function on configuration space F_5^{d1} x F_5^{d2},
/// indexed by a + 5^{d1} b in the little-endian digit packing of atom_key.
struct ConfigSpaceFn {
  int d1 = 0;
  int d2 = 0;
  std::vector<double> v;  // length 5^{d1+d2}
};

/// Values of a B_2-measurable function on configuration space (zero on
/// empty atoms).
ConfigSpaceFn config_function(const DenseFunction& measurable, const QuadraticFactor& factor);

struct CountIneqReport {
  double lhs = 0.0;          // constrained enumeration
  double rhs = 0.0;          // (mean F)^4
  double lhs_fourier = 0.0;  // partial-Fourier evaluation of the lhs
};

/// E_{a, b1..b4 : b1 - 3 b2 + 3 b3 - b4 = 0} F(a,b1)...F(a,b4) >= (E F)^4
/// for F >= 0, cross-computed through the partial Fourier transform in the
/// second variable. Violations throw; d1 + d2 <= 6.
CountIneqReport configspace_count_inequality(const ConfigSpaceFn& F);

struct BhkTerm {
  std::array<int, 4> pattern{};  // 1, 2 or 3 per slot
  Cplx value = 0.0;
  double bound = 0.0;  // 0 for the main term (no bound checked)
  bool bound_ok = true;
  bool bound_vacuous = false;  // bound exceeds the trivial bound 1
};

struct BhkReport {
  double alpha = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  GrowthFn omega1, omega2;

  Decomposition decomposition;
  int factor_rank_value = 0;
  std::size_t h_dim = 0;  // dimension of H = (span of linear forms)^perp

  double weighted_count = 0.0;  // E_{x,d} 1_A(...) mu_H(d)
  std::vector<BhkTerm> terms;   // the 81-term split
  double term_sum_error = 0.0;
  double f2_l2 = 0.0;
  double f3_u3 = 0.0;
  double main_term = 0.0;  // the pure-f1 term
  double main_term_target = 0.0;  // alpha^4 - epsilon/2

  double config_mean = 0.0;  // E_{(a,b)} f1 on configuration space
  double config_mean_error_bound = 0.0;
  bool config_mean_bound_vacuous = false;

  bool count_inequality_ran = false;
  CountIneqReport count_inequality;
  double main_term_config_average = 0.0;
  double main_term_config_gap = 0.0;  // |main_term - main_term_config_average|
  double main_term_config_error_bound = 0.0;
  bool main_term_config_bound_vacuous = false;

  bool fallback = false;  // witness search widened to all d != 0
  std::size_t witness_d = 0;
  std::uint64_t witness_count = 0;
  double required_count = 0.0;  // (alpha^4 - epsilon) N
  bool witness_ok = false;
};

/// The end-to-end 4-AP experiment: regularity_high_rank on 1_A, counting
/// along the factor subspace H, the 81-term bookkeeping, the counting
/// inequality, and a concrete witness difference with its progression count.
BhkReport bhk_experiment(const std::vector<std::size_t>& members, const GroupConfig& cfg,
                         double epsilon, const DecomposeSettings& settings = {});

}  // namespace qf
