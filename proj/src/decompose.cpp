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

#include "qf/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "qf/gowers.hpp"
#include "qf/progressions.hpp"

namespace qf {

namespace {

constexpr double kSlack = 1e-9;

DenseFunction fn_sub(const DenseFunction& a, const DenseFunction& b) {
  require_same_group(a, b);
  DenseFunction out{a.cfg, a.v};
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] -= b.v[i];
  return out;
}

DenseFunction fn_add(const DenseFunction& a, const DenseFunction& b) {
  require_same_group(a, b);
  DenseFunction out{a.cfg, a.v};
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] += b.v[i];
  return out;
}

double max_abs_diff(const DenseFunction& a, const DenseFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.v.size(); ++i) m = std::max(m, std::abs(a.v[i] - b.v[i]));
  return m;
}

QuadraticFactor reduced_copy(const GroupConfig& cfg, const QuadraticFactor& f) {
  if (!(f.cfg == cfg) && !(f.d1() == 0 && f.d2() == 0))
    throw std::invalid_argument("factor bound to a different group");
  return make_factor(cfg, f.linear_forms, f.quadratics);
}

int factor_measure(const QuadraticFactor& f) { return f.d1() + f.d2(); }

}  // namespace

double energy_increment_floor(double delta) {
  double theta = oracle_accept_floor(delta);
  return theta * theta / 4.0;
}

Decomposition linear_kvn(const DenseFunction& f, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("linear_kvn: need delta in (0,1)");
  if (!one_bounded(f, 1e-9)) throw std::invalid_argument("linear_kvn: input must be 1-bounded");

  const double eta = delta * delta / 2.0;
  std::vector<LinearForm> spec = large_spectrum(f, eta);
  std::vector<GroupPoint> h_basis = null_space(spec, f.cfg);
  DenseFunction mu = haar_on_subspace(h_basis, f.cfg);

  Decomposition d;
  d.delta = delta;
  d.f1 = convolve(f, mu);
  d.f2 = fn_sub(f, d.f1);
  d.factor = make_factor(f.cfg, spec, {});
  d.energy_history = {energy(f, d.factor)};

  if (max_abs_diff(d.f1, conditional_expectation(f, d.factor)) > 1e-12)
    throw std::logic_error("linear_kvn: f1 differs from the factor projection");

  const double complexity_cap = 4.0 * std::pow(delta, -4.0);
  if (static_cast<double>(spec.size()) > complexity_cap || d.factor.d1() > complexity_cap)
    throw std::logic_error("linear_kvn: spectrum larger than 4 delta^-4");

  d.f2_norm = gowers_norm_fast(d.f2, 2).value;
  d.f2_bound = delta;
  if (d.f2_norm > delta + kSlack) throw std::logic_error("linear_kvn: ||f2||_{U^2} exceeds delta");
  return d;
}

std::optional<std::pair<QuadraticFactor, CorrelationCertificate>> energy_increment_step(
    const DenseFunction& f, const QuadraticFactor& factor, double delta,
    const DecomposeSettings& settings) {
  DenseFunction g = fn_sub(f, conditional_expectation(f, factor));
  const double u3 = gowers_norm_fast(g, 3).value;
  if (u3 < delta) return std::nullopt;

  std::optional<CorrelationCertificate> cert = inverse_oracle(g, delta, settings.oracle);
  if (!cert)
    throw std::logic_error("energy_increment_step: inverse theorem violated at desk scale "
                           "(||g||_{U^3} = " + std::to_string(u3) + " but the oracle accepted nothing)");

  QuadraticFactor refined =
      join(factor, make_factor(f.cfg, {cert->phase.r}, {cert->phase.m}));
  const double gain = energy(f, refined) - energy(f, factor);
  if (gain < energy_increment_floor(delta) - 1e-12)
    throw std::logic_error("energy_increment_step: realized gain " + std::to_string(gain) +
                           " below the c(delta) floor");
  return std::make_pair(std::move(refined), std::move(*cert));
}

Decomposition quadratic_kvn(const DenseFunction& f, double delta, const QuadraticFactor& initial,
                            const DecomposeSettings& settings) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("quadratic_kvn: need delta in (0,1)");
  if (!one_bounded(f, 1e-9)) throw std::invalid_argument("quadratic_kvn: input must be 1-bounded");

  Decomposition d;
  d.delta = delta;
  d.increment_floor = energy_increment_floor(delta);
  d.factor = reduced_copy(f.cfg, initial);
  d.energy_history = {energy(f, d.factor)};

  const double theta = oracle_accept_floor(delta);
  const double cap = 1.0 / (theta * theta) + 8.0;

  while (true) {
    auto step = energy_increment_step(f, d.factor, delta, settings);
    if (!step) break;
    d.factor = std::move(step->first);
    d.certificates.push_back(std::move(step->second));
    d.energy_history.push_back(energy(f, d.factor));
    d.step_floors.push_back(d.increment_floor);
    ++d.iterations;
    if (static_cast<double>(d.iterations) > cap || d.iterations > settings.max_iterations) {
      std::string history;
      for (double e : d.energy_history) history += std::to_string(e) + " ";
      throw std::runtime_error("quadratic_kvn: iteration cap exceeded; energy history: " + history);
    }
  }

  d.f1 = conditional_expectation(f, d.factor);
  d.f2 = fn_sub(f, d.f1);
  d.f2_norm = gowers_norm_fast(d.f2, 3).value;
  d.f2_bound = delta;
  if (d.f2_norm > delta + kSlack) throw std::logic_error("quadratic_kvn: ||f2||_{U^3} exceeds delta");
  return d;
}

namespace {

Decomposition regularity_impl(const DenseFunction& f, double delta,
                              const std::function<double(double)>& omega,
                              const QuadraticFactor& initial, const DecomposeSettings& settings) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("regularity: need delta in (0,1)");

  Decomposition out;
  out.delta = delta;
  out.increment_floor = energy_increment_floor(delta);

  QuadraticFactor prev = reduced_copy(f.cfg, initial);
  double e_prev = energy(f, prev);
  out.energy_history = {e_prev};

  const int rounds_cap = static_cast<int>(std::ceil(1.0 / (delta * delta))) + 1;
  double delta_i = std::min(delta, 1.0 / omega(factor_measure(prev)));

  for (int round = 1; round <= rounds_cap; ++round) {
    out.round_deltas.push_back(delta_i);
    Decomposition kvn = quadratic_kvn(f, delta_i, prev, settings);
    out.energy_history.insert(out.energy_history.end(), kvn.energy_history.begin() + 1,
                              kvn.energy_history.end());
    out.step_floors.insert(out.step_floors.end(), kvn.step_floors.begin(), kvn.step_floors.end());
    out.certificates.insert(out.certificates.end(), kvn.certificates.begin(),
                            kvn.certificates.end());
    out.iterations += kvn.iterations;

    const double e_cur = out.energy_history.back();
    if (e_cur - e_prev <= delta * delta + 1e-12) {
      out.factor = prev;
      out.f1 = conditional_expectation(f, prev);
      out.f2 = fn_sub(kvn.f1, out.f1);  // E(f|B^{(i+1)}) - E(f|B^{(i)})
      out.f3 = std::move(kvn.f2);       // f - E(f|B^{(i+1)})
      out.f2_norm = norm_l2(out.f2);
      out.f2_bound = delta;
      out.f3_norm = kvn.f2_norm;
      out.f3_bound = delta_i;
      if (out.f2_norm > delta + kSlack) throw std::logic_error("regularity: ||f2||_2 exceeds delta");
      if (out.f3_norm > out.f3_bound + kSlack)
        throw std::logic_error("regularity: ||f3||_{U^3} exceeds the growth bound");
      return out;
    }
    prev = std::move(kvn.factor);
    e_prev = e_cur;
    delta_i = std::min(delta, 1.0 / omega(factor_measure(prev)));
  }
  throw std::runtime_error("regularity: no small energy gap within ceil(delta^-2)+1 rounds");
}

// Worst-case total complexity after rank-reducing a factor of total
// complexity t: every step may add omega1(current total) linear forms and
// removes one quadratic.
double rank_reduce_growth_bound(double t, const GrowthFn& omega1) {
  double d1 = t, d2 = t;
  while (d2 > 0.0) {
    d1 += std::max(0.0, omega1(d1 + d2));
    d2 -= 1.0;
    if (d1 > 1e150) return 1e150;
  }
  return d1;
}

}  // namespace

Decomposition regularity(const DenseFunction& f, double delta, const GrowthFn& omega,
                         const QuadraticFactor& initial, const DecomposeSettings& settings) {
  return regularity_impl(f, delta, [&omega](double t) { return omega(t); }, initial, settings);
}

Decomposition regularity_high_rank(const DenseFunction& f, double delta, const GrowthFn& omega1,
                                   const GrowthFn& omega2, const QuadraticFactor& initial,
                                   const DecomposeSettings& settings) {
  // Inner growth composed so that the f3 bound survives the complexity
  // added by rank reduction.
  auto inner = [&](double t) { return omega2(rank_reduce_growth_bound(t, omega1)); };

  Decomposition out;
  out.delta = delta;
  out.increment_floor = energy_increment_floor(delta / 2.0);

  QuadraticFactor cur = reduced_copy(f.cfg, initial);
  const int outer_cap = static_cast<int>(std::ceil(4.0 / (delta * delta))) + 1;
  bool first = true;

  for (int round = 1; round <= outer_cap; ++round) {
    Decomposition d = regularity_impl(f, delta / 2.0, inner, cur, settings);
    std::size_t skip = first ? 0 : 1;  // later rounds re-record the junction energy
    out.energy_history.insert(out.energy_history.end(), d.energy_history.begin() + skip,
                              d.energy_history.end());
    first = false;
    out.step_floors.insert(out.step_floors.end(), d.step_floors.begin(), d.step_floors.end());
    out.certificates.insert(out.certificates.end(), d.certificates.begin(), d.certificates.end());
    out.round_deltas.insert(out.round_deltas.end(), d.round_deltas.begin(), d.round_deltas.end());
    out.iterations += d.iterations;

    QuadraticFactor reduced = rank_reduce(d.factor, omega1);
    DenseFunction f1_reduced = conditional_expectation(f, reduced);
    DenseFunction shift = fn_sub(d.f1, f1_reduced);  // E(f|B_2) - E(f|B'_2)
    const double diff = norm_l2(shift);

    if (diff < delta / 2.0) {
      out.factor = std::move(reduced);
      out.f1 = std::move(f1_reduced);
      out.f2 = fn_add(d.f2, shift);
      out.f3 = std::move(d.f3);
      out.f2_norm = norm_l2(out.f2);
      out.f2_bound = delta;
      out.f3_norm = d.f3_norm;
      out.f3_bound = 1.0 / omega2(factor_measure(out.factor));
      if (out.factor.d2() > 0 &&
          static_cast<double>(factor_rank(out.factor)) < omega1(factor_measure(out.factor)))
        throw std::logic_error("regularity_high_rank: rank condition failed after reduction");
      if (out.f2_norm > delta + kSlack)
        throw std::logic_error("regularity_high_rank: ||f2||_2 exceeds delta");
      if (out.f3_norm > out.f3_bound + kSlack)
        throw std::logic_error("regularity_high_rank: ||f3||_{U^3} exceeds the growth bound");
      return out;
    }
    cur = std::move(reduced);  // energy went up by at least delta^2/4; go again
  }
  throw std::runtime_error("regularity_high_rank: outer cap ceil(4 delta^-2)+1 exceeded");
}

ConfigSpaceFn config_function(const DenseFunction& measurable, const QuadraticFactor& factor) {
  const auto keys = atom_keys(factor);
  std::size_t slots = 1;
  for (int i = 0; i < factor.d1() + factor.d2(); ++i) slots *= kP;

  ConfigSpaceFn f;
  f.d1 = factor.d1();
  f.d2 = factor.d2();
  f.v.assign(slots, 0.0);
  std::vector<char> seen(slots, 0);
  for (std::size_t x = 0; x < measurable.cfg.order; ++x) {
    const Cplx& z = measurable.v[x];
    if (std::abs(z.imag()) > 1e-9)
      throw std::invalid_argument("config_function: function must be real-valued");
    if (seen[keys[x]] && std::abs(f.v[keys[x]] - z.real()) > 1e-9)
      throw std::invalid_argument("config_function: function is not constant on atoms");
    f.v[keys[x]] = z.real();
    seen[keys[x]] = 1;
  }
  return f;
}

CountIneqReport configspace_count_inequality(const ConfigSpaceFn& F) {
  if (F.d1 + F.d2 > 6)
    throw std::invalid_argument("configspace_count_inequality: d1 + d2 <= 6 required");
  for (double x : F.v)
    if (x < -1e-12)
      throw std::invalid_argument("configspace_count_inequality: F must be non-negative");

  const GroupConfig cfg_b = make_group(F.d2);
  std::size_t a_count = 1;
  for (int i = 0; i < F.d1; ++i) a_count *= kP;
  const std::size_t b_count = cfg_b.order;
  if (F.v.size() != a_count * b_count)
    throw std::invalid_argument("configspace_count_inequality: value array has wrong length");

  // b4 = b1 - 3 b2 + 3 b3 = b1 + 2 b2 + 3 b3 over F_5, coordinatewise.
  double lhs = 0.0;
  for (std::size_t a = 0; a < a_count; ++a) {
    const double* fa = F.v.data() + 0;
    double acc = 0.0;
    for (std::size_t b1 = 0; b1 < b_count; ++b1) {
      double v1 = fa[a + a_count * b1];
      if (v1 == 0.0) continue;
      for (std::size_t b2 = 0; b2 < b_count; ++b2) {
        double v12 = v1 * fa[a + a_count * b2];
        if (v12 == 0.0) continue;
        std::size_t part = add_index(b1, scale_index(b2, 2, cfg_b), cfg_b);
        for (std::size_t b3 = 0; b3 < b_count; ++b3) {
          std::size_t b4 = add_index(part, scale_index(b3, 3, cfg_b), cfg_b);
          acc += v12 * fa[a + a_count * b3] * fa[a + a_count * b4];
        }
      }
    }
    lhs += acc;
  }
  lhs /= static_cast<double>(a_count) * static_cast<double>(b_count) * static_cast<double>(b_count) *
         static_cast<double>(b_count);

  double total = 0.0;
  for (double x : F.v) total += x;
  const double mean_f = total / static_cast<double>(F.v.size());
  const double rhs = mean_f * mean_f * mean_f * mean_f;
  if (lhs < rhs - 1e-10)
    throw std::logic_error("configspace_count_inequality: lhs < rhs");

  // Partial Fourier route: E_a sum_r |F~(a,r)|^2 |F~(a,-3r)|^2.
  double four = 0.0;
  for (std::size_t a = 0; a < a_count; ++a) {
    DenseFunction fa{cfg_b, std::vector<Cplx>(b_count)};
    for (std::size_t b = 0; b < b_count; ++b) fa.v[b] = F.v[a + a_count * b];
    Spectrum s = dft(fa);
    for (std::size_t r = 0; r < b_count; ++r)
      four += std::norm(s.v[r]) * std::norm(s.v[scale_index(r, 2, cfg_b)]);
  }
  four /= static_cast<double>(a_count);
  if (std::abs(four - lhs) > 1e-9)
    throw std::logic_error("configspace_count_inequality: Fourier route disagrees with enumeration");

  return CountIneqReport{lhs, rhs, four};
}

BhkReport bhk_experiment(const std::vector<std::size_t>& members, const GroupConfig& cfg,
                         double epsilon, const DecomposeSettings& settings) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("bhk: need epsilon in (0,1)");
  if (cfg.n > 4) throw std::invalid_argument("bhk: n <= 3 for the pipeline, n = 4 for fallback only");

  std::vector<std::size_t> set = members;
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());

  BhkReport rep;
  rep.epsilon = epsilon;
  const double n_real = static_cast<double>(cfg.order);
  rep.alpha = static_cast<double>(set.size()) / n_real;
  rep.delta = epsilon / 200.0;

  const double alpha_floor = std::max(rep.alpha, 1.0 / n_real);
  rep.omega1 = GrowthFn::affine(
      100.0, 100.0 * (std::ceil(std::log(1.0 / epsilon)) + std::ceil(std::log(1.0 / alpha_floor))));
  rep.omega2 = GrowthFn::exponential(5.0, 625.0 / epsilon);

  DenseFunction f_a = indicator(set, cfg);
  std::vector<GroupPoint> h_basis;

  const bool full_pipeline = cfg.n <= 3;
  if (full_pipeline) {
    rep.decomposition = regularity_high_rank(f_a, rep.delta, rep.omega1, rep.omega2,
                                             make_factor(cfg, {}, {}), settings);
    const QuadraticFactor& factor = rep.decomposition.factor;
    rep.factor_rank_value = factor_rank(factor);
    h_basis = null_space(factor.linear_forms, cfg);
    rep.h_dim = h_basis.size();
    DenseFunction mu = haar_on_subspace(h_basis, cfg);

    const DenseFunction& f1 = rep.decomposition.f1;
    const DenseFunction& f2 = rep.decomposition.f2;
    const DenseFunction& f3 = *rep.decomposition.f3;
    rep.f2_l2 = norm_l2(f2);
    rep.f3_u3 = gowers_norm_fast(f3, 3).value;

    Cplx weighted = lambda4_weighted(f_a, f_a, f_a, f_a, mu);
    rep.weighted_count = weighted.real();

    const int d1 = factor.d1(), d2 = factor.d2();
    const double f3_term_bound = std::pow(5.0, 2.0 * d1) * rep.f3_u3;
    const DenseFunction* part[3] = {&f1, &f2, &f3};

    Cplx term_sum = 0.0;
    for (int p0 = 1; p0 <= 3; ++p0)
      for (int p1 = 1; p1 <= 3; ++p1)
        for (int p2 = 1; p2 <= 3; ++p2)
          for (int p3 = 1; p3 <= 3; ++p3) {
            BhkTerm t;
            t.pattern = {p0, p1, p2, p3};
            t.value = lambda4_weighted(*part[p0 - 1], *part[p1 - 1], *part[p2 - 1], *part[p3 - 1], mu);
            term_sum += t.value;
            const bool has2 = p0 == 2 || p1 == 2 || p2 == 2 || p3 == 2;
            const bool has3 = p0 == 3 || p1 == 3 || p2 == 3 || p3 == 3;
            if (has2 && has3)
              t.bound = std::min(rep.f2_l2, f3_term_bound);
            else if (has2)
              t.bound = rep.f2_l2;
            else if (has3)
              t.bound = f3_term_bound;
            else
              rep.main_term = t.value.real();
            if (has2 || has3) {
              t.bound_ok = std::abs(t.value) <= t.bound + kSlack;
              t.bound_vacuous = t.bound > 1.0;
              if (!t.bound_ok)
                throw std::logic_error("bhk: an f2/f3 term violates its claimed bound");
            }
            rep.terms.push_back(std::move(t));
          }
    rep.term_sum_error = std::abs(term_sum - weighted);
    if (rep.term_sum_error > 1e-8)
      throw std::logic_error("bhk: 81-term split fails to reconcile with the direct count");
    rep.main_term_target = std::pow(rep.alpha, 4.0) - epsilon / 2.0;

    ConfigSpaceFn config_f1 = config_function(f1, factor);
    double cfg_total = 0.0;
    for (double x : config_f1.v) cfg_total += x;
    rep.config_mean = cfg_total / static_cast<double>(config_f1.v.size());
    rep.config_mean_error_bound =
        rep.alpha * std::pow(5.0, 2.0 * d1 + 2.0 * d2 - 0.5 * rep.factor_rank_value);
    rep.config_mean_bound_vacuous = rep.config_mean_error_bound >= rep.alpha;

    if (d1 + d2 <= 6) {
      rep.count_inequality = configspace_count_inequality(config_f1);
      rep.count_inequality_ran = true;
      rep.main_term_config_average = rep.count_inequality.lhs;
      rep.main_term_config_gap = std::abs(rep.main_term - rep.main_term_config_average);
      rep.main_term_config_error_bound = std::pow(5.0, 2.0 * d1 + 3.0 * d2 - 0.5 * rep.factor_rank_value);
      rep.main_term_config_bound_vacuous = rep.main_term_config_error_bound > 1.0;
    }
  } else {
    rep.fallback = true;
  }

  // Witness search: best difference inside H first, all of G on fallback.
  rep.required_count = (std::pow(rep.alpha, 4.0) - epsilon) * n_real;
  std::vector<char> in(cfg.order, 0);
  for (std::size_t m : set) in[m] = 1;
  auto count_for = [&](std::size_t d) {
    std::uint64_t c = 0;
    for (std::size_t x = 0; x < cfg.order; ++x) {
      if (!in[x]) continue;
      std::size_t x1 = add_index(x, d, cfg);
      if (!in[x1]) continue;
      std::size_t x2 = add_index(x1, d, cfg);
      if (in[x2] && in[add_index(x2, d, cfg)]) ++c;
    }
    return c;
  };
  auto best_of = [&](const std::vector<std::size_t>& ds) {
    std::uint64_t best = 0;
    std::size_t best_d = 0;
    bool any = false;
    for (std::size_t d : ds) {
      if (d == 0) continue;
      std::uint64_t c = count_for(d);
      if (!any || c > best) {
        best = c;
        best_d = d;
        any = true;
      }
    }
    return std::make_pair(best_d, best);
  };

  bool found = false;
  if (full_pipeline && rep.h_dim >= 1) {
    auto [d, c] = best_of(span_points(h_basis, cfg));
    if (d != 0 && static_cast<double>(c) >= rep.required_count - 1e-9) {
      rep.witness_d = d;
      rep.witness_count = c;
      rep.witness_ok = true;
      found = true;
    }
  }
  if (!found) {
    rep.fallback = true;
    std::vector<std::size_t> all(cfg.order);
    for (std::size_t i = 0; i < cfg.order; ++i) all[i] = i;
    auto [d, c] = best_of(all);
    rep.witness_d = d;
    rep.witness_count = c;
    rep.witness_ok = static_cast<double>(c) >= rep.required_count - 1e-9;
  }
  return rep;
}

}  // namespace qf
