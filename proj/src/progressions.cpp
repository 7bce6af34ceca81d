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

#include "qf/progressions.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "qf/gowers.hpp"

namespace qf {

namespace {

// x -> x + d as a permutation of flat indices, one pass per difference.
std::vector<std::uint32_t> shift_map(std::size_t d, const GroupConfig& cfg) {
  std::vector<std::uint32_t> s(cfg.order);
  for (std::size_t x = 0; x < cfg.order; ++x)
    s[x] = static_cast<std::uint32_t>(add_index(x, d, cfg));
  return s;
}

}  // namespace

Cplx lambda3(const DenseFunction& f1, const DenseFunction& f2, const DenseFunction& f3) {
  require_same_group(f1, f2);
  require_same_group(f1, f3);
  const std::size_t n = f1.cfg.order;
  Cplx total = 0.0;
  for (std::size_t d = 0; d < n; ++d) {
    const auto s = shift_map(d, f1.cfg);
    for (std::size_t x = 0; x < n; ++x) total += f1.v[x] * f2.v[s[x]] * f3.v[s[s[x]]];
  }
  return total / static_cast<double>(n * n);
}

Cplx lambda3_spectral(const DenseFunction& f1, const DenseFunction& f2, const DenseFunction& f3) {
  require_same_group(f1, f2);
  require_same_group(f1, f3);
  Spectrum s1 = dft(f1), s2 = dft(f2), s3 = dft(f3);
  Cplx acc = 0.0;
  for (std::size_t r = 0; r < s1.v.size(); ++r) {
    std::size_t m2r = scale_index(r, 3, f1.cfg);  // -2r = 3r coordinatewise
    acc += s1.v[r] * s2.v[m2r] * s3.v[r];
  }
  return acc;
}

Cplx lambda4(const DenseFunction& f1, const DenseFunction& f2, const DenseFunction& f3,
             const DenseFunction& f4) {
  require_same_group(f1, f2);
  require_same_group(f1, f3);
  require_same_group(f1, f4);
  if (f1.cfg.n > 5) throw std::invalid_argument("lambda4: O(N^2) evaluation gated at n <= 5");
  const std::size_t n = f1.cfg.order;
  Cplx total = 0.0;
  for (std::size_t d = 0; d < n; ++d) {
    const auto s = shift_map(d, f1.cfg);
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t x1 = s[x], x2 = s[x1], x3 = s[x2];
      total += f1.v[x] * f2.v[x1] * f3.v[x2] * f4.v[x3];
    }
  }
  return total / static_cast<double>(n * n);
}

Cplx lambda4_weighted(const DenseFunction& f1, const DenseFunction& f2, const DenseFunction& f3,
                      const DenseFunction& f4, const DenseFunction& w) {
  require_same_group(f1, f2);
  require_same_group(f1, f3);
  require_same_group(f1, f4);
  require_same_group(f1, w);
  for (const Cplx& z : w.v)
    if (z.real() < -1e-12 || std::abs(z.imag()) > 1e-12)
      throw std::invalid_argument("lambda4_weighted: weight must be a non-negative density");
  if (std::abs(mean(w) - Cplx(1.0)) > 1e-9)
    std::cerr << "lambda4_weighted: warning: weight mean " << mean(w).real()
              << " != 1, proceeding with given weights\n";
  if (f1.cfg.n > 5) throw std::invalid_argument("lambda4_weighted: O(N^2) evaluation gated at n <= 5");

  const std::size_t n = f1.cfg.order;
  Cplx total = 0.0;
  for (std::size_t d = 0; d < n; ++d) {
    if (w.v[d] == 0.0) continue;
    const auto s = shift_map(d, f1.cfg);
    Cplx inner = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t x1 = s[x], x2 = s[x1], x3 = s[x2];
      inner += f1.v[x] * f2.v[x1] * f3.v[x2] * f4.v[x3];
    }
    total += inner * w.v[d];
  }
  return total / static_cast<double>(n * n);
}

DenseFunction balanced(const std::vector<std::size_t>& members, const GroupConfig& cfg) {
  DenseFunction f = indicator(members, cfg);
  double alpha = 0.0;
  for (const Cplx& z : f.v) alpha += z.real();
  alpha /= static_cast<double>(cfg.order);
  for (Cplx& z : f.v) z -= alpha;
  return f;
}

ExpansionReport balanced_expansion_check(const std::vector<std::vector<std::size_t>>& sets,
                                         const GroupConfig& cfg) {
  const int k = static_cast<int>(sets.size());
  if (k != 3 && k != 4) throw std::invalid_argument("balanced_expansion_check: need 3 or 4 sets");

  std::vector<DenseFunction> dens, bal, ind;
  for (const auto& s : sets) {
    ind.push_back(indicator(s, cfg));
    dens.push_back(constant_fn(cfg, static_cast<double>(s.size()) / static_cast<double>(cfg.order)));
    bal.push_back(balanced(s, cfg));
  }

  ExpansionReport rep;
  rep.k = k;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    std::vector<const DenseFunction*> g(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
      g[static_cast<std::size_t>(i)] = (mask >> i & 1) ? &bal[static_cast<std::size_t>(i)]
                                                       : &dens[static_cast<std::size_t>(i)];
    Cplx v = (k == 3) ? lambda3(*g[0], *g[1], *g[2]) : lambda4(*g[0], *g[1], *g[2], *g[3]);
    rep.terms.push_back(ExpansionTerm{mask, v});
    rep.term_sum += v;
  }
  rep.direct = (k == 3) ? lambda3(ind[0], ind[1], ind[2]) : lambda4(ind[0], ind[1], ind[2], ind[3]);
  rep.error = std::abs(rep.term_sum - rep.direct);
  if (rep.error > 1e-9)
    throw std::logic_error("balanced_expansion_check: term sum disagrees with direct evaluation");
  return rep;
}

GvnReport gvn_check(const DenseFunction& f1, const DenseFunction& f2, const DenseFunction& f3,
                    const DenseFunction& f4) {
  for (const DenseFunction* f : {&f1, &f2, &f3, &f4})
    if (!one_bounded(*f, 1e-9))
      throw std::invalid_argument("gvn_check: inputs must be 1-bounded");

  GvnReport rep;
  rep.lambda4_abs = std::abs(lambda4(f1, f2, f3, f4));
  rep.min_u3 = gowers_norm_fast(f1, 3).value;
  for (const DenseFunction* f : {&f2, &f3, &f4})
    rep.min_u3 = std::min(rep.min_u3, gowers_norm_fast(*f, 3).value);
  rep.slack4 = rep.min_u3 - rep.lambda4_abs;

  rep.lambda3_abs = std::abs(lambda3(f1, f2, f3));
  rep.min_u2 = gowers_norm_fast(f1, 2).value;
  for (const DenseFunction* f : {&f2, &f3})
    rep.min_u2 = std::min(rep.min_u2, gowers_norm_fast(*f, 2).value);
  rep.slack3 = rep.min_u2 - rep.lambda3_abs;

  if (rep.slack4 < -1e-9 || rep.slack3 < -1e-9)
    throw std::logic_error("gvn_check: von Neumann inequality violated");
  return rep;
}

ApCensus ap_census(const std::vector<std::size_t>& members, const GroupConfig& cfg, int k) {
  if (k != 3 && k != 4) throw std::invalid_argument("ap_census: k must be 3 or 4");
  if (cfg.n > 4) throw std::invalid_argument("ap_census: restricted to n <= 4");
  std::vector<char> in(cfg.order, 0);
  for (std::size_t m : members) {
    if (m >= cfg.order) throw std::out_of_range("ap_census: member out of range");
    in[m] = 1;
  }

  ApCensus census;
  for (std::size_t d = 0; d < cfg.order; ++d) {
    const auto s = shift_map(d, cfg);
    std::uint64_t count = 0;
    for (std::size_t x = 0; x < cfg.order; ++x) {
      if (!in[x]) continue;
      std::size_t x1 = s[x], x2 = s[x1];
      if (!in[x1] || !in[x2]) continue;
      if (k == 4 && !in[s[x2]]) continue;
      ++count;
    }
    census.total += count;
    if (d != 0) census.nontrivial += count;
  }
  return census;
}

}  // namespace qf
