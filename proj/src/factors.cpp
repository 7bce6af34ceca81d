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

#include "qf/factors.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <unordered_map>

namespace qf {

namespace {

std::uint64_t ipow5(int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= kP;
  return r;
}

std::vector<std::uint32_t> shift_map(std::size_t d, const GroupConfig& cfg) {
  std::vector<std::uint32_t> s(cfg.order);
  for (std::size_t x = 0; x < cfg.order; ++x)
    s[x] = static_cast<std::uint32_t>(add_index(x, d, cfg));
  return s;
}

}  // namespace

QuadraticFactor make_factor(const GroupConfig& cfg, const std::vector<LinearForm>& forms,
                            const std::vector<Mat5>& mats) {
  QuadraticFactor f;
  f.cfg = cfg;
  for (const auto& r : forms) {
    if (r.size() != static_cast<std::size_t>(cfg.n))
      throw std::invalid_argument("make_factor: form of wrong dimension");
    if (std::all_of(r.begin(), r.end(), [](Residue d) { return d == 0; })) continue;
    if (in_span(r, f.linear_forms, cfg.n)) continue;
    f.linear_forms.push_back(r);
  }
  for (const auto& m : mats) {
    if (m.n != cfg.n) throw std::invalid_argument("make_factor: matrix of wrong dimension");
    Mat5 sym = symmetrize(m);
    if (sym.is_zero()) continue;
    if (std::find(f.quadratics.begin(), f.quadratics.end(), sym) != f.quadratics.end()) continue;
    f.quadratics.push_back(std::move(sym));
  }
  return f;
}

Atom atom_of(const QuadraticFactor& factor, const GroupPoint& x) {
  Atom atom;
  atom.a.reserve(factor.linear_forms.size());
  atom.b.reserve(factor.quadratics.size());
  for (const auto& r : factor.linear_forms) atom.a.push_back(dot5(r, x));
  for (const auto& m : factor.quadratics) atom.b.push_back(quad_eval(m, x));
  return atom;
}

Atom atom_of(const QuadraticFactor& factor, std::size_t x_index) {
  return atom_of(factor, index_to_point(x_index, factor.cfg));
}

std::uint32_t atom_key(const QuadraticFactor& factor, const Atom& atom) {
  if (atom.a.size() != static_cast<std::size_t>(factor.d1()) ||
      atom.b.size() != static_cast<std::size_t>(factor.d2()))
    throw std::invalid_argument("atom_key: atom shape does not match factor complexity");
  std::uint64_t key = 0, place = 1;
  for (Residue d : atom.a) {
    key += d * place;
    place *= kP;
  }
  for (Residue d : atom.b) {
    key += d * place;
    place *= kP;
  }
  return static_cast<std::uint32_t>(key);
}

std::vector<std::uint32_t> atom_keys(const QuadraticFactor& factor) {
  const GroupConfig& cfg = factor.cfg;
  std::vector<std::uint32_t> keys(cfg.order);
  for (std::size_t x = 0; x < cfg.order; ++x)
    keys[x] = atom_key(factor, atom_of(factor, x));
  return keys;
}

DenseFunction conditional_expectation(const DenseFunction& f, const QuadraticFactor& factor) {
  if (!(f.cfg == factor.cfg)) throw std::invalid_argument("conditional_expectation: config mismatch");
  const auto keys = atom_keys(factor);
  const std::size_t slots = ipow5(factor.d1() + factor.d2());
  std::vector<Cplx> sums(slots, 0.0);
  std::vector<std::uint32_t> counts(slots, 0);
  for (std::size_t x = 0; x < f.cfg.order; ++x) {
    sums[keys[x]] += f.v[x];
    ++counts[keys[x]];
  }
  DenseFunction out{f.cfg, std::vector<Cplx>(f.cfg.order)};
  for (std::size_t x = 0; x < f.cfg.order; ++x)
    out.v[x] = sums[keys[x]] / static_cast<double>(counts[keys[x]]);
  return out;
}

double energy(const DenseFunction& f, const QuadraticFactor& factor) {
  DenseFunction proj = conditional_expectation(f, factor);
  double n2 = norm_l2(proj);
  return n2 * n2;
}

QuadraticFactor join(const QuadraticFactor& fa, const QuadraticFactor& fb) {
  if (!(fa.cfg == fb.cfg)) throw std::invalid_argument("join: config mismatch");
  std::vector<LinearForm> forms = fa.linear_forms;
  forms.insert(forms.end(), fb.linear_forms.begin(), fb.linear_forms.end());
  std::vector<Mat5> mats = fa.quadratics;
  mats.insert(mats.end(), fb.quadratics.begin(), fb.quadratics.end());
  return make_factor(fa.cfg, forms, mats);
}

namespace {

Mat5 pencil_combination(const QuadraticFactor& factor, const std::vector<Residue>& lambda) {
  Mat5 u(factor.cfg.n);
  for (std::size_t j = 0; j < lambda.size(); ++j)
    if (lambda[j] != 0) u = mat_add(u, mat_scale(factor.quadratics[j], lambda[j]));
  return u;
}

// Odometer over nonzero lambda tuples in lexicographic order (lambda_1 major).
bool next_lambda(std::vector<Residue>& lambda) {
  for (std::size_t i = lambda.size(); i-- > 0;) {
    if (++lambda[i] < kP) return true;
    lambda[i] = 0;
  }
  return false;
}

}  // namespace

int factor_rank(const QuadraticFactor& factor) {
  const int d2 = factor.d2();
  if (d2 == 0) return factor.cfg.n + 1;  // "infinite" sentinel
  if (d2 > 6) throw std::invalid_argument("factor_rank: enumeration bounded at d2 <= 6");
  int best = factor.cfg.n + 1;
  std::vector<Residue> lambda(static_cast<std::size_t>(d2), 0);
  while (next_lambda(lambda))
    best = std::min(best, mat_rank(pencil_combination(factor, lambda)));
  return best;
}

QuadraticFactor rank_reduce(const QuadraticFactor& factor, const GrowthFn& omega1) {
  QuadraticFactor cur = factor;
  while (cur.d2() > 0) {
    const double threshold = omega1(cur.d1() + cur.d2());
    // first violating combination in lexicographic lambda order
    std::vector<Residue> lambda(static_cast<std::size_t>(cur.d2()), 0);
    std::optional<std::vector<Residue>> violating;
    while (next_lambda(lambda)) {
      if (mat_rank(pencil_combination(cur, lambda)) < threshold) {
        violating = lambda;
        break;
      }
    }
    if (!violating) break;  // rank >= omega1(d1 + d2)

    // normalize the last nonzero coordinate to 1 and drop that quadratic
    std::size_t k = violating->size();
    while ((*violating)[--k] == 0) {
    }
    Residue scale = inv5((*violating)[k]);
    for (Residue& l : *violating) l = mul5(l, scale);
    Mat5 u = pencil_combination(cur, *violating);

    std::vector<Mat5> mats;
    for (std::size_t j = 0; j < cur.quadratics.size(); ++j)
      if (j != k) mats.push_back(cur.quadratics[j]);
    std::vector<LinearForm> forms = cur.linear_forms;
    for (auto& row : row_space_basis(u)) forms.push_back(std::move(row));
    cur = make_factor(cur.cfg, forms, mats);
  }
  return cur;
}

AtomStatistics atom_statistics(const QuadraticFactor& factor) {
  if (factor.cfg.n > 4) throw std::invalid_argument("atom_statistics: restricted to n <= 4");
  const auto keys = atom_keys(factor);
  const std::size_t slots = ipow5(factor.d1() + factor.d2());
  std::vector<std::uint64_t> counts(slots, 0);
  for (std::uint32_t k : keys) ++counts[k];

  AtomStatistics stats;
  stats.rank = factor_rank(factor);
  stats.uniform_probability = 1.0 / static_cast<double>(slots);
  stats.tolerance = std::pow(5.0, -0.5 * stats.rank);
  const double n_inv = 1.0 / static_cast<double>(factor.cfg.order);

  for (std::size_t key = 0; key < slots; ++key) {
    if (counts[key] == 0) continue;
    AtomStat s;
    std::size_t k = key;
    for (int j = 0; j < factor.d1(); ++j) {
      s.atom.a.push_back(static_cast<Residue>(k % kP));
      k /= kP;
    }
    for (int j = 0; j < factor.d2(); ++j) {
      s.atom.b.push_back(static_cast<Residue>(k % kP));
      k /= kP;
    }
    s.size = counts[key];
    s.probability = static_cast<double>(counts[key]) * n_inv;
    s.deviation = std::abs(s.probability - stats.uniform_probability);
    s.flagged = s.deviation > stats.tolerance;
    stats.atoms.push_back(std::move(s));
  }
  return stats;
}

double ap4_atom_probability(const QuadraticFactor& factor, const std::array<Atom, 4>& atoms) {
  if (factor.cfg.n > 3) throw std::invalid_argument("ap4_atom_probability: restricted to n <= 3");
  const GroupConfig& cfg = factor.cfg;
  std::array<std::uint32_t, 4> want{};
  for (int i = 0; i < 4; ++i) want[static_cast<std::size_t>(i)] = atom_key(factor, atoms[static_cast<std::size_t>(i)]);

  const auto keys = atom_keys(factor);
  std::uint64_t hits = 0;
  for (std::size_t d = 0; d < cfg.order; ++d) {
    const auto s = shift_map(d, cfg);
    for (std::size_t x = 0; x < cfg.order; ++x) {
      if (keys[x] != want[0]) continue;
      std::size_t x1 = s[x];
      if (keys[x1] != want[1]) continue;
      std::size_t x2 = s[x1];
      if (keys[x2] != want[2]) continue;
      if (keys[s[x2]] == want[3]) ++hits;
    }
  }
  const double probability =
      static_cast<double>(hits) / static_cast<double>(cfg.order) / static_cast<double>(cfg.order);

  // Necessary constraints: a-labels in arithmetic progression, and the
  // alternating third difference b1 - 3 b2 + 3 b3 - b4 vanishing.
  bool a_ok = true;
  for (int j = 0; j < factor.d1(); ++j) {
    Residue step = sub5(atoms[1].a[static_cast<std::size_t>(j)], atoms[0].a[static_cast<std::size_t>(j)]);
    a_ok = a_ok &&
           sub5(atoms[2].a[static_cast<std::size_t>(j)], atoms[1].a[static_cast<std::size_t>(j)]) == step &&
           sub5(atoms[3].a[static_cast<std::size_t>(j)], atoms[2].a[static_cast<std::size_t>(j)]) == step;
  }
  bool b_ok = true;
  for (int j = 0; j < factor.d2(); ++j) {
    unsigned acc = atoms[0].b[static_cast<std::size_t>(j)] + 2u * atoms[1].b[static_cast<std::size_t>(j)] +
                   3u * atoms[2].b[static_cast<std::size_t>(j)] + 4u * atoms[3].b[static_cast<std::size_t>(j)];
    b_ok = b_ok && acc % kP == 0;
  }

  if (!(a_ok && b_ok)) {
    if (hits != 0)
      throw std::logic_error("ap4_atom_probability: nonzero count for a constraint-violating tuple");
    return 0.0;
  }
  const double expected = std::pow(5.0, -2.0 * factor.d1() - 3.0 * factor.d2());
  const double tol = std::pow(5.0, -0.5 * factor_rank(factor));
  if (std::abs(probability - expected) > tol + 1e-12)
    throw std::logic_error("ap4_atom_probability: deviation exceeds 5^{-rank/2}");
  return probability;
}

DenseFunction haar_on_subspace(const std::vector<GroupPoint>& basis, const GroupConfig& cfg) {
  std::vector<F5Vec> reduced = span_basis(basis, cfg.n);
  if (reduced.size() < basis.size())
    std::cerr << "haar_on_subspace: warning: dependent basis reduced from " << basis.size()
              << " to " << reduced.size() << " vectors\n";
  std::vector<std::size_t> points = span_points(reduced, cfg);
  DenseFunction mu = constant_fn(cfg, 0.0);
  const double density = static_cast<double>(cfg.order) / static_cast<double>(points.size());
  for (std::size_t p : points) mu.v[p] = density;
  return mu;
}

}  // namespace qf
