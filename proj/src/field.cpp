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

#include "qf/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace qf {

Residue inv5(Residue a) {
  static constexpr Residue kInv[5] = {0, 1, 3, 2, 4};
  if (a == 0 || a >= kP) throw std::domain_error("inv5: not invertible");
  return kInv[a];
}

GroupConfig make_group(int n) {
  if (n < 0 || n > 12) throw std::invalid_argument("make_group: need 0 <= n <= 12");
  GroupConfig cfg;
  cfg.n = n;
  cfg.order = 1;
  for (int i = 0; i < n; ++i) cfg.order *= kP;
  return cfg;
}

GroupPoint index_to_point(std::size_t i, const GroupConfig& cfg) {
  if (i >= cfg.order) throw std::out_of_range("index_to_point: index out of range");
  GroupPoint x(static_cast<std::size_t>(cfg.n));
  for (int j = 0; j < cfg.n; ++j) {
    x[j] = static_cast<Residue>(i % kP);
    i /= kP;
  }
  return x;
}

std::size_t point_to_index(const GroupPoint& x, const GroupConfig& cfg) {
  if (x.size() != static_cast<std::size_t>(cfg.n))
    throw std::invalid_argument("point_to_index: wrong dimension");
  std::size_t idx = 0;
  for (int j = cfg.n - 1; j >= 0; --j) {
    if (x[j] >= kP) throw std::invalid_argument("point_to_index: residue out of range");
    idx = idx * kP + x[j];
  }
  return idx;
}

std::size_t add_index(std::size_t i, std::size_t j, const GroupConfig& cfg) {
  std::size_t out = 0, place = 1;
  for (int d = 0; d < cfg.n; ++d) {
    out += ((i % kP + j % kP) % kP) * place;
    i /= kP;
    j /= kP;
    place *= kP;
  }
  return out;
}

std::size_t sub_index(std::size_t i, std::size_t j, const GroupConfig& cfg) {
  std::size_t out = 0, place = 1;
  for (int d = 0; d < cfg.n; ++d) {
    out += ((i % kP + kP - j % kP) % kP) * place;
    i /= kP;
    j /= kP;
    place *= kP;
  }
  return out;
}

std::size_t neg_index(std::size_t i, const GroupConfig& cfg) {
  return sub_index(0, i, cfg);
}

std::size_t scale_index(std::size_t i, int c, const GroupConfig& cfg) {
  int cc = ((c % kP) + kP) % kP;
  std::size_t out = 0, place = 1;
  for (int d = 0; d < cfg.n; ++d) {
    out += ((i % kP) * static_cast<std::size_t>(cc) % kP) * place;
    i /= kP;
    place *= kP;
  }
  return out;
}

Residue dot5(const F5Vec& a, const F5Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot5: dimension mismatch");
  unsigned acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += static_cast<unsigned>(a[i]) * b[i];
  return static_cast<Residue>(acc % kP);
}

Mat5 Mat5::identity(int dim) {
  Mat5 m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
  return m;
}

bool Mat5::is_zero() const {
  return std::all_of(a.begin(), a.end(), [](Residue r) { return r == 0; });
}

bool Mat5::is_symmetric() const {
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

Mat5 transpose(const Mat5& m) {
  Mat5 t(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) t.at(j, i) = m.at(i, j);
  return t;
}

Mat5 mat_add(const Mat5& x, const Mat5& y) {
  if (x.n != y.n) throw std::invalid_argument("mat_add: dimension mismatch");
  Mat5 out(x.n);
  for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] = add5(x.a[i], y.a[i]);
  return out;
}

Mat5 mat_scale(const Mat5& m, Residue c) {
  Mat5 out(m.n);
  for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] = mul5(m.a[i], c);
  return out;
}

namespace {

// Reduced row echelon form in place; returns pivot column per reduced row.
std::vector<int> rref(std::vector<F5Vec>& rows, int n) {
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int c = 0; c < n && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    Residue inv = inv5(rows[r][c]);
    for (int j = 0; j < n; ++j) rows[r][j] = mul5(rows[r][j], inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Residue factor = rows[i][c];
      for (int j = 0; j < n; ++j) rows[i][j] = sub5(rows[i][j], mul5(factor, rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

}  // namespace

int mat_rank(const Mat5& m) {
  std::vector<F5Vec> rows(static_cast<std::size_t>(m.n), F5Vec(static_cast<std::size_t>(m.n)));
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) rows[i][j] = m.at(i, j);
  return static_cast<int>(rref(rows, m.n).size());
}

Mat5 symmetrize(const Mat5& m) {
  Mat5 out(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      out.at(i, j) = mul5(3, add5(m.at(i, j), m.at(j, i)));
  return out;
}

Residue quad_eval(const Mat5& m, const GroupPoint& x) {
  if (x.size() != static_cast<std::size_t>(m.n)) throw std::invalid_argument("quad_eval: dimension mismatch");
  unsigned acc = 0;
  for (int i = 0; i < m.n; ++i) {
    if (x[i] == 0) continue;
    unsigned row = 0;
    for (int j = 0; j < m.n; ++j) row += static_cast<unsigned>(m.at(i, j)) * x[j];
    acc += static_cast<unsigned>(x[i]) * (row % kP);
  }
  return static_cast<Residue>(acc % kP);
}

std::vector<GroupPoint> null_space(const std::vector<LinearForm>& forms, const GroupConfig& cfg) {
  std::vector<F5Vec> rows;
  for (const auto& f : forms) {
    if (f.size() != static_cast<std::size_t>(cfg.n))
      throw std::invalid_argument("null_space: form of wrong dimension");
    rows.push_back(f);
  }
  std::vector<int> pivots = rref(rows, cfg.n);
  std::vector<bool> is_pivot(static_cast<std::size_t>(cfg.n), false);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;

  std::vector<GroupPoint> basis;
  for (int c = 0; c < cfg.n; ++c) {
    if (is_pivot[static_cast<std::size_t>(c)]) continue;
    GroupPoint v(static_cast<std::size_t>(cfg.n), 0);
    v[c] = 1;
    for (std::size_t r = 0; r < rows.size(); ++r)
      v[pivots[r]] = neg5(rows[r][c]);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<F5Vec> span_basis(const std::vector<F5Vec>& vectors, int n) {
  std::vector<F5Vec> rows;
  for (const auto& v : vectors) {
    if (v.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("span_basis: wrong dimension");
    rows.push_back(v);
  }
  rref(rows, n);
  return rows;
}

int rank_of(const std::vector<F5Vec>& vectors, int n) {
  return static_cast<int>(span_basis(vectors, n).size());
}

bool in_span(const F5Vec& v, const std::vector<F5Vec>& vectors, int n) {
  std::vector<F5Vec> with = vectors;
  with.push_back(v);
  return rank_of(with, n) == rank_of(vectors, n);
}

std::vector<LinearForm> row_space_basis(const Mat5& m) {
  std::vector<F5Vec> rows(static_cast<std::size_t>(m.n), F5Vec(static_cast<std::size_t>(m.n)));
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) rows[i][j] = m.at(i, j);
  rref(rows, m.n);
  return rows;
}

std::vector<std::size_t> span_points(const std::vector<GroupPoint>& basis, const GroupConfig& cfg) {
  std::vector<F5Vec> reduced = span_basis(basis, cfg.n);
  std::vector<std::size_t> points{0};
  for (const auto& b : reduced) {
    std::size_t bidx = point_to_index(b, cfg);
    std::vector<std::size_t> next;
    next.reserve(points.size() * kP);
    for (std::size_t p : points) {
      std::size_t cur = p;
      for (int c = 0; c < kP; ++c) {
        next.push_back(cur);
        cur = add_index(cur, bidx, cfg);
      }
    }
    points.swap(next);
  }
  std::sort(points.begin(), points.end());
  return points;
}

}  // namespace qf
