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

#include "qf/gowers.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qf {

namespace {

constexpr double kImagSlack = 1e-9;

// Pairwise index sums, built once per call for the definitional loops.
// Only needed at desk scale (the budget refuses anything larger).
std::vector<std::uint32_t> addition_table(const GroupConfig& cfg) {
  const std::size_t n = cfg.order;
  std::vector<std::uint32_t> t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      t[i * n + j] = static_cast<std::uint32_t>(add_index(i, j, cfg));
  return t;
}

double real_part_checked(Cplx z, const char* what) {
  if (std::abs(z.imag()) > kImagSlack)
    throw std::logic_error(std::string(what) + ": average has non-negligible imaginary part");
  return z.real();
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// 2^k-th power of the U^k norm, fast route.
double gowers_pow_fast(const DenseFunction& f, int k, std::uint64_t& cost) {
  if (k == 2) {
    Spectrum s = dft(f);
    double acc = 0.0;
    for (const Cplx& z : s.v) {
      double n2 = std::norm(z);
      acc += n2 * n2;
    }
    cost += f.cfg.order * static_cast<std::uint64_t>(f.cfg.n + 1);
    return acc;
  }
  // E_h ||D(f;h)||_{U^{k-1}}^{2^{k-1}}, h in fixed index order.
  double acc = 0.0;
  for (std::size_t h = 0; h < f.cfg.order; ++h)
    acc += gowers_pow_fast(derivative(f, h), k - 1, cost);
  return acc / static_cast<double>(f.cfg.order);
}

}  // namespace

DenseFunction derivative(const DenseFunction& f, std::size_t h_index) {
  DenseFunction d{f.cfg, std::vector<Cplx>(f.cfg.order)};
  for (std::size_t x = 0; x < f.cfg.order; ++x)
    d.v[x] = f.v[x] * std::conj(f.v[sub_index(x, h_index, f.cfg)]);
  return d;
}

DenseFunction derivative(const DenseFunction& f, const GroupPoint& h) {
  return derivative(f, point_to_index(h, f.cfg));
}

GowersReport gowers_norm_direct(const DenseFunction& f, int k, std::uint64_t budget) {
  if (k < 2 || k > 4) throw std::invalid_argument("gowers_norm_direct: k must be 2, 3 or 4");
  const std::size_t n = f.cfg.order;
  const std::uint64_t evals = ipow(n, k + 1);
  if (evals > budget)
    throw std::invalid_argument("gowers_norm_direct: cost " + std::to_string(evals) +
                                " exceeds budget " + std::to_string(budget));

  const auto add = addition_table(f.cfg);
  const int verts = 1 << k;
  std::vector<std::size_t> offset(static_cast<std::size_t>(verts), 0);
  std::vector<std::size_t> h(static_cast<std::size_t>(k), 0);

  Cplx total = 0.0;
  bool more = true;
  while (more) {
    // offsets w.h for every vertex of the current h-cube
    for (int m = 1; m < verts; ++m) {
      int low = std::countr_zero(static_cast<unsigned>(m));
      offset[static_cast<std::size_t>(m)] =
          add[offset[static_cast<std::size_t>(m & (m - 1))] * n + h[static_cast<std::size_t>(low)]];
    }
    for (std::size_t x = 0; x < n; ++x) {
      Cplx prod = 1.0;
      for (int m = 0; m < verts; ++m) {
        Cplx val = f.v[add[x * n + offset[static_cast<std::size_t>(m)]]];
        prod *= (std::popcount(static_cast<unsigned>(m)) & 1) ? std::conj(val) : val;
      }
      total += prod;
    }
    // odometer over (h_1,...,h_k)
    more = false;
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (++h[i] < n) {
        more = true;
        break;
      }
      h[i] = 0;
    }
  }

  double avg = real_part_checked(total / static_cast<double>(ipow(n, k + 1)), "gowers_norm_direct");
  double value = std::pow(std::max(avg, 0.0), 1.0 / static_cast<double>(verts));
  return GowersReport{k, value, GowersMethod::kDirect, evals};
}

GowersReport gowers_norm_fast(const DenseFunction& f, int k) {
  if (k < 2 || k > 4) throw std::invalid_argument("gowers_norm_fast: k must be 2, 3 or 4");
  std::uint64_t cost = 0;
  double p = gowers_pow_fast(f, k, cost);
  double value = std::pow(std::max(p, 0.0), 1.0 / static_cast<double>(1 << k));
  return GowersReport{k, value, GowersMethod::kFast, cost};
}

namespace {

// Spectral box evaluation of the k = 2 inner product:
//   <f_00,f_01,f_10,f_11> = sum_r fhat_00 fhat_11 conj(fhat_01 fhat_10).
Cplx box_inner_k2(const Spectrum& s0, const Spectrum& s1, const Spectrum& s2, const Spectrum& s3) {
  Cplx acc = 0.0;
  for (std::size_t r = 0; r < s0.v.size(); ++r)
    acc += s0.v[r] * s3.v[r] * std::conj(s1.v[r] * s2.v[r]);
  return acc;
}

Cplx gowers_inner_box(std::span<const DenseFunction> fs, int k) {
  if (k == 2) {
    return box_inner_k2(dft(fs[0]), dft(fs[1]), dft(fs[2]), dft(fs[3]));
  }
  // Pair vertices across h_3: g_m(y) = f_m(y) conj(f_{m|4}(y + h3)), then
  // average the k = 2 box value over h3.
  const GroupConfig& cfg = fs[0].cfg;
  Cplx acc = 0.0;
  for (std::size_t h3 = 0; h3 < cfg.order; ++h3) {
    std::array<Spectrum, 4> ghat;
    for (int m = 0; m < 4; ++m) {
      DenseFunction g{cfg, std::vector<Cplx>(cfg.order)};
      const auto& base = fs[static_cast<std::size_t>(m)].v;
      const auto& top = fs[static_cast<std::size_t>(m | 4)].v;
      for (std::size_t y = 0; y < cfg.order; ++y)
        g.v[y] = base[y] * std::conj(top[add_index(y, h3, cfg)]);
      ghat[static_cast<std::size_t>(m)] = dft(g);
    }
    acc += box_inner_k2(ghat[0], ghat[1], ghat[2], ghat[3]);
  }
  return acc / static_cast<double>(cfg.order);
}

}  // namespace

Cplx gowers_inner_product(std::span<const DenseFunction> fs, int k, std::uint64_t budget) {
  if (k < 2 || k > 4) throw std::invalid_argument("gowers_inner_product: k must be 2, 3 or 4");
  if (fs.size() != (1u << k))
    throw std::invalid_argument("gowers_inner_product: need exactly 2^k functions");
  for (const auto& f : fs) require_same_group(fs[0], f);

  const std::size_t n = fs[0].cfg.order;
  const std::uint64_t evals = ipow(n, k + 1);
  if (evals > budget) {
    if (k > 3)
      throw std::invalid_argument("gowers_inner_product: cost " + std::to_string(evals) +
                                  " exceeds budget and no box path exists for k = 4");
    return gowers_inner_box(fs, k);
  }

  const auto add = addition_table(fs[0].cfg);
  const int verts = 1 << k;
  std::vector<std::size_t> offset(static_cast<std::size_t>(verts), 0);
  std::vector<std::size_t> h(static_cast<std::size_t>(k), 0);

  Cplx total = 0.0;
  bool more = true;
  while (more) {
    for (int m = 1; m < verts; ++m) {
      int low = std::countr_zero(static_cast<unsigned>(m));
      offset[static_cast<std::size_t>(m)] =
          add[offset[static_cast<std::size_t>(m & (m - 1))] * n + h[static_cast<std::size_t>(low)]];
    }
    for (std::size_t x = 0; x < n; ++x) {
      Cplx prod = 1.0;
      for (int m = 0; m < verts; ++m) {
        Cplx val = fs[static_cast<std::size_t>(m)].v[add[x * n + offset[static_cast<std::size_t>(m)]]];
        prod *= (std::popcount(static_cast<unsigned>(m)) & 1) ? std::conj(val) : val;
      }
      total += prod;
    }
    more = false;
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (++h[i] < n) {
        more = true;
        break;
      }
      h[i] = 0;
    }
  }
  return total / static_cast<double>(ipow(n, k + 1));
}

SamorodnitskySides samorodnitsky_sides(const DenseFunction& f) {
  if (f.cfg.n > 2)
    throw std::invalid_argument("samorodnitsky_sides: restricted to n <= 2 (cost grows as N^4)");
  const GroupConfig& cfg = f.cfg;
  const std::size_t n = cfg.order;

  // rhs = E_h ||D(f;h)^||_8^8, and per-h ingredients for the lhs:
  // g_h = D(f;h) * D(f;h)~ with f~(x) = conj(f(-x)), so ghat_h = |D(f;h)^|^2.
  std::vector<DenseFunction> g;
  g.reserve(n);
  double rhs = 0.0;
  for (std::size_t h = 0; h < n; ++h) {
    DenseFunction d = derivative(f, h);
    Spectrum dhat = dft(d);
    double p8 = 0.0;
    for (const Cplx& z : dhat.v) {
      double n2 = std::norm(z);
      p8 += n2 * n2 * n2 * n2;
    }
    rhs += p8;

    DenseFunction rev{cfg, std::vector<Cplx>(n)};
    for (std::size_t x = 0; x < n; ++x) rev.v[x] = std::conj(d.v[neg_index(x, cfg)]);
    g.push_back(convolve(d, rev));
  }
  rhs /= static_cast<double>(n);

  // lhs = E_{h1+h2=h3+h4} E_x g_{h1} g_{h2} conj(g_{h3} g_{h4}).
  Cplx lhs = 0.0;
  for (std::size_t h1 = 0; h1 < n; ++h1)
    for (std::size_t h2 = 0; h2 < n; ++h2) {
      std::size_t s = add_index(h1, h2, cfg);
      for (std::size_t h3 = 0; h3 < n; ++h3) {
        std::size_t h4 = sub_index(s, h3, cfg);
        Cplx inner = 0.0;
        for (std::size_t x = 0; x < n; ++x)
          inner += g[h1].v[x] * g[h2].v[x] * std::conj(g[h3].v[x] * g[h4].v[x]);
        lhs += inner / static_cast<double>(n);
      }
    }
  lhs /= static_cast<double>(n * n * n);

  return SamorodnitskySides{real_part_checked(lhs, "samorodnitsky lhs"), rhs};
}

}  // namespace qf
