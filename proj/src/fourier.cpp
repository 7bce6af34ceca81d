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

#include "qf/fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qf {

const std::array<Cplx, 5>& omega_table() {
  static const std::array<Cplx, 5> table = [] {
    std::array<Cplx, 5> t;
    for (int k = 0; k < 5; ++k) {
      double theta = 2.0 * std::numbers::pi * k / 5.0;
      t[k] = Cplx(std::cos(theta), std::sin(theta));
    }
    return t;
  }();
  return table;
}

DenseFunction constant_fn(const GroupConfig& cfg, Cplx value) {
  return DenseFunction{cfg, std::vector<Cplx>(cfg.order, value)};
}

DenseFunction indicator(const std::vector<std::size_t>& members, const GroupConfig& cfg) {
  DenseFunction f = constant_fn(cfg, 0.0);
  for (std::size_t m : members) {
    if (m >= cfg.order) throw std::out_of_range("indicator: member out of range");
    f.v[m] = 1.0;
  }
  return f;
}

void require_same_group(const DenseFunction& a, const DenseFunction& b) {
  if (!(a.cfg == b.cfg) || a.v.size() != b.v.size())
    throw std::invalid_argument("functions bound to different groups");
}

namespace {

// One 5-point pass along every line of a fixed axis. The 5x5 kernel is a
// direct matrix multiply: kernel[r][t] = omega^{sign * r * t} * scale.
void axis_pass(std::vector<Cplx>& v, int axis, int sign, double scale) {
  const auto& w = omega_table();
  Cplx kernel[5][5];
  for (int r = 0; r < 5; ++r)
    for (int t = 0; t < 5; ++t)
      kernel[r][t] = w[static_cast<std::size_t>(((r * t) % 5 * sign % 5 + 5) % 5)] * scale;

  std::size_t stride = 1;
  for (int j = 0; j < axis; ++j) stride *= kP;
  const std::size_t block = stride * kP;

  std::vector<Cplx> line(5);
  for (std::size_t base = 0; base < v.size(); base += block) {
    for (std::size_t off = 0; off < stride; ++off) {
      std::size_t p = base + off;
      for (int t = 0; t < 5; ++t) line[static_cast<std::size_t>(t)] = v[p + static_cast<std::size_t>(t) * stride];
      for (int r = 0; r < 5; ++r) {
        Cplx acc = 0.0;
        for (int t = 0; t < 5; ++t) acc += kernel[r][t] * line[static_cast<std::size_t>(t)];
        v[p + static_cast<std::size_t>(r) * stride] = acc;
      }
    }
  }
}

}  // namespace

Spectrum dft(const DenseFunction& f) {
  Spectrum s{f.cfg, f.v};
  for (int axis = 0; axis < f.cfg.n; ++axis) axis_pass(s.v, axis, +1, 1.0 / kP);
  return s;
}

DenseFunction idft(const Spectrum& s) {
  DenseFunction f{s.cfg, s.v};
  for (int axis = 0; axis < s.cfg.n; ++axis) axis_pass(f.v, axis, -1, 1.0);
  return f;
}

DenseFunction convolve(const DenseFunction& f, const DenseFunction& g) {
  require_same_group(f, g);
  Spectrum fs = dft(f);
  Spectrum gs = dft(g);
  for (std::size_t i = 0; i < fs.v.size(); ++i) fs.v[i] *= gs.v[i];
  return idft(fs);
}

std::vector<LinearForm> large_spectrum(const DenseFunction& f, double eta) {
  if (eta <= 0) throw std::invalid_argument("large_spectrum: eta must be positive");
  Spectrum s = dft(f);
  std::vector<LinearForm> out;
  for (std::size_t r = 0; r < s.v.size(); ++r)
    if (std::abs(s.v[r]) >= eta) out.push_back(index_to_point(r, f.cfg));
  return out;
}

Cplx mean(const DenseFunction& f) {
  Cplx acc = 0.0;
  for (const Cplx& z : f.v) acc += z;
  return acc / static_cast<double>(f.cfg.order);
}

double norm_l1(const DenseFunction& f) {
  double acc = 0.0;
  for (const Cplx& z : f.v) acc += std::abs(z);
  return acc / static_cast<double>(f.cfg.order);
}

double norm_l2(const DenseFunction& f) {
  double acc = 0.0;
  for (const Cplx& z : f.v) acc += std::norm(z);
  return std::sqrt(acc / static_cast<double>(f.cfg.order));
}

double norm_linf(const DenseFunction& f) {
  double m = 0.0;
  for (const Cplx& z : f.v) m = std::max(m, std::abs(z));
  return m;
}

double spec_norm_l2(const Spectrum& s) {
  double acc = 0.0;
  for (const Cplx& z : s.v) acc += std::norm(z);
  return std::sqrt(acc);
}

double spec_norm_l4(const Spectrum& s) {
  double acc = 0.0;
  for (const Cplx& z : s.v) {
    double n2 = std::norm(z);
    acc += n2 * n2;
  }
  return std::pow(acc, 0.25);
}

double spec_norm_linf(const Spectrum& s) {
  double m = 0.0;
  for (const Cplx& z : s.v) m = std::max(m, std::abs(z));
  return m;
}

bool one_bounded(const DenseFunction& f, double tol) {
  return norm_linf(f) <= 1.0 + tol;
}

}  // namespace qf
