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
#include <complex>
#include <vector>

#include "qf/field.hpp"

namespace qf {

// Fourier analysis on G = F_5^n with the averaged forward transform
//   fhat(r) = E_x f(x) omega^{r.x},  omega = e^{2 pi i / 5},
// and the summed inversion f(x) = sum_r fhat(r) omega^{-r.x}. Functions on G
// carry Haar measure (expectations), functions on the dual carry counting
// measure; the norm helpers below follow that split.

using Cplx = std::complex<double>;

/// Function G -> C as a dense length-|G| array in base-5 index order.
struct DenseFunction {
  GroupConfig cfg;
  std::vector<Cplx> v;
};

/// Function on the dual group, same storage layout.
struct Spectrum {
  GroupConfig cfg;
  std::vector<Cplx> v;
};

/// The five fifth roots of unity, index k holding omega^k.
const std::array<Cplx, 5>& omega_table();

DenseFunction constant_fn(const GroupConfig& cfg, Cplx value);

/// Indicator 1_A from a list of member indices. Throws on out-of-range members.
DenseFunction indicator(const std::vector<std::size_t>& members, const GroupConfig& cfg);

/// Forward transform via n per-axis 5-point passes, O(N n).
Spectrum dft(const DenseFunction& f);

/// Inverse transform; idft(dft(f)) == f up to roundoff.
DenseFunction idft(const Spectrum& s);

/// (f*g)(x) = E_y f(y) g(x-y); the function whose transform is fhat.ghat.
DenseFunction convolve(const DenseFunction& f, const DenseFunction& g);

/// Spec_eta(f) = {r : |fhat(r)| >= eta}, eta > 0, in increasing index order.
std::vector<LinearForm> large_spectrum(const DenseFunction& f, double eta);

Cplx mean(const DenseFunction& f);
double norm_l1(const DenseFunction& f);    // E_x |f(x)|
double norm_l2(const DenseFunction& f);    // (E_x |f(x)|^2)^{1/2}
double norm_linf(const DenseFunction& f);  // max_x |f(x)|

double spec_norm_l2(const Spectrum& s);    // (sum_r |.|^2)^{1/2}
double spec_norm_l4(const Spectrum& s);    // (sum_r |.|^4)^{1/4}
double spec_norm_linf(const Spectrum& s);

bool one_bounded(const DenseFunction& f, double tol = 1e-12);

void require_same_group(const DenseFunction& a, const DenseFunction& b);

}  // namespace qf
