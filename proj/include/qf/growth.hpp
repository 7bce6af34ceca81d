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

#include <cmath>
#include <stdexcept>
#include <string>

namespace qf {

/// Monotone growth functions, restricted to named presets so that serialized
/// run configs reproduce the exact function. Evaluations are clamped to avoid
/// overflow; anything past 1e300 behaves like "infinite" for our purposes.
struct GrowthFn {
  enum class Kind { kExponential, kPolynomial, kConstant, kAffine };

  Kind kind = Kind::kConstant;
  double base = 5.0;   // exponential
  double scale = 1.0;  // exponential / affine: scale * t + offset
  double power = 1.0;  // polynomial: (1 + t)^power
  double value = 1.0;  // constant / affine offset

  double operator()(double t) const {
    t = std::max(t, 0.0);
    switch (kind) {
      case Kind::kExponential: {
        double e = t * std::log(base) + std::log(scale);
        return e > 690.0 ? 1e300 : scale * std::pow(base, t);
      }
      case Kind::kPolynomial:
        return std::min(std::pow(1.0 + t, power), 1e300);
      case Kind::kConstant:
        return value;
      case Kind::kAffine:
        return scale * t + value;
    }
    return value;
  }

  static GrowthFn exponential(double base, double scale) {
    if (base <= 1.0 || scale <= 0.0) throw std::invalid_argument("GrowthFn: need base > 1, scale > 0");
    GrowthFn g;
    g.kind = Kind::kExponential;
    g.base = base;
    g.scale = scale;
    return g;
  }

  static GrowthFn polynomial(double power) {
    if (power < 0.0) throw std::invalid_argument("GrowthFn: need power >= 0");
    GrowthFn g;
    g.kind = Kind::kPolynomial;
    g.power = power;
    return g;
  }

  static GrowthFn constant(double v) {
    GrowthFn g;
    g.kind = Kind::kConstant;
    g.value = v;
    return g;
  }

  static GrowthFn affine(double scale, double offset) {
    if (scale < 0.0) throw std::invalid_argument("GrowthFn: need scale >= 0");
    GrowthFn g;
    g.kind = Kind::kAffine;
    g.scale = scale;
    g.value = offset;
    return g;
  }

  std::string describe() const {
    switch (kind) {
      case Kind::kExponential:
        return "exp(base=" + std::to_string(base) + ",scale=" + std::to_string(scale) + ")";
      case Kind::kPolynomial:
        return "poly(power=" + std::to_string(power) + ")";
      case Kind::kConstant:
        return "const(" + std::to_string(value) + ")";
      case Kind::kAffine:
        return "affine(scale=" + std::to_string(scale) + ",offset=" + std::to_string(value) + ")";
    }
    return "?";
  }
};

}  // namespace qf
