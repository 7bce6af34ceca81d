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

#include <string>
#include <vector>

#include "qf/quadratic.hpp"

namespace qf {

struct VerifyOptions {
  int n = 2;                // working dimension (capped per suite where needed)
  std::uint64_t seed = 7;   // base seed; suites derive sub-seeds from it
  int trials = 50;          // randomized trials per suite
  int threads = 1;
};

struct InvariantResult {
  std::string module;
  std::string name;
  bool pass = false;
  std::string detail;  // worst error, counts, or the failure message
};

/// Runs every module's invariant suite at the requested scale.
std::vector<InvariantResult> run_verification(const VerifyOptions& options);

}  // namespace qf
