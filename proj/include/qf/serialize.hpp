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

#include <json.hpp>

#include "qf/decompose.hpp"
#include "qf/factors.hpp"
#include "qf/fourier.hpp"
#include "qf/quadratic.hpp"

namespace qf {

using Json = nlohmann::ordered_json;

// File formats. Functions: {"n": int, "values": [[re, im], ...]} in
// little-endian base-5 index order. Sets: {"n": int, "members": [int, ...]}.
// Certificates: {"M": [[...]], "r": [...], "corr": [re, im]}.
// Factors: {"linear": [[...], ...], "quadratics": [[[...]], ...]}.

Json function_to_json(const DenseFunction& f);
DenseFunction function_from_json(const Json& j);

Json spectrum_to_json(const Spectrum& s);

Json set_to_json(const std::vector<std::size_t>& members, const GroupConfig& cfg);
std::pair<std::vector<std::size_t>, GroupConfig> set_from_json(const Json& j);

Json certificate_to_json(const CorrelationCertificate& cert);
CorrelationCertificate certificate_from_json(const Json& j, const GroupConfig& cfg);

Json factor_to_json(const QuadraticFactor& factor);
QuadraticFactor factor_from_json(const Json& j, const GroupConfig& cfg);

Json growth_to_json(const GrowthFn& g);
GrowthFn growth_from_json(const Json& j);

Json decomposition_to_json(const Decomposition& d, bool include_functions = false);
Json bhk_to_json(const BhkReport& rep);

/// Wraps a result in the report envelope: schema version, command, config
/// echo, and deterministic metrics. Wall-clock time is attached only when
/// wall_ms >= 0 so that default reports are byte-identical across runs.
Json make_report(const std::string& command, const Json& config, const Json& result,
                 std::uint64_t evaluations, double wall_ms = -1.0);

/// Pretty-prints to path, or to stdout when path is empty.
void emit_report(const Json& report, const std::string& path);

Json load_json(const std::string& path);

}  // namespace qf
