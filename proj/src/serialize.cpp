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

#include "qf/serialize.hpp"

#include <fstream>
#include <iostream>
#include <stdexcept>

namespace qf {

namespace {

Json complex_to_json(const Cplx& z) { return Json::array({z.real(), z.imag()}); }

Cplx complex_from_json(const Json& j) {
  return Cplx(j.at(0).get<double>(), j.at(1).get<double>());
}

Json values_to_json(const std::vector<Cplx>& v) {
  Json arr = Json::array();
  for (const Cplx& z : v) arr.push_back(complex_to_json(z));
  return arr;
}

Json mat_to_json(const Mat5& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.n; ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.n; ++j) row.push_back(static_cast<int>(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat5 mat_from_json(const Json& j) {
  Mat5 m(static_cast<int>(j.size()));
  for (int i = 0; i < m.n; ++i)
    for (int c = 0; c < m.n; ++c) m.at(i, c) = static_cast<Residue>(j.at(i).at(c).get<int>() % kP);
  return m;
}

Json vec_to_json(const F5Vec& v) {
  Json arr = Json::array();
  for (Residue d : v) arr.push_back(static_cast<int>(d));
  return arr;
}

F5Vec vec_from_json(const Json& j) {
  F5Vec v;
  for (const auto& d : j) v.push_back(static_cast<Residue>(d.get<int>() % kP));
  return v;
}

}  // namespace

Json function_to_json(const DenseFunction& f) {
  return Json{{"n", f.cfg.n}, {"values", values_to_json(f.v)}};
}

DenseFunction function_from_json(const Json& j) {
  GroupConfig cfg = make_group(j.at("n").get<int>());
  const Json& vals = j.at("values");
  if (vals.size() != cfg.order)
    throw std::invalid_argument("function_from_json: expected 5^n values");
  DenseFunction f{cfg, std::vector<Cplx>(cfg.order)};
  for (std::size_t i = 0; i < cfg.order; ++i) f.v[i] = complex_from_json(vals.at(i));
  return f;
}

Json spectrum_to_json(const Spectrum& s) {
  return Json{{"n", s.cfg.n}, {"values", values_to_json(s.v)}};
}

Json set_to_json(const std::vector<std::size_t>& members, const GroupConfig& cfg) {
  Json arr = Json::array();
  for (std::size_t m : members) arr.push_back(m);
  return Json{{"n", cfg.n}, {"members", std::move(arr)}};
}

std::pair<std::vector<std::size_t>, GroupConfig> set_from_json(const Json& j) {
  GroupConfig cfg = make_group(j.at("n").get<int>());
  std::vector<std::size_t> members;
  for (const auto& m : j.at("members")) {
    std::size_t idx = m.get<std::size_t>();
    if (idx >= cfg.order) throw std::invalid_argument("set_from_json: member out of range");
    members.push_back(idx);
  }
  return {std::move(members), cfg};
}

Json certificate_to_json(const CorrelationCertificate& cert) {
  return Json{{"M", mat_to_json(cert.phase.m)},
              {"r", vec_to_json(cert.phase.r)},
              {"corr", complex_to_json(cert.correlation)},
              {"magnitude", cert.magnitude}};
}

CorrelationCertificate certificate_from_json(const Json& j, const GroupConfig& cfg) {
  QuadraticPhase q = make_phase(mat_from_json(j.at("M")), vec_from_json(j.at("r")));
  if (q.m.n != cfg.n) throw std::invalid_argument("certificate_from_json: dimension mismatch");
  Cplx corr = complex_from_json(j.at("corr"));
  return CorrelationCertificate{std::move(q), corr, std::abs(corr)};
}

Json factor_to_json(const QuadraticFactor& factor) {
  Json linear = Json::array();
  for (const auto& r : factor.linear_forms) linear.push_back(vec_to_json(r));
  Json quads = Json::array();
  for (const auto& m : factor.quadratics) quads.push_back(mat_to_json(m));
  return Json{{"linear", std::move(linear)}, {"quadratics", std::move(quads)}};
}

QuadraticFactor factor_from_json(const Json& j, const GroupConfig& cfg) {
  std::vector<LinearForm> forms;
  for (const auto& r : j.at("linear")) forms.push_back(vec_from_json(r));
  std::vector<Mat5> mats;
  for (const auto& m : j.at("quadratics")) mats.push_back(mat_from_json(m));
  return make_factor(cfg, forms, mats);
}

Json growth_to_json(const GrowthFn& g) {
  switch (g.kind) {
    case GrowthFn::Kind::kExponential:
      return Json{{"preset", "exp"}, {"base", g.base}, {"scale", g.scale}};
    case GrowthFn::Kind::kPolynomial:
      return Json{{"preset", "poly"}, {"power", g.power}};
    case GrowthFn::Kind::kConstant:
      return Json{{"preset", "const"}, {"value", g.value}};
    case GrowthFn::Kind::kAffine:
      return Json{{"preset", "affine"}, {"scale", g.scale}, {"offset", g.value}};
  }
  throw std::logic_error("growth_to_json: unknown preset");
}

GrowthFn growth_from_json(const Json& j) {
  const std::string preset = j.at("preset").get<std::string>();
  if (preset == "exp") return GrowthFn::exponential(j.at("base").get<double>(), j.at("scale").get<double>());
  if (preset == "poly") return GrowthFn::polynomial(j.at("power").get<double>());
  if (preset == "const") return GrowthFn::constant(j.at("value").get<double>());
  if (preset == "affine") return GrowthFn::affine(j.at("scale").get<double>(), j.at("offset").get<double>());
  throw std::invalid_argument("growth_from_json: unknown preset " + preset);
}

Json decomposition_to_json(const Decomposition& d, bool include_functions) {
  Json j{{"factor", factor_to_json(d.factor)},
         {"complexity", Json::array({d.factor.d1(), d.factor.d2()})},
         {"iterations", d.iterations},
         {"delta", d.delta},
         {"accept_floor", oracle_accept_floor(d.delta)},
         {"increment_floor", d.increment_floor},
         {"energy_history", d.energy_history},
         {"step_floors", d.step_floors},
         {"f2_norm", d.f2_norm},
         {"f2_bound", d.f2_bound}};
  if (d.f3) {
    j["f3_norm"] = d.f3_norm;
    j["f3_bound"] = d.f3_bound;
  }
  if (!d.round_deltas.empty()) j["round_deltas"] = d.round_deltas;
  Json certs = Json::array();
  for (const auto& c : d.certificates) certs.push_back(certificate_to_json(c));
  j["certificates"] = std::move(certs);
  if (include_functions) {
    j["f1"] = function_to_json(d.f1);
    j["f2"] = function_to_json(d.f2);
    if (d.f3) j["f3"] = function_to_json(*d.f3);
  }
  return j;
}

Json bhk_to_json(const BhkReport& rep) {
  Json terms = Json::array();
  for (const auto& t : rep.terms) {
    terms.push_back(Json{{"pattern", t.pattern},
                         {"value", complex_to_json(t.value)},
                         {"bound", t.bound},
                         {"bound_ok", t.bound_ok},
                         {"bound_vacuous", t.bound_vacuous}});
  }
  return Json{{"alpha", rep.alpha},
              {"epsilon", rep.epsilon},
              {"delta", rep.delta},
              {"omega1", growth_to_json(rep.omega1)},
              {"omega2", growth_to_json(rep.omega2)},
              {"decomposition", decomposition_to_json(rep.decomposition)},
              {"factor_rank", rep.factor_rank_value},
              {"h_dim", rep.h_dim},
              {"weighted_count", rep.weighted_count},
              {"terms", std::move(terms)},
              {"term_sum_error", rep.term_sum_error},
              {"f2_l2", rep.f2_l2},
              {"f3_u3", rep.f3_u3},
              {"main_term", rep.main_term},
              {"main_term_target", rep.main_term_target},
              {"config_mean", rep.config_mean},
              {"config_mean_error_bound", rep.config_mean_error_bound},
              {"config_mean_bound_vacuous", rep.config_mean_bound_vacuous},
              {"count_inequality_ran", rep.count_inequality_ran},
              {"count_inequality",
               Json{{"lhs", rep.count_inequality.lhs},
                    {"rhs", rep.count_inequality.rhs},
                    {"lhs_fourier", rep.count_inequality.lhs_fourier}}},
              {"main_term_config_average", rep.main_term_config_average},
              {"main_term_config_gap", rep.main_term_config_gap},
              {"main_term_config_error_bound", rep.main_term_config_error_bound},
              {"main_term_config_bound_vacuous", rep.main_term_config_bound_vacuous},
              {"fallback", rep.fallback},
              {"witness_d", rep.witness_d},
              {"witness_count", rep.witness_count},
              {"required_count", rep.required_count},
              {"witness_ok", rep.witness_ok}};
}

Json make_report(const std::string& command, const Json& config, const Json& result,
                 std::uint64_t evaluations, double wall_ms) {
  Json metrics{{"evaluations", evaluations}};
  if (wall_ms >= 0.0) metrics["wall_ms"] = wall_ms;
  return Json{{"schema", "qf5-report/1"},
              {"command", command},
              {"config", config},
              {"result", result},
              {"metrics", std::move(metrics)}};
}

void emit_report(const Json& report, const std::string& path) {
  if (path.empty()) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_report: cannot write " + path);
  out << report.dump(2) << "\n";
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("load_json: cannot read " + path);
  Json j;
  in >> j;
  return j;
}

}  // namespace qf
