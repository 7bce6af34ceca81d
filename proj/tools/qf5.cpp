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

// qf5 -- quadratic Fourier analysis on F_5^n from the command line.
//
// Subcommands: ft, gowers, lambda, inverse, factor, kvn, regularity, bhk,
// verify. Reports are JSON on stdout (or --output). Exit codes: 0 success,
// 1 assertion/verification failure, 2 usage or input error.

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qf/decompose.hpp"
#include "qf/gowers.hpp"
#include "qf/progressions.hpp"
#include "qf/rng.hpp"
#include "qf/serialize.hpp"
#include "qf/verify.hpp"

namespace {

using qf::Json;

struct CommonOpts {
  int n = 2;
  std::uint64_t seed = 7;
  double delta = 0.5;
  double epsilon = 0.1;
  double eta = 0.1;
  double alpha = 0.5;
  std::string growth = "exp:5:1";
  std::string growth2;
  std::uint64_t budget = qf::kDefaultBudget;
  int threads = 1;
  std::string input;
  std::string output;
  std::string gen = "pm1";
  bool timing = false;
};

qf::GrowthFn parse_growth(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.empty()) throw std::invalid_argument("empty growth preset");
  const std::string& kind = parts[0];
  auto arg = [&](std::size_t i) { return std::stod(parts.at(i)); };
  if (kind == "exp") return qf::GrowthFn::exponential(arg(1), parts.size() > 2 ? arg(2) : 1.0);
  if (kind == "poly") return qf::GrowthFn::polynomial(arg(1));
  if (kind == "const") return qf::GrowthFn::constant(arg(1));
  if (kind == "affine") return qf::GrowthFn::affine(arg(1), parts.size() > 2 ? arg(2) : 0.0);
  throw std::invalid_argument("unknown growth preset '" + kind + "' (want exp|poly|const|affine)");
}

qf::DenseFunction load_or_generate(const CommonOpts& o) {
  if (!o.input.empty()) return qf::function_from_json(qf::load_json(o.input));
  qf::GroupConfig cfg = qf::make_group(o.n);
  qf::SplitMix64 rng(o.seed);
  if (o.gen == "pm1") return qf::random_pm1(cfg, rng);
  if (o.gen == "bounded") return qf::random_complex_bounded(cfg, rng);
  if (o.gen == "balanced") return qf::balanced(qf::random_set(cfg, o.alpha, o.seed), cfg);
  if (o.gen == "quad") {
    qf::QuadraticPhase q = qf::make_phase(qf::random_sym(cfg.n, rng), qf::random_form(cfg.n, rng));
    return qf::quad_phase_fn(q, cfg);
  }
  throw std::invalid_argument("unknown generator '" + o.gen + "' (want pm1|bounded|balanced|quad)");
}

Json config_echo(const CommonOpts& o, std::initializer_list<const char*> keys) {
  Json cfg = Json::object();
  for (const char* k : keys) {
    std::string key = k;
    if (key == "n") cfg["n"] = o.n;
    if (key == "seed") cfg["seed"] = o.seed;
    if (key == "delta") cfg["delta"] = o.delta;
    if (key == "epsilon") cfg["epsilon"] = o.epsilon;
    if (key == "eta") cfg["eta"] = o.eta;
    if (key == "alpha") cfg["alpha"] = o.alpha;
    if (key == "growth") cfg["growth"] = o.growth;
    if (key == "growth2") cfg["growth2"] = o.growth2;
    if (key == "budget") cfg["budget"] = o.budget;
    if (key == "threads") cfg["threads"] = o.threads;
    if (key == "input") cfg["input"] = o.input;
    if (key == "gen") cfg["gen"] = o.gen;
  }
  return cfg;
}

class Timer {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(clock::now() - start_).count();
  }

 private:
  using clock = std::chrono::steady_clock;
  clock::time_point start_ = clock::now();
};

void emit(const CommonOpts& o, const std::string& command, const Json& config, const Json& result,
          std::uint64_t evaluations, const Timer& timer) {
  Json report = qf::make_report(command, config, result, evaluations, o.timing ? timer.ms() : -1.0);
  qf::emit_report(report, o.output);
}

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--n", o.n, "dimension of F_5^n for generated inputs");
  cmd->add_option("--seed", o.seed, "seed for generated inputs");
  cmd->add_option("--budget", o.budget, "inner-loop evaluation budget");
  cmd->add_option("--threads", o.threads, "worker threads for the oracle search");
  cmd->add_option("--input", o.input, "input function file (JSON)");
  cmd->add_option("--output", o.output, "write the report here instead of stdout");
  cmd->add_option("--gen", o.gen, "generator when no --input: pm1|bounded|balanced|quad");
  cmd->add_option("--alpha", o.alpha, "density for generated sets");
  cmd->add_flag("--timing", o.timing, "include wall-clock metrics (breaks byte-determinism)");
}

int run_verify(const CommonOpts& o, int trials) {
  qf::VerifyOptions vo;
  vo.n = o.n;
  vo.seed = o.seed;
  vo.trials = trials;
  vo.threads = o.threads;
  std::vector<qf::InvariantResult> results = qf::run_verification(vo);

  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.module.size() + r.name.size() + 1);
  int failures = 0;
  for (const auto& r : results) {
    std::string label = r.module + "/" + r.name;
    std::cout << (r.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width) + 2)
              << label << " " << r.detail << "\n";
    if (!r.pass) ++failures;
  }
  std::cout << results.size() - static_cast<std::size_t>(failures) << "/" << results.size()
            << " invariant suites passed\n";
  if (!o.output.empty()) {
    Json rows = Json::array();
    for (const auto& r : results)
      rows.push_back(Json{{"module", r.module}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    qf::emit_report(qf::make_report("verify", Json{{"n", o.n}, {"seed", o.seed}, {"trials", trials}},
                                    rows, 0),
                    o.output);
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quadratic Fourier analysis on F_5^n"};
  app.require_subcommand(1);

  CommonOpts o;
  if (const char* env = std::getenv("QF_BUDGET")) o.budget = std::strtoull(env, nullptr, 10);

  bool ft_inverse = false;
  double ft_eta = 0.0;
  auto* ft = app.add_subcommand("ft", "Fourier transform of a function file");
  add_common(ft, o);
  ft->add_flag("--inverse", ft_inverse, "treat the input as a spectrum and invert");
  ft->add_option("--eta", ft_eta, "emit the set {r : |fhat(r)| >= eta} instead of the spectrum");

  int gowers_k = 3;
  std::string gowers_method = "both";
  auto* gowers = app.add_subcommand("gowers", "Gowers U^k norms, direct and fast");
  add_common(gowers, o);
  gowers->add_option("--k", gowers_k, "norm order, 2..4")->check(CLI::Range(2, 4));
  gowers->add_option("--method", gowers_method, "direct|fast|both");

  int lambda_k = 3;
  bool lambda_spectral = false;
  std::string lambda_weight;
  std::vector<std::string> lambda_inputs;
  auto* lambda = app.add_subcommand("lambda", "progression counting operators");
  add_common(lambda, o);
  lambda->add_option("--k", lambda_k, "progression length, 3 or 4")->check(CLI::Range(3, 4));
  lambda->add_flag("--spectral", lambda_spectral, "also evaluate the spectral formula (k=3)");
  lambda->add_option("--weight", lambda_weight, "difference-weight function file (k=4)");
  lambda->add_option("--inputs", lambda_inputs, "function files; one file is used for every slot");

  auto* inverse = app.add_subcommand("inverse", "exhaustive quadratic-phase correlation search");
  add_common(inverse, o);
  inverse->add_option("--delta", o.delta, "uniformity parameter; accept floor is delta^4/2");

  std::string factor_file;
  bool factor_stats = false, factor_rank_flag = false, factor_reduce = false;
  auto* factor = app.add_subcommand("factor", "atom statistics, rank, rank reduction");
  add_common(factor, o);
  factor->add_option("--factor", factor_file, "factor file (JSON)")->required();
  factor->add_flag("--stats", factor_stats, "atom census");
  factor->add_flag("--rank", factor_rank_flag, "factor rank");
  factor->add_flag("--rank-reduce", factor_reduce, "apply rank reduction with --growth");
  factor->add_option("--growth", o.growth, "growth preset kind:arg[:arg]");

  std::string kvn_mode = "quadratic";
  auto* kvn = app.add_subcommand("kvn", "Koopman-von Neumann decomposition");
  add_common(kvn, o);
  kvn->add_option("--delta", o.delta, "uniformity parameter");
  kvn->add_option("--mode", kvn_mode, "linear|quadratic");

  bool reg_high_rank = false;
  auto* regularity = app.add_subcommand("regularity", "arithmetic regularity decomposition");
  add_common(regularity, o);
  regularity->add_option("--delta", o.delta, "L^2 parameter");
  regularity->add_option("--growth", o.growth, "growth preset for the U^3 bound");
  regularity->add_flag("--high-rank", reg_high_rank, "also force the factor high-rank");
  regularity->add_option("--growth2", o.growth2, "U^3 growth preset in high-rank mode");

  std::string bhk_set;
  auto* bhk = app.add_subcommand("bhk", "4-AP count along a subspace difference");
  add_common(bhk, o);
  bhk->add_option("--epsilon", o.epsilon, "count defect");
  bhk->add_option("--set", bhk_set, "set file (JSON); otherwise a seeded random set");

  int verify_trials = 50;
  auto* verify = app.add_subcommand("verify", "run the full invariant suite");
  add_common(verify, o);
  verify->add_option("--trials", verify_trials, "randomized trials per suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // 0 covers --help
  }

  Timer timer;
  try {
    if (ft->parsed()) {
      if (o.input.empty()) throw std::invalid_argument("ft: --input is required");
      Json in = qf::load_json(o.input);
      Json result;
      if (ft_inverse) {
        qf::DenseFunction s = qf::function_from_json(in);
        result = qf::function_to_json(qf::idft(qf::Spectrum{s.cfg, s.v}));
      } else if (ft_eta > 0.0) {
        qf::DenseFunction f = qf::function_from_json(in);
        std::vector<std::size_t> members;
        for (const auto& r : qf::large_spectrum(f, ft_eta))
          members.push_back(qf::point_to_index(r, f.cfg));
        result = qf::set_to_json(members, f.cfg);
      } else {
        qf::DenseFunction f = qf::function_from_json(in);
        result = qf::spectrum_to_json(qf::dft(f));
      }
      // ft emits the bare file format so transforms compose
      qf::emit_report(result, o.output);
      return 0;
    }

    if (gowers->parsed()) {
      qf::DenseFunction f = load_or_generate(o);
      Json result{{"k", gowers_k}};
      std::uint64_t evals = 0;
      if (gowers_method == "direct" || gowers_method == "both") {
        qf::GowersReport r = qf::gowers_norm_direct(f, gowers_k, o.budget);
        result["direct"] = r.value;
        evals += r.cost;
      }
      if (gowers_method == "fast" || gowers_method == "both") {
        qf::GowersReport r = qf::gowers_norm_fast(f, gowers_k);
        result["fast"] = r.value;
        evals += r.cost;
      }
      if (gowers_method == "both")
        result["difference"] =
            std::abs(result["direct"].get<double>() - result["fast"].get<double>());
      else if (gowers_method != "direct" && gowers_method != "fast")
        throw std::invalid_argument("gowers: --method must be direct|fast|both");
      emit(o, "gowers", config_echo(o, {"n", "seed", "gen", "input", "budget"}), result, evals, timer);
      return 0;
    }

    if (lambda->parsed()) {
      std::vector<qf::DenseFunction> fs;
      if (lambda_inputs.empty()) {
        fs.push_back(load_or_generate(o));
      } else {
        for (const auto& path : lambda_inputs)
          fs.push_back(qf::function_from_json(qf::load_json(path)));
      }
      while (static_cast<int>(fs.size()) < lambda_k) fs.push_back(fs.front());
      Json result{{"k", lambda_k}};
      if (lambda_k == 3) {
        qf::Cplx v = qf::lambda3(fs[0], fs[1], fs[2]);
        result["direct"] = Json::array({v.real(), v.imag()});
        if (lambda_spectral) {
          qf::Cplx s = qf::lambda3_spectral(fs[0], fs[1], fs[2]);
          result["spectral"] = Json::array({s.real(), s.imag()});
          result["difference"] = std::abs(v - s);
        }
      } else {
        qf::Cplx v = lambda_weight.empty()
                         ? qf::lambda4(fs[0], fs[1], fs[2], fs[3])
                         : qf::lambda4_weighted(fs[0], fs[1], fs[2], fs[3],
                                                qf::function_from_json(qf::load_json(lambda_weight)));
        result["direct"] = Json::array({v.real(), v.imag()});
      }
      std::uint64_t evals = fs[0].cfg.order * fs[0].cfg.order;
      emit(o, "lambda", config_echo(o, {"n", "seed", "gen", "input"}), result, evals, timer);
      return 0;
    }

    if (inverse->parsed()) {
      qf::DenseFunction f = load_or_generate(o);
      qf::OracleSettings settings;
      settings.threads = o.threads;
      auto cert = qf::inverse_oracle(f, o.delta, settings);
      Json result{{"accepted", cert.has_value()},
                  {"accept_floor", qf::oracle_accept_floor(o.delta)}};
      if (cert) result["certificate"] = qf::certificate_to_json(*cert);
      std::uint64_t evals = 1;
      for (int i = 0; i < f.cfg.n * (f.cfg.n + 1) / 2; ++i) evals *= 5;
      evals *= f.cfg.order;
      emit(o, "inverse", config_echo(o, {"n", "seed", "gen", "input", "delta", "threads"}), result,
           evals, timer);
      return 0;
    }

    if (factor->parsed()) {
      qf::GroupConfig cfg = qf::make_group(o.n);
      qf::QuadraticFactor fac = qf::factor_from_json(qf::load_json(factor_file), cfg);
      Json result{{"complexity", Json::array({fac.d1(), fac.d2()})}};
      if (factor_rank_flag || factor_stats) {
        int rank = qf::factor_rank(fac);
        result["rank"] = rank;
        result["rank_infinite"] = fac.d2() == 0;
      }
      if (factor_stats) {
        qf::AtomStatistics stats = qf::atom_statistics(fac);
        Json atoms = Json::array();
        for (const auto& a : stats.atoms)
          atoms.push_back(Json{{"a", a.atom.a}, {"b", a.atom.b}, {"size", a.size},
                               {"probability", a.probability}, {"deviation", a.deviation},
                               {"flagged", a.flagged}});
        result["uniform_probability"] = stats.uniform_probability;
        result["tolerance"] = stats.tolerance;
        result["atoms"] = std::move(atoms);
      }
      if (factor_reduce) {
        qf::QuadraticFactor reduced = qf::rank_reduce(fac, parse_growth(o.growth));
        result["reduced"] = qf::factor_to_json(reduced);
        result["reduced_complexity"] = Json::array({reduced.d1(), reduced.d2()});
        result["reduced_rank"] = qf::factor_rank(reduced);
      }
      emit(o, "factor", config_echo(o, {"n", "growth"}), result, cfg.order, timer);
      return 0;
    }

    if (kvn->parsed()) {
      qf::DenseFunction f = load_or_generate(o);
      qf::DecomposeSettings settings;
      settings.oracle.threads = o.threads;
      qf::Decomposition d = kvn_mode == "linear"
                                ? qf::linear_kvn(f, o.delta)
                                : qf::quadratic_kvn(f, o.delta, qf::make_factor(f.cfg, {}, {}),
                                                    settings);
      emit(o, "kvn", config_echo(o, {"n", "seed", "gen", "input", "delta", "threads"}),
           qf::decomposition_to_json(d), f.cfg.order, timer);
      return 0;
    }

    if (regularity->parsed()) {
      qf::DenseFunction f = load_or_generate(o);
      qf::DecomposeSettings settings;
      settings.oracle.threads = o.threads;
      qf::GrowthFn g1 = parse_growth(o.growth);
      qf::Decomposition d =
          reg_high_rank
              ? qf::regularity_high_rank(f, o.delta, g1,
                                         parse_growth(o.growth2.empty() ? o.growth : o.growth2),
                                         qf::make_factor(f.cfg, {}, {}), settings)
              : qf::regularity(f, o.delta, g1, qf::make_factor(f.cfg, {}, {}), settings);
      emit(o, "regularity",
           config_echo(o, {"n", "seed", "gen", "input", "delta", "growth", "growth2", "threads"}),
           qf::decomposition_to_json(d), f.cfg.order, timer);
      return 0;
    }

    if (bhk->parsed()) {
      qf::GroupConfig cfg = qf::make_group(o.n);
      std::vector<std::size_t> set;
      if (!bhk_set.empty()) {
        auto [members, file_cfg] = qf::set_from_json(qf::load_json(bhk_set));
        set = std::move(members);
        cfg = file_cfg;
      } else {
        set = qf::random_set(cfg, o.alpha, o.seed);
      }
      qf::DecomposeSettings settings;
      settings.oracle.threads = o.threads;
      qf::BhkReport rep = qf::bhk_experiment(set, cfg, o.epsilon, settings);
      emit(o, "bhk", config_echo(o, {"n", "seed", "alpha", "epsilon", "threads"}), qf::bhk_to_json(rep),
           cfg.order * cfg.order, timer);
      return 0;
    }

    if (verify->parsed()) return run_verify(o, verify_trials);

    std::cerr << "no subcommand\n";
    return 2;
  } catch (const qf::Json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
}
