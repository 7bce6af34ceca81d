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

#include "qf/verify.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "qf/decompose.hpp"
#include "qf/factors.hpp"
#include "qf/gowers.hpp"
#include "qf/progressions.hpp"
#include "qf/rng.hpp"
#include "qf/serialize.hpp"

namespace qf {

namespace {

void expect(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

// Direct O(N^2) transform, the independent oracle for the per-axis passes.
Spectrum dft_direct(const DenseFunction& f) {
  const auto& w = omega_table();
  Spectrum s{f.cfg, std::vector<Cplx>(f.cfg.order, 0.0)};
  std::vector<GroupPoint> pts(f.cfg.order);
  for (std::size_t i = 0; i < f.cfg.order; ++i) pts[i] = index_to_point(i, f.cfg);
  for (std::size_t r = 0; r < f.cfg.order; ++r) {
    Cplx acc = 0.0;
    for (std::size_t x = 0; x < f.cfg.order; ++x) acc += f.v[x] * w[dot5(pts[r], pts[x])];
    s.v[r] = acc / static_cast<double>(f.cfg.order);
  }
  return s;
}

double max_abs_diff(const std::vector<Cplx>& a, const std::vector<Cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

DenseFunction scale_fn(const DenseFunction& f, Cplx c) {
  DenseFunction out = f;
  for (Cplx& z : out.v) z *= c;
  return out;
}

DenseFunction add_fn(const DenseFunction& a, const DenseFunction& b) {
  DenseFunction out = a;
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] += b.v[i];
  return out;
}

struct Suite {
  std::vector<InvariantResult> results;

  void run(const std::string& module, const std::string& name,
           const std::function<std::string()>& body) {
    InvariantResult r{module, name, false, ""};
    try {
      r.detail = body();
      r.pass = true;
    } catch (const std::exception& e) {
      r.detail = e.what();
    }
    results.push_back(std::move(r));
  }
};

}  // namespace

std::vector<InvariantResult> run_verification(const VerifyOptions& opt) {
  Suite suite;
  const int trials = std::max(1, opt.trials);
  DecomposeSettings dec;
  dec.oracle.threads = opt.threads;

  // ---- field-core -------------------------------------------------------
  suite.run("field-core", "rank-transpose", [&] {
    SplitMix64 rng(opt.seed ^ 0x11);
    for (int t = 0; t < trials; ++t) {
      int n = 1 + static_cast<int>(rng.next() % 4);
      Mat5 m = random_mat(n, rng);
      expect(mat_rank(m) == mat_rank(transpose(m)), "rank(M) != rank(M^T)");
    }
    return std::to_string(trials) + " random matrices, n <= 4";
  });

  suite.run("field-core", "nullspace-dimension", [&] {
    SplitMix64 rng(opt.seed ^ 0x12);
    for (int t = 0; t < trials; ++t) {
      int n = 1 + static_cast<int>(rng.next() % 4);
      GroupConfig cfg = make_group(n);
      std::vector<LinearForm> forms;
      int count = static_cast<int>(rng.next() % 5);
      for (int i = 0; i < count; ++i) forms.push_back(random_form(n, rng));
      int dim = static_cast<int>(null_space(forms, cfg).size());
      expect(dim + rank_of(forms, n) == n, "dim ker + rank != n");
    }
    return std::to_string(trials) + " random systems, n <= 4";
  });

  suite.run("field-core", "index-roundtrip", [&] {
    for (int n = 0; n <= 5; ++n) {
      GroupConfig cfg = make_group(n);
      for (std::size_t i = 0; i < cfg.order; ++i)
        expect(point_to_index(index_to_point(i, cfg), cfg) == i, "roundtrip failed");
    }
    return "all indices, n <= 5";
  });

  // ---- fourier ----------------------------------------------------------
  const int nf = std::min(std::max(opt.n, 1), 4);
  const double ftol = nf <= 3 ? 1e-10 : 1e-9;
  GroupConfig gf = make_group(nf);

  suite.run("fourier", "parseval", [&] {
    SplitMix64 rng(opt.seed ^ 0x21);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      DenseFunction f = random_complex_bounded(gf, rng);
      DenseFunction g = random_complex_bounded(gf, rng);
      Spectrum fs = dft(f), gs = dft(g);
      Cplx lhs = 0.0, rhs = 0.0;
      for (std::size_t i = 0; i < gf.order; ++i) lhs += f.v[i] * std::conj(g.v[i]);
      lhs /= static_cast<double>(gf.order);
      for (std::size_t i = 0; i < gf.order; ++i) rhs += fs.v[i] * std::conj(gs.v[i]);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    expect(worst < ftol, "Parseval residual " + fmt(worst));
    return "max residual " + fmt(worst);
  });

  suite.run("fourier", "plancherel-l2", [&] {
    SplitMix64 rng(opt.seed ^ 0x22);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      DenseFunction f = random_complex_bounded(gf, rng);
      worst = std::max(worst, std::abs(norm_l2(f) - spec_norm_l2(dft(f))));
    }
    expect(worst < ftol, "norm mismatch " + fmt(worst));
    return "max residual " + fmt(worst);
  });

  suite.run("fourier", "coefficient-l1-bound", [&] {
    SplitMix64 rng(opt.seed ^ 0x23);
    for (int t = 0; t < trials; ++t) {
      DenseFunction f = random_complex_bounded(gf, rng);
      double l1 = norm_l1(f);
      expect(spec_norm_linf(dft(f)) <= l1 + 1e-12, "|fhat| > ||f||_1");
    }
    return std::to_string(trials) + " trials";
  });

  suite.run("fourier", "fast-equals-direct-dft", [&] {
    SplitMix64 rng(opt.seed ^ 0x24);
    double worst = 0.0;
    GroupConfig cfg = make_group(std::min(nf, 3));
    for (int t = 0; t < trials; ++t) {
      DenseFunction f = random_complex_bounded(cfg, rng);
      worst = std::max(worst, max_abs_diff(dft(f).v, dft_direct(f).v));
    }
    expect(worst < 1e-10, "per-axis vs direct " + fmt(worst));
    return "max residual " + fmt(worst);
  });

  // ---- gowers -----------------------------------------------------------
  const GroupConfig g2 = make_group(std::min(opt.n, 2));

  suite.run("gowers", "norm-triangle", [&] {
    SplitMix64 rng(opt.seed ^ 0x31);
    for (int t = 0; t < trials; ++t)
      for (int k = 2; k <= 3; ++k) {
        DenseFunction f = random_complex_bounded(g2, rng);
        DenseFunction g = random_complex_bounded(g2, rng);
        double sum = gowers_norm_fast(add_fn(f, g), k).value;
        expect(sum <= gowers_norm_fast(f, k).value + gowers_norm_fast(g, k).value + 1e-9,
               "triangle inequality violated at k=" + std::to_string(k));
      }
    return std::to_string(trials) + " pairs, k in {2,3}";
  });

  suite.run("gowers", "norm-homogeneity", [&] {
    SplitMix64 rng(opt.seed ^ 0x32);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t)
      for (int k = 2; k <= 3; ++k) {
        DenseFunction f = random_complex_bounded(g2, rng);
        Cplx c(rng.next_signed(), rng.next_signed());
        double lhs = gowers_norm_fast(scale_fn(f, c), k).value;
        double rhs = std::abs(c) * gowers_norm_fast(f, k).value;
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    expect(worst < 1e-9, "homogeneity residual " + fmt(worst));
    return "max residual " + fmt(worst);
  });

  suite.run("gowers", "norm-nesting", [&] {
    SplitMix64 rng(opt.seed ^ 0x33);
    for (int t = 0; t < trials; ++t) {
      DenseFunction f = random_complex_bounded(g2, rng);
      expect(gowers_norm_fast(f, 2).value <= gowers_norm_fast(f, 3).value + 1e-9,
             "U^2 > U^3");
    }
    return std::to_string(trials) + " trials";
  });

  suite.run("gowers", "strict-nesting-witness", [&] {
    for (int n = 1; n <= 3; ++n) {
      GroupConfig cfg = make_group(n);
      QuadraticPhase q = make_phase(Mat5::identity(n), LinearForm(static_cast<std::size_t>(n), 0));
      DenseFunction f = quad_phase_fn(q, cfg);
      double u3 = gowers_norm_fast(f, 3).value;
      double u2 = gowers_norm_fast(f, 2).value;
      expect(std::abs(u3 - 1.0) < 1e-9, "U^3 != 1 at n=" + std::to_string(n));
      expect(std::abs(u2 - std::pow(5.0, -0.25 * n)) < 1e-9, "U^2 != 5^{-n/4}");
    }
    return "U^3 = 1, U^2 = 5^{-n/4}, n <= 3";
  });

  suite.run("gowers", "gowers-cauchy-schwarz", [&] {
    SplitMix64 rng(opt.seed ^ 0x34);
    int reps = std::max(1, trials / 5);
    for (int t = 0; t < reps; ++t)
      for (int k = 2; k <= 3; ++k) {
        std::vector<DenseFunction> fs;
        double prod = 1.0;
        for (int m = 0; m < (1 << k); ++m) {
          fs.push_back(random_complex_bounded(g2, rng));
          prod *= gowers_norm_fast(fs.back(), k).value;
        }
        Cplx ip = gowers_inner_product(fs, k);
        expect(std::abs(ip) <= prod + 1e-9, "GCS violated at k=" + std::to_string(k));
      }
    return std::to_string(reps) + " tuples, k in {2,3}";
  });

  suite.run("gowers", "fast-equals-direct", [&] {
    SplitMix64 rng(opt.seed ^ 0x35);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t)
      for (int n = 1; n <= 2; ++n)
        for (int k = 2; k <= 3; ++k) {
          GroupConfig cfg = make_group(n);
          DenseFunction f = random_complex_bounded(cfg, rng);
          worst = std::max(worst, std::abs(gowers_norm_fast(f, k).value -
                                           gowers_norm_direct(f, k).value));
        }
    expect(worst < 1e-9, "fast vs direct " + fmt(worst));
    return "max residual " + fmt(worst);
  });

  suite.run("gowers", "u3-derivative-spectra", [&] {
    SplitMix64 rng(opt.seed ^ 0x36);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      DenseFunction f = random_complex_bounded(g2, rng);
      double u3p8 = std::pow(gowers_norm_fast(f, 3).value, 8.0);
      double rhs = 0.0;
      for (std::size_t h = 0; h < g2.order; ++h) {
        Spectrum s = dft(derivative(f, h));
        for (const Cplx& z : s.v) {
          double n2 = std::norm(z);
          rhs += n2 * n2;
        }
      }
      rhs /= static_cast<double>(g2.order);
      worst = std::max(worst, std::abs(u3p8 - rhs));
    }
    expect(worst < 1e-9, "||f||_{U^3}^8 != E_h ||D^||_4^4, residual " + fmt(worst));
    return "max residual " + fmt(worst);
  });

  // ---- progressions -----------------------------------------------------
  const GroupConfig g3 = make_group(std::min(std::max(opt.n, 1), 3));

  suite.run("progressions", "lambda3-spectral-agreement", [&] {
    SplitMix64 rng(opt.seed ^ 0x41);
    double worst = 0.0;
    for (int t = 0; t < std::max(trials, 100); ++t) {
      DenseFunction f1 = random_real_bounded(g3, rng);
      DenseFunction f2 = random_real_bounded(g3, rng);
      DenseFunction f3 = random_real_bounded(g3, rng);
      worst = std::max(worst, std::abs(lambda3(f1, f2, f3) - lambda3_spectral(f1, f2, f3)));
    }
    expect(worst < 1e-10, "spectral vs direct " + fmt(worst));
    return "max residual " + fmt(worst) + " over " + std::to_string(std::max(trials, 100)) +
           " triples";
  });

  suite.run("progressions", "balanced-expansion", [&] {
    SplitMix64 rng(opt.seed ^ 0x42);
    GroupConfig cfg = make_group(std::min(opt.n, 3));
    double worst = 0.0;
    for (int t = 0; t < std::max(1, trials / 5); ++t) {
      std::vector<std::vector<std::size_t>> sets;
      for (int i = 0; i < 4; ++i) sets.push_back(random_set(cfg, 0.5, rng.next()));
      worst = std::max(worst, balanced_expansion_check(sets, cfg).error);
      sets.resize(3);
      worst = std::max(worst, balanced_expansion_check(sets, cfg).error);
    }
    return "max reconciliation error " + fmt(worst);
  });

  suite.run("progressions", "multilinearity", [&] {
    SplitMix64 rng(opt.seed ^ 0x43);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      DenseFunction f = random_real_bounded(g2, rng);
      DenseFunction g = random_real_bounded(g2, rng);
      DenseFunction a = random_real_bounded(g2, rng);
      DenseFunction b = random_real_bounded(g2, rng);
      DenseFunction c = random_real_bounded(g2, rng);
      Cplx split = lambda4(f, a, b, c) + lambda4(g, a, b, c);
      worst = std::max(worst, std::abs(lambda4(add_fn(f, g), a, b, c) - split));
    }
    expect(worst < 1e-10, "multilinearity residual " + fmt(worst));
    return "max residual " + fmt(worst);
  });

  suite.run("progressions", "gvn-randomized", [&] {
    SplitMix64 rng(opt.seed ^ 0x44);
    double min_slack = 1e9;
    for (int t = 0; t < trials; ++t) {
      DenseFunction f1 = random_pm1(g2, rng), f2 = random_pm1(g2, rng);
      DenseFunction f3 = random_pm1(g2, rng), f4 = random_pm1(g2, rng);
      GvnReport rep = gvn_check(f1, f2, f3, f4);  // throws on violation
      min_slack = std::min(min_slack, std::min(rep.slack3, rep.slack4));
    }
    return std::to_string(trials) + " quadruples, min slack " + fmt(min_slack);
  });

  suite.run("progressions", "census-matches-lambda", [&] {
    SplitMix64 rng(opt.seed ^ 0x45);
    GroupConfig cfg = make_group(std::min(opt.n, 3));
    for (int t = 0; t < std::max(1, trials / 5); ++t) {
      auto set = random_set(cfg, 0.5, rng.next());
      DenseFunction ind = indicator(set, cfg);
      for (int k = 3; k <= 4; ++k) {
        ApCensus census = ap_census(set, cfg, k);
        Cplx lam = k == 3 ? lambda3(ind, ind, ind) : lambda4(ind, ind, ind, ind);
        double scaled = lam.real() * static_cast<double>(cfg.order) * static_cast<double>(cfg.order);
        expect(std::abs(scaled - static_cast<double>(census.total)) < 1e-6,
               "census disagrees with N^2 Lambda");
      }
    }
    return "integer counts match N^2 Lambda_k";
  });

  // ---- quadratic --------------------------------------------------------
  suite.run("quadratic", "gauss-sum-bound", [&] {
    SplitMix64 rng(opt.seed ^ 0x51);
    int total = std::max(200, trials);
    for (int t = 0; t < total; ++t) {
      int n = 1 + static_cast<int>(rng.next() % 3);
      GroupConfig cfg = make_group(n);
      Mat5 m = random_sym(n, rng);
      gauss_sum(make_phase(m, random_form(n, rng)), cfg);            // bound check inside
      gauss_sum(make_phase(m, LinearForm(static_cast<std::size_t>(n), 0)), cfg);  // equality at r = 0
    }
    return std::to_string(total) + " phases, bound and r=0 equality";
  });

  suite.run("quadratic", "correlation-implies-u3", [&] {
    SplitMix64 rng(opt.seed ^ 0x52);
    for (int t = 0; t < std::max(1, trials / 2); ++t) {
      QuadraticPhase q = make_phase(random_sym(g2.n, rng), random_form(g2.n, rng));
      DenseFunction noise = random_complex_bounded(g2, rng);
      DenseFunction f = quad_phase_fn(q, g2);
      for (std::size_t i = 0; i < f.v.size(); ++i) f.v[i] *= noise.v[i];
      double u3 = gowers_norm_fast(f, 3).value;
      QuadraticPhase probe = make_phase(mat_scale(q.m, 4), q.r);
      for (Residue& d : probe.r) d = neg5(d);
      double corr = quad_correlation(f, probe).magnitude;
      expect(u3 >= corr - 1e-9, "U^3 below correlation magnitude");
    }
    return "phase-times-noise inputs";
  });

  suite.run("quadratic", "oracle-recovers-phases", [&] {
    SplitMix64 rng(opt.seed ^ 0x53);
    for (int t = 0; t < std::max(1, trials / 10); ++t)
      for (int n = 1; n <= 2; ++n) {
        GroupConfig cfg = make_group(n);
        QuadraticPhase q = make_phase(random_sym(n, rng), random_form(n, rng));
        auto cert = inverse_oracle(quad_phase_fn(q, cfg), 0.5, dec.oracle);
        expect(cert.has_value(), "oracle returned nothing for a pure phase");
        expect(std::abs(cert->magnitude - 1.0) < 1e-9, "magnitude != 1 for a pure phase");
      }
    return "exact recovery at n <= 2";
  });

  suite.run("quadratic", "oracle-argmax-delta-independent", [&] {
    SplitMix64 rng(opt.seed ^ 0x54);
    OracleSettings always = dec.oracle;
    always.floor_override = 0.0;
    for (int t = 0; t < std::max(1, trials / 10); ++t) {
      DenseFunction f = random_real_bounded(g2, rng);
      auto lo = inverse_oracle(f, 0.1, always);
      auto hi = inverse_oracle(f, 0.9, always);
      expect(lo && hi && lo->phase.m == hi->phase.m && lo->phase.r == hi->phase.r,
             "argmax moved with delta");
    }
    return "argmax independent of delta";
  });

  suite.run("quadratic", "derivative-spectrum-quadratic-phase", [&] {
    GroupConfig cfg = make_group(2);
    QuadraticPhase q = make_phase(Mat5::identity(2), LinearForm(2, 0));
    DerivativeSpectrumMap map = derivative_spectrum(quad_phase_fn(q, cfg), 0.9);
    expect(map.large_set.size() == cfg.order, "S != G for a quadratic phase");
    for (std::size_t h = 0; h < cfg.order; ++h)
      expect(map.entries[h].size() == 1, "Phi(h) not a single character");
    std::uint64_t quads = additive_quadruple_count(map);
    std::uint64_t expected = static_cast<std::uint64_t>(cfg.order) * cfg.order * cfg.order;
    expect(quads == expected, "additive quadruple count != N^3 for linear phi");
    return "Phi singletons, N^3 additive quadruples";
  });

  // ---- factors ----------------------------------------------------------
  suite.run("factors", "pythagoras", [&] {
    SplitMix64 rng(opt.seed ^ 0x61);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      QuadraticFactor coarse =
          make_factor(g2, {random_form(g2.n, rng)}, {random_sym(g2.n, rng)});
      QuadraticFactor fine =
          join(coarse, make_factor(g2, {random_form(g2.n, rng)}, {random_sym(g2.n, rng)}));
      DenseFunction f = random_complex_bounded(g2, rng);
      DenseFunction pc = conditional_expectation(f, coarse);
      DenseFunction pf = conditional_expectation(f, fine);
      double cross = 0.0;
      for (std::size_t i = 0; i < g2.order; ++i) cross += std::norm(pf.v[i] - pc.v[i]);
      cross /= static_cast<double>(g2.order);
      double lhs = norm_l2(pf) * norm_l2(pf);
      double rhs = norm_l2(pc) * norm_l2(pc) + cross;
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    expect(worst < 1e-10, "Pythagoras residual " + fmt(worst));
    return "max residual " + fmt(worst);
  });

  suite.run("factors", "projection-properties", [&] {
    SplitMix64 rng(opt.seed ^ 0x62);
    for (int t = 0; t < trials; ++t) {
      QuadraticFactor factor =
          make_factor(g2, {random_form(g2.n, rng)}, {random_sym(g2.n, rng)});
      DenseFunction f = random_complex_bounded(g2, rng);
      DenseFunction p = conditional_expectation(f, factor);
      DenseFunction pp = conditional_expectation(p, factor);
      expect(max_abs_diff(p.v, pp.v) < 1e-12, "not idempotent");
      expect(std::abs(mean(p) - mean(f)) < 1e-12, "mean not preserved");
      expect(norm_l2(p) <= norm_l2(f) + 1e-12, "not contractive");
    }
    return std::to_string(trials) + " projections";
  });

  suite.run("factors", "join-refines", [&] {
    SplitMix64 rng(opt.seed ^ 0x63);
    GroupConfig cfg = make_group(std::min(opt.n, 3));
    for (int t = 0; t < std::max(1, trials / 10); ++t) {
      QuadraticFactor fa = make_factor(cfg, {random_form(cfg.n, rng)}, {random_sym(cfg.n, rng)});
      QuadraticFactor fb = make_factor(cfg, {random_form(cfg.n, rng)}, {random_sym(cfg.n, rng)});
      QuadraticFactor joined = join(fa, fb);
      auto kj = atom_keys(joined);
      auto ka = atom_keys(fa);
      auto kb = atom_keys(fb);
      for (std::size_t x = 0; x < cfg.order; ++x)
        for (std::size_t y = x + 1; y < cfg.order; ++y)
          if (kj[x] == kj[y])
            expect(ka[x] == ka[y] && kb[x] == kb[y], "join atom crosses an input atom");
    }
    return "exhaustive containment at n <= 3";
  });

  suite.run("factors", "rank-reduce-refines", [&] {
    SplitMix64 rng(opt.seed ^ 0x64);
    GroupConfig cfg = make_group(std::min(std::max(opt.n, 2), 3));
    GrowthFn omega = GrowthFn::constant(2.0);
    for (int t = 0; t < std::max(1, trials / 10); ++t) {
      Mat5 m = random_sym(cfg.n, rng);
      QuadraticFactor factor =
          make_factor(cfg, {}, {m, mat_scale(m, 2), random_sym(cfg.n, rng)});
      QuadraticFactor reduced = rank_reduce(factor, omega);
      expect(reduced.d2() == 0 || factor_rank(reduced) >= 2, "rank target missed");
      auto kr = atom_keys(reduced);
      auto kf = atom_keys(factor);
      for (std::size_t x = 0; x < cfg.order; ++x)
        for (std::size_t y = x + 1; y < cfg.order; ++y)
          if (kr[x] == kr[y]) expect(kf[x] == kf[y], "reduction does not refine");
    }
    return "refinement + rank certified";
  });

  suite.run("factors", "atom-count-bound", [&] {
    SplitMix64 rng(opt.seed ^ 0x65);
    GroupConfig cfg = make_group(std::min(opt.n, 4));
    for (int t = 0; t < std::max(1, trials / 5); ++t) {
      QuadraticFactor factor = make_factor(
          cfg, {random_form(cfg.n, rng)}, {random_sym(cfg.n, rng), random_sym(cfg.n, rng)});
      AtomStatistics stats = atom_statistics(factor);
      double cap = std::pow(5.0, factor.d1() + factor.d2());
      expect(static_cast<double>(stats.atoms.size()) <= cap, "atom count above 5^{d1+d2}");
    }
    return "count <= 5^{d1+d2}";
  });

  suite.run("factors", "atom-size-bound", [&] {
    SplitMix64 rng(opt.seed ^ 0x66);
    GroupConfig cfg = make_group(std::min(std::max(opt.n, 2), 4));
    for (int t = 0; t < std::max(1, trials / 5); ++t) {
      QuadraticFactor factor = make_factor(cfg, {random_form(cfg.n, rng)}, {random_sym(cfg.n, rng)});
      AtomStatistics stats = atom_statistics(factor);
      for (const AtomStat& a : stats.atoms)
        expect(!a.flagged, "atom probability deviates beyond 5^{-rank/2}");
    }
    return "all deviations within 5^{-rank/2}";
  });

  suite.run("factors", "ap4-probability-total", [&] {
    SplitMix64 rng(opt.seed ^ 0x67);
    GroupConfig cfg = make_group(std::min(std::max(opt.n, 2), 3));
    QuadraticFactor factor = make_factor(cfg, {random_form(cfg.n, rng)}, {Mat5::identity(cfg.n)});
    // census over all (x, d) pairs
    auto keys = atom_keys(factor);
    std::map<std::array<std::uint32_t, 4>, std::uint64_t> census;
    for (std::size_t d = 0; d < cfg.order; ++d)
      for (std::size_t x = 0; x < cfg.order; ++x) {
        std::size_t x1 = add_index(x, d, cfg), x2 = add_index(x1, d, cfg), x3 = add_index(x2, d, cfg);
        ++census[{keys[x], keys[x1], keys[x2], keys[x3]}];
      }
    double total = 0.0;
    AtomStatistics stats = atom_statistics(factor);
    auto atom_by_key = [&](std::uint32_t key) {
      for (const AtomStat& a : stats.atoms)
        if (atom_key(factor, a.atom) == key) return a.atom;
      throw std::runtime_error("atom key not found");
    };
    for (const auto& [tuple, count] : census) {
      std::array<Atom, 4> atoms{atom_by_key(tuple[0]), atom_by_key(tuple[1]),
                                atom_by_key(tuple[2]), atom_by_key(tuple[3])};
      double p = ap4_atom_probability(factor, atoms);  // constraint checks inside
      expect(std::abs(p - static_cast<double>(count) / static_cast<double>(cfg.order) /
                              static_cast<double>(cfg.order)) < 1e-12,
             "probability disagrees with census");
      total += p;
    }
    expect(std::abs(total - 1.0) < 1e-9, "probabilities do not sum to 1");
    return std::to_string(census.size()) + " realized tuples sum to 1";
  });

  suite.run("factors", "haar-density", [&] {
    SplitMix64 rng(opt.seed ^ 0x68);
    GroupConfig cfg = make_group(std::min(std::max(opt.n, 2), 4));
    for (int t = 0; t < trials; ++t) {
      std::vector<GroupPoint> basis;
      int k = static_cast<int>(rng.next() % (static_cast<std::uint64_t>(cfg.n) + 1));
      for (int i = 0; i < k; ++i)
        basis.push_back(index_to_point(rng.next() % cfg.order, cfg));
      DenseFunction mu = haar_on_subspace(basis, cfg);
      expect(std::abs(mean(mu) - Cplx(1.0)) < 1e-12, "E mu_H != 1");
    }
    return "normalized on random subspaces";
  });

  // ---- decompose --------------------------------------------------------
  suite.run("decompose", "linear-kvn-contract", [&] {
    SplitMix64 rng(opt.seed ^ 0x71);
    GroupConfig cfg = make_group(std::min(std::max(opt.n, 2), 3));
    for (int t = 0; t < std::max(1, trials / 5); ++t)
      for (double delta : {0.3, 0.5}) {
        DenseFunction f = random_real_bounded(cfg, rng);
        Decomposition d = linear_kvn(f, delta);  // contract checks inside
        expect(static_cast<double>(d.factor.d1()) <= 4.0 * std::pow(delta, -4.0),
               "complexity above 4 delta^-4");
        double direct = gowers_norm_direct(d.f2, 2).value;
        expect(direct <= delta + 1e-9, "direct U^2 of f2 above delta");
        DenseFunction sum = add_fn(d.f1, d.f2);
        expect(max_abs_diff(sum.v, f.v) < 1e-10, "f1 + f2 != f");
      }
    return "complexity, uniformity, reconstruction";
  });

  suite.run("decompose", "quadratic-kvn-contract", [&] {
    SplitMix64 rng(opt.seed ^ 0x72);
    for (int t = 0; t < std::max(1, trials / 10); ++t) {
      DenseFunction f = balanced(random_set(g2, 0.5, rng.next()), g2);
      Decomposition d = quadratic_kvn(f, 0.4, make_factor(g2, {}, {}), dec);
      expect(gowers_norm_direct(d.f2, 3).value <= 0.4 + 1e-9, "direct U^3 of f2 above delta");
      DenseFunction sum = add_fn(d.f1, d.f2);
      expect(max_abs_diff(sum.v, f.v) < 1e-10, "f1 + f2 != f");
      for (std::size_t i = 1; i < d.energy_history.size(); ++i)
        expect(d.energy_history[i] - d.energy_history[i - 1] >= d.step_floors[i - 1] - 1e-12,
               "energy step below floor");
      double cap = 1.0 / (oracle_accept_floor(0.4) * oracle_accept_floor(0.4)) + 8.0;
      expect(static_cast<double>(d.iterations) <= cap, "iterations above cap");
    }
    return "uniformity, monotone energies, caps";
  });

  suite.run("decompose", "regularity-contract", [&] {
    SplitMix64 rng(opt.seed ^ 0x73);
    GrowthFn omega = GrowthFn::polynomial(2.0);
    for (int t = 0; t < std::max(1, trials / 15); ++t) {
      DenseFunction f = balanced(random_set(g2, 0.5, rng.next()), g2);
      Decomposition d = regularity(f, 0.5, omega, make_factor(g2, {}, {}), dec);
      DenseFunction sum = add_fn(add_fn(d.f1, d.f2), *d.f3);
      expect(max_abs_diff(sum.v, f.v) < 1e-10, "f1 + f2 + f3 != f");
      expect(norm_l2(d.f2) <= 0.5 + 1e-9, "||f2||_2 above delta");
      double u3 = gowers_norm_direct(*d.f3, 3).value;
      expect(u3 <= 1.0 / omega(d.factor.d1() + d.factor.d2()) + 1e-9,
             "||f3||_{U^3} above 1/omega(d)");
      expect(max_abs_diff(d.f1.v, conditional_expectation(f, d.factor).v) < 1e-12,
             "f1 is not the factor projection");
    }
    return "three-term split re-measured";
  });

  suite.run("decompose", "high-rank-contract", [&] {
    SplitMix64 rng(opt.seed ^ 0x74);
    GrowthFn omega1 = GrowthFn::constant(2.0);
    GrowthFn omega2 = GrowthFn::polynomial(1.0);
    for (int t = 0; t < std::max(1, trials / 25); ++t) {
      DenseFunction f = balanced(random_set(g2, 0.5, rng.next()), g2);
      Decomposition d = regularity_high_rank(f, 0.5, omega1, omega2, make_factor(g2, {}, {}), dec);
      DenseFunction sum = add_fn(add_fn(d.f1, d.f2), *d.f3);
      expect(max_abs_diff(sum.v, f.v) < 1e-10, "f1 + f2 + f3 != f");
      expect(d.factor.d2() == 0 || factor_rank(d.factor) >= 2, "rank condition failed");
      expect(norm_l2(d.f2) <= 0.5 + 1e-9, "||f2||_2 above delta");
    }
    return "rank + norm conditions re-measured";
  });

  suite.run("decompose", "count-inequality", [&] {
    SplitMix64 rng(opt.seed ^ 0x75);
    for (int t = 0; t < trials; ++t) {
      ConfigSpaceFn F;
      F.d1 = 1;
      F.d2 = 1;
      F.v.resize(25);
      for (double& x : F.v) x = rng.next_double();
      CountIneqReport rep = configspace_count_inequality(F);  // throws on violation
      expect(rep.lhs >= rep.rhs - 1e-10, "lhs < rhs");
    }
    return std::to_string(trials) + " random non-negative functions";
  });

  suite.run("decompose", "bhk-reconciliation", [&] {
    SplitMix64 rng(opt.seed ^ 0x76);
    auto set = random_set(g2, 0.5, rng.next());
    BhkReport rep = bhk_experiment(set, g2, 0.3, dec);  // 81-term check inside
    // independent recount of the witness difference
    std::vector<char> in(g2.order, 0);
    for (std::size_t m : set) in[m] = 1;
    std::uint64_t recount = 0;
    for (std::size_t x = 0; x < g2.order; ++x) {
      std::size_t x1 = add_index(x, rep.witness_d, g2);
      std::size_t x2 = add_index(x1, rep.witness_d, g2);
      std::size_t x3 = add_index(x2, rep.witness_d, g2);
      if (in[x] && in[x1] && in[x2] && in[x3]) ++recount;
    }
    expect(recount == rep.witness_count, "witness recount mismatch");
    expect(rep.witness_d != 0, "witness difference is zero");
    expect(rep.witness_ok, "witness below (alpha^4 - eps) N");
    return "81 terms reconcile, witness verified";
  });

  // ---- harness ----------------------------------------------------------
  suite.run("harness", "random-set-determinism", [&] {
    GroupConfig cfg = make_group(std::min(opt.n, 4));
    auto a = random_set(cfg, 0.37, opt.seed);
    auto b = random_set(cfg, 0.37, opt.seed);
    expect(a == b, "same seed produced different sets");
    expect(random_set(cfg, 0.0, opt.seed).empty(), "alpha=0 set not empty");
    expect(random_set(cfg, 1.0, opt.seed).size() == cfg.order, "alpha=1 set not full");
    return "seeded reproducibility + endpoints";
  });

  suite.run("harness", "report-determinism", [&] {
    SplitMix64 rng(opt.seed ^ 0x81);
    DenseFunction f = random_complex_bounded(g2, rng);
    Json config{{"n", g2.n}, {"seed", opt.seed}};
    Json r1 = make_report("ft", config, function_to_json(f), 123);
    Json r2 = make_report("ft", config, function_to_json(f), 123);
    expect(r1.dump(2) == r2.dump(2), "report bytes differ across identical runs");
    return "byte-identical reports";
  });

  return suite.results;
}

}  // namespace qf
