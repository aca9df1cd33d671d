// Copyright 2026 The otlab authors
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

// Acceptance harness: one line of output per criterion, nonzero exit if
// any criterion fails. Each check states its tolerance inline; oracle
// comparisons are exact rational equalities unless noted.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "otlab/coupling.hpp"
#include "otlab/dyadic.hpp"
#include "otlab/error.hpp"
#include "otlab/io.hpp"
#include "otlab/ot.hpp"
#include "otlab/rng.hpp"

namespace fs = std::filesystem;
using namespace otlab;

namespace {

int g_failures = 0;

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

void report(const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %s (%s)\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  if (!ok) ++g_failures;
}

double secs(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Equal-weight cloud with coordinates uniform in [-5, 5]^d.
DiscreteMeasure cloud(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::vector<Point> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i].x.resize(d);
    for (std::size_t k = 0; k < d; ++k)
      pts[i].x[k] = -5.0 + 10.0 * rng::uniform(seed, rng::kStreamCloud, i, k);
  }
  return make_discrete(pts, std::vector<double>(n, 1.0));
}

// 1D cloud with small random rational weights.
DiscreteMeasure wcloud(std::size_t n, std::uint64_t seed) {
  std::vector<Point> pts(n);
  std::vector<Rat> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = Point{-5.0 + 10.0 * rng::uniform(seed, rng::kStreamCloud, i, 0)};
    w[i] = Rat(1 + static_cast<long>(rng::key(seed, rng::kStreamCloud, i, 1) % 5));
  }
  return make_discrete(pts, w);
}

DiscreteMeasure two(double a, double b) {
  return make_discrete({Point{a}, Point{b}}, std::vector<double>{1.0, 1.0});
}

DiscreteMeasure square_mu() {
  return make_discrete({Point{0.0, 0.0}, Point{1.0, 1.0}}, std::vector<double>{1.0, 1.0});
}

DiscreteMeasure square_nu() {
  return make_discrete({Point{0.0, 1.0}, Point{1.0, 0.0}}, std::vector<double>{1.0, 1.0});
}

// Draws one parameter's marginal pair, resampling until the cost-p optimal
// plan is a unique map (same scheme the instance generator command uses).
ParamEntry unique_entry(std::size_t d, std::size_t n, double p, std::uint64_t seed,
                        std::size_t idx, const std::string& label, Rat mass) {
  CostSpec spec{p};
  DistSpec gauss;
  gauss.kind = DistSpec::Kind::Gaussian;
  gauss.mean.assign(d, 0.0);
  gauss.sd = 1.0;
  ParamEntry e;
  e.label = label;
  e.mass = mass;
  e.mass_d = to_double(mass);
  for (std::uint64_t attempt = 0;; ++attempt) {
    if (attempt == 64) throw InstanceError("no uniquely solvable draw at '" + label + "'");
    std::uint64_t s_mu = rng::key(seed, rng::kStreamInstance, idx, attempt, 0);
    std::uint64_t s_nu = rng::key(seed, rng::kStreamInstance, idx, attempt, 1);
    e.mu = sample_cloud(gauss, n, s_mu);
    double c = 0.5 + rng::uniform(seed, rng::kStreamInstance, idx, attempt, 2);
    Point v;
    v.x.resize(d);
    for (std::size_t i = 0; i < d; ++i)
      v.x[i] = -2.0 + 4.0 * rng::uniform(seed, rng::kStreamInstance, idx, attempt, 3, i);
    e.nu = translate(scale(sample_cloud(gauss, n, s_nu), c), v);
    if (e.mu.size() == e.nu.size() && is_unique(e.mu, e.nu, spec).unique) break;
  }
  return e;
}

ParamFamily random_unique_family(std::size_t d, std::size_t count, std::size_t n, double p,
                                 std::uint64_t seed, std::vector<Rat> masses = {}) {
  ParamFamily fam;
  fam.p = p;
  for (std::size_t idx = 0; idx < count; ++idx) {
    Rat m = masses.empty() ? Rat(1) : masses[idx];
    fam.params.push_back(unique_entry(d, n, p, seed, idx, "g" + std::to_string(idx), m));
  }
  fam.validate();
  return fam;
}

// The fixed families every family-level criterion runs on: a hand-built
// shifted pair, identity families (mu = nu), and random unique families in
// each dimension, all small enough for rational mode.
std::vector<ParamFamily> canonical_families() {
  std::vector<ParamFamily> fams;

  ParamFamily line;
  line.p = 2.0;
  line.params.push_back({"lam", Rat(1), 1.0, two(0.0, 1.0), two(2.0, 3.0)});
  line.validate();
  fams.push_back(line);

  DistSpec g1;
  g1.kind = DistSpec::Kind::Gaussian;
  g1.mean = {0.0};
  g1.sd = 1.0;
  ParamFamily id1;
  id1.p = 2.0;
  for (std::size_t i = 0; i < 3; ++i) {
    DiscreteMeasure m = sample_cloud(g1, 6, 300 + i);
    id1.params.push_back({"id" + std::to_string(i), Rat(1 + i, 2), (1.0 + i) / 2.0, m, m});
  }
  id1.validate();
  fams.push_back(id1);

  DistSpec g2 = g1;
  g2.mean = {0.0, 0.0};
  ParamFamily id2;
  id2.p = 2.0;
  for (std::size_t i = 0; i < 2; ++i) {
    DiscreteMeasure m = sample_cloud(g2, 5, 320 + i);
    id2.params.push_back({"jd" + std::to_string(i), Rat(1), 1.0, m, m});
  }
  id2.validate();
  fams.push_back(id2);

  fams.push_back(random_unique_family(1, 3, 5, 2.0, 401, {Rat(1, 2), Rat(1), Rat(2)}));
  fams.push_back(random_unique_family(2, 3, 4, 2.0, 402));
  fams.push_back(random_unique_family(3, 2, 3, 1.5, 403));
  return fams;
}

// ---------------------------------------------------------------------------
// Criteria on the transport solvers.
// ---------------------------------------------------------------------------

void criterion_oracle() {
  auto t0 = std::chrono::steady_clock::now();
  const double ps[5] = {0.5, 1.0, 1.5, 2.0, 3.0};
  std::size_t count = 0;
  std::size_t exact_matches = 0;
  double worst = 0.0;
  for (std::size_t t = 0; t < 200; ++t) {
    std::size_t d = 1 + t % 3;
    std::size_t n = 1 + (t / 3) % 7;
    CostSpec spec{ps[t % 5]};
    DiscreteMeasure mu = cloud(n, d, 1000 + 2 * t);
    DiscreteMeasure nu = cloud(n, d, 1001 + 2 * t);
    BruteForceResult bf = solve_bruteforce(mu, nu, spec);
    TransportPlan ex = solve_exact(mu, nu, spec, SolveMode::Exact);
    if (ex.rational && ex.value_r == bf.value_r) ++exact_matches;
    TransportPlan fl = solve_exact(mu, nu, spec, SolveMode::Floating);
    worst = std::max(worst, std::fabs(fl.value - bf.value));
    ++count;
  }
  double el = secs(t0);
  bool ok = exact_matches == count && worst <= 1e-9 && el <= 60.0;
  report("A1 exact solver matches the brute-force oracle", ok,
         fmt("%zu/%zu exact, float drift %.2e <= 1e-9, %.1f s <= 60 s", exact_matches, count,
             worst, el));
}

void criterion_monotone() {
  auto t0 = std::chrono::steady_clock::now();
  const double ps[3] = {1.5, 2.0, 3.0};
  std::size_t count = 0, matches = 0;
  for (std::size_t t = 0; t < 100; ++t) {
    std::size_t n = 2 + (t * 31) % 49;
    std::size_t m = 2 + (t * 17) % 49;
    CostSpec spec{ps[t % 3]};
    DiscreteMeasure mu = wcloud(n, 2000 + 2 * t);
    DiscreteMeasure nu = wcloud(m, 2001 + 2 * t);
    TransportPlan mono = solve_1d_monotone(mu, nu, spec);
    TransportPlan ex = solve_exact(mu, nu, spec, SolveMode::Exact);
    if (mono.rational && ex.rational && mono.value_r == ex.value_r) ++matches;
    ++count;
  }
  double el = secs(t0);
  bool ok = matches == count && el <= 30.0;
  report("A2 quantile coupling agrees with the exact solver in 1D", ok,
         fmt("%zu/%zu exact matches, sizes up to 50, %.1f s <= 30 s", matches, count, el));
}

void criterion_support_union() {
  auto t0 = std::chrono::steady_clock::now();
  std::size_t count = 0, matches = 0;

  auto union_of_perms = [](const BruteForceResult& bf) {
    std::set<std::pair<std::size_t, std::size_t>> s;
    for (const auto& perm : bf.optimal_perms)
      for (std::size_t i = 0; i < perm.size(); ++i) s.insert({i, perm[i]});
    EdgeSet es;
    es.edges.assign(s.begin(), s.end());
    return es;
  };

  CostSpec sq{2.0};
  BruteForceResult bfsq = solve_bruteforce(square_mu(), square_nu(), sq);
  EdgeSet psi_sq = support_union(square_mu(), square_nu(), sq, SolveMode::Exact);
  bool square_ok = psi_sq.size() == 4 && psi_sq == union_of_perms(bfsq);

  for (std::size_t t = 0; t < 100; ++t) {
    std::size_t d = 1 + t % 3;
    std::size_t n = 1 + (t * 7) % 6;
    CostSpec spec{(t % 2) ? 2.0 : 1.0};
    DiscreteMeasure mu = cloud(n, d, 3000 + 2 * t);
    DiscreteMeasure nu = cloud(n, d, 3001 + 2 * t);
    EdgeSet psi = support_union(mu, nu, spec, SolveMode::Exact);
    if (psi == union_of_perms(solve_bruteforce(mu, nu, spec))) ++matches;
    ++count;
  }
  double el = secs(t0);
  bool ok = square_ok && matches == count;
  report("A3 optimizer support union matches the permutation oracle", ok,
         fmt("%zu/%zu instances, degenerate square gives 4 edges: %s, %.1f s", matches, count,
             square_ok ? "yes" : "no", el));
}

// ---------------------------------------------------------------------------
// Criteria on the dyadic approximation scheme.
// ---------------------------------------------------------------------------

void criterion_pushforward(const std::vector<ParamFamily>& fams) {
  std::size_t rows = 0;
  bool ok = true;
  bool rational = true;
  for (const ParamFamily& fam : fams) {
    FamilyContext ctx(fam, false, SolveMode::Exact);
    rational = rational && ctx.rational();
    for (int k = 0; k <= 10; ++k) {
      StepTransport tk = build_Tk(ctx, k);
      for (const PushRow& row : pushforward_check(ctx, tk)) {
        if (!(row.pass && row.lhs == row.rhs)) ok = false;
        ++rows;
      }
    }
  }
  ok = ok && rational;
  report("A4 cell-mass pushforward identity holds exactly at levels 0..10", ok,
         fmt("%zu families, %zu rows, rational mode: %s", fams.size(), rows,
             rational ? "yes" : "no"));
}

std::vector<std::pair<ParamFamily, std::size_t>> gap_families() {
  std::vector<std::pair<ParamFamily, std::size_t>> out;
  const double ps[3] = {1.5, 2.0, 3.0};
  for (std::size_t f = 0; f < 20; ++f) {
    std::size_t d = 1 + f % 3;
    std::size_t count = 4 + (f * 5) % 13;
    std::size_t n = 6 + (f * 7) % 25;
    std::vector<Rat> masses;
    for (std::size_t i = 0; i < count; ++i)
      masses.push_back(Rat(1 + ((f + i) % 4), 1 + (i % 3)));
    out.push_back({random_unique_family(d, count, n, ps[f % 3], 5000 + f, masses), d});
  }
  return out;
}

void criterion_cauchy(const std::vector<FamilyContext>& ctxs,
                      const std::vector<std::size_t>& dims, double el_build) {
  auto t0 = std::chrono::steady_clock::now();
  std::size_t checked = 0, violations = 0;
  for (std::size_t f = 0; f < ctxs.size(); ++f) {
    double mE = ctxs[f].family().mE();
    for (int k = 0; k <= 10; ++k)
      for (int k2 = k + 1; k2 <= 10; ++k2) {
        ++checked;
        if (cauchy_gap(ctxs[f], k, k2) > cauchy_bound(dims[f], k, mE)) ++violations;
      }
  }
  double el = el_build + secs(t0);
  bool ok = violations == 0 && ctxs.size() >= 20 && el <= 120.0;
  report("A5 cross-level gap bound sqrt(d) 2^-k m(E) has zero violations", ok,
         fmt("%zu families, %zu pairs, %zu violations, %.1f s <= 120 s", ctxs.size(), checked,
             violations, el));
}

void criterion_convergence(const std::vector<FamilyContext>& ctxs,
                           const std::vector<std::size_t>& dims) {
  std::size_t bound_bad = 0, mono_bad = 0;
  for (std::size_t f = 0; f < ctxs.size(); ++f) {
    double mE = ctxs[f].family().mE();
    double prev = 0.0;
    for (int K = 0; K <= 10; ++K) {
      double err = approx_error(ctxs[f], K);
      if (err > error_bound(dims[f], K, mE)) ++bound_bad;
      if (K > 0 && err > prev + 1e-12) ++mono_bad;
      prev = err;
    }
  }
  bool ok = bound_bad == 0 && mono_bad == 0;
  report("A6 approximation error meets its bound and decreases in K", ok,
         fmt("%zu families, levels 0..10, %zu bound misses, %zu monotonicity misses",
             ctxs.size(), bound_bad, mono_bad));
}

void criterion_construction_order(const std::vector<ParamFamily>& canonical,
                                  const std::vector<std::pair<ParamFamily, std::size_t>>& gapped) {
  const int levels[4] = {0, 3, 7, 10};
  std::size_t compared = 0, mismatches = 0;

  auto check_family = [&](const ParamFamily& fam, SolveMode mode) {
    FamilyContext whole(fam, false, mode);
    for (std::size_t idx = 0; idx < fam.params.size(); ++idx) {
      ParamFamily solo_fam;
      solo_fam.p = fam.p;
      solo_fam.params.push_back(fam.params[idx]);
      FamilyContext solo(solo_fam, false, mode);
      for (int k : levels) {
        StepTransport a = build_Tk(whole, k);
        StepTransport b = build_Tk(solo, k);
        const auto& pa = a.per_param[idx];
        const auto& pb = b.per_param[0];
        ++compared;
        if (!(pa.included == pb.included && pa.cell == pb.cell && pa.center == pb.center))
          ++mismatches;
      }
    }
  };

  for (const ParamFamily& fam : canonical) check_family(fam, SolveMode::Exact);
  for (const auto& [fam, d] : gapped) check_family(fam, SolveMode::Auto);
  bool ok = mismatches == 0;
  report("A7 whole-family construction agrees with per-parameter runs", ok,
         fmt("%zu comparisons across %zu families, %zu mismatches", compared,
             canonical.size() + gapped.size(), mismatches));
}

// ---------------------------------------------------------------------------
// Criteria on the coupling experiments.
// ---------------------------------------------------------------------------

ExperimentConfig coupling_config(std::size_t i) {
  ExperimentConfig cfg;
  std::size_t d = 1 + i % 2;
  std::size_t steps = 2 + i % 5;
  std::size_t na = 2 + i % 3;
  if (i == 7) {
    cfg.grid.times = {0.0, 0.4, 1.0};
    cfg.grid.dk = {0.6, 0.0};
    steps = 2;
  } else {
    cfg.grid = TimeGrid::linear(1.0, steps);
  }
  DistSpec gauss;
  gauss.kind = DistSpec::Kind::Gaussian;
  gauss.mean.assign(d, 0.0);
  gauss.sd = 1.0;
  const double cs[3] = {1.0, 1.25, 0.8};
  for (std::size_t s = 0; s < steps; ++s) {
    DiscreteMeasure q = sample_cloud(gauss, na, rng::key(9200 + i, rng::kStreamInstance, i, s, 10));
    cfg.cov.q.push_back(q);
    if (i % 2 == 0 && s == 0) {
      cfg.cov.qhat.push_back(q);
      continue;
    }
    Point v;
    v.x.resize(d);
    for (std::size_t c = 0; c < d; ++c)
      v.x[c] = -1.5 + 3.0 * rng::uniform(9200 + i, rng::kStreamInstance, i, s, 20 + c);
    cfg.cov.qhat.push_back(translate(scale(q, cs[s % 3]), v));
  }
  if (i % 3 == 2) {
    cfg.phi.kind = PredictableField::Kind::LipschitzTable;
    Point z;
    z.x.assign(d, 0.25);
    cfg.phi.z = {z};
    cfg.phi.scale = {1.2};
  } else {
    cfg.phi.kind = PredictableField::Kind::Linear;
    cfg.phi.w.assign(d, 0.0);
    cfg.phi.w[0] = 0.7;
    if (d > 1) cfg.phi.w[1] = -0.4;
    cfg.phi.b = 0.3;
    if (i % 3 == 0)
      for (std::size_t s = 0; s < steps; ++s) cfg.phi.scale.push_back(1.0 - 0.1 * s);
  }
  cfg.R = 10000;
  cfg.seed = 9200 + i;
  cfg.threads = 2;
  return cfg;
}

ExperimentConfig translation_config(std::size_t R) {
  ExperimentConfig cfg;
  cfg.grid = TimeGrid::linear(1.0, 10);
  for (std::size_t s = 0; s < 10; ++s) {
    cfg.cov.q.push_back(two(0.0, 1.0));
    cfg.cov.qhat.push_back(two(2.0, 3.0));
  }
  cfg.phi.kind = PredictableField::Kind::Linear;
  cfg.phi.w = {1.0};
  cfg.R = R;
  cfg.seed = 42;
  cfg.threads = 2;
  return cfg;
}

void criterion_isometry(const std::vector<CouplingReport>& reps, double el) {
  std::size_t iso = 0, mart = 0;
  for (const CouplingReport& r : reps) {
    if (r.isometry_pass) ++iso;
    if (r.martingale_pass) ++mart;
  }
  bool ok = reps.size() >= 10 && iso == reps.size() && mart == reps.size() && el <= 120.0;
  report("A8 simulated second moments match the discrete isometry within 3 se", ok,
         fmt("%zu configs, R=10000: isometry %zu/%zu, increment means %zu/%zu, %.1f s <= 120 s",
             reps.size(), iso, reps.size(), mart, reps.size(), el));
}

void criterion_coupling_bounds(const std::vector<CouplingReport>& reps) {
  std::size_t term = 0, sup = 0, literal = 0;
  for (const CouplingReport& r : reps) {
    if (r.terminal_pass) ++term;
    if (r.sup_pass) ++sup;
    if (r.literal_pass) ++literal;
  }
  CouplingReport tr = run_experiment(translation_config(10000));
  bool closed_form = std::fabs(tr.rhs - 4.0) <= 1e-9 &&
                     std::fabs(tr.lhs_terminal - 4.0) <= 3.0 * tr.lhs_terminal_se &&
                     tr.terminal_pass && tr.sup_pass;
  bool ok = term == reps.size() && sup == reps.size() && closed_form;
  report("A9 energy bounds hold on every config; translation closed form = 4", ok,
         fmt("terminal %zu/%zu, sup %zu/%zu, literal bound held on %zu (reported only), "
             "translation rhs=%.9f lhs=%.3f+-%.3f",
             term, reps.size(), sup, reps.size(), literal, tr.rhs, tr.lhs_terminal,
             tr.lhs_terminal_se));
}

void criterion_constant_integrand() {
  bool ok = true;
  for (std::size_t v = 0; v < 2; ++v) {
    ExperimentConfig cfg = coupling_config(v == 0 ? 1 : 4);  // one 2D, one 1D shape
    cfg.phi = PredictableField{};
    cfg.phi.w.assign(cfg.cov.dim(), 0.0);
    cfg.phi.b = (v == 0) ? 2.5 : -1.0;
    if (v == 1)
      for (std::size_t s = 0; s < cfg.grid.steps(); ++s) cfg.phi.scale.push_back(0.25 * (s + 1));
    CouplingReport r = run_experiment(cfg);
    ok = ok && r.rhs == 0.0 && r.lhs_terminal == 0.0 && r.lhs_sup == 0.0;
    ok = ok && r.terminal_pass && r.sup_pass;
  }
  report("A10 space-constant integrands give an identically zero difference", ok,
         "2 configs, R=10000, terminal and sup of the difference exactly 0.0");
}

// ---------------------------------------------------------------------------
// CLI determinism.
// ---------------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string("\"") + OTLAB_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  int st = std::system(cmd.c_str());
  return (st >= 0 && WIFEXITED(st)) ? WEXITSTATUS(st) : -1;
}

void criterion_cli_determinism() {
  fs::path root = fs::temp_directory_path() / "otlab_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);

  spit(root / "solve.json", R"({
    "mu": {"dim": 1, "atoms": [{"x": [0], "w": "1/2"}, {"x": [1], "w": "1/2"}]},
    "nu": {"dim": 1, "atoms": [{"x": [2], "w": "1/2"}, {"x": [3], "w": "1/2"}]},
    "p": 2})");
  spit(root / "psi.json", R"({
    "mu": {"dim": 2, "atoms": [{"x": [0, 0], "w": "1/2"}, {"x": [1, 1], "w": "1/2"}]},
    "nu": {"dim": 2, "atoms": [{"x": [0, 1], "w": "1/2"}, {"x": [1, 0], "w": "1/2"}]},
    "p": 2})");
  spit(root / "dyadic.json", R"({
    "family": {"mE": 1, "params": [{"lambda": "lam", "m": 1,
      "mu": {"dim": 1, "atoms": [{"x": [0], "w": "1/2"}, {"x": [1], "w": "1/2"}]},
      "nu": {"dim": 1, "atoms": [{"x": [2], "w": "1/2"}, {"x": [3], "w": "1/2"}]}}],
      "p": 2},
    "K": 6})");
  spit(root / "couple.json", R"({
    "grid": {"S": 1.0, "steps": 5},
    "cov": [{"q": {"dim": 1, "atoms": [{"x": [0], "w": "1/2"}, {"x": [1], "w": "1/2"}]},
             "qhat": {"dim": 1, "atoms": [{"x": [2], "w": "1/2"}, {"x": [3], "w": "1/2"}]}}],
    "phi": {"kind": "linear", "w": [1.0]},
    "R": 500,
    "seed": 7})");
  spit(root / "gen.json", R"({"kind": "family", "name": "famx", "dim": 2, "count": 2,
                              "n": 3, "p": 2, "seed": 5})");

  struct Cmd {
    const char* sub;
    const char* cfg;
    std::vector<const char*> artifacts;
  };
  const std::vector<Cmd> cmds = {
      {"solve", "solve.json", {"plan.json", "plan.csv"}},
      {"psi", "psi.json", {"psi.json", "psi.csv"}},
      {"dyadic", "dyadic.json", {"dyadic_report.json", "dyadic_gaps.csv", "dyadic_errors.csv"}},
      {"couple", "couple.json", {"coupling_report.json", "coupling_report.csv"}},
      {"gen", "gen.json", {"famx.json"}},
  };

  bool ok = true;
  std::size_t files = 0;
  for (const Cmd& c : cmds) {
    fs::path a = root / (std::string(c.sub) + "_a");
    fs::path b = root / (std::string(c.sub) + "_b");
    std::string base = std::string(c.sub) + " --config \"" + (root / c.cfg).string() + "\"";
    int ra = run_cli(base + " --out \"" + a.string() + "\"");
    int rb = run_cli(base + " --out \"" + b.string() + "\"");
    if (ra != 0 || rb != 0) ok = false;
    for (const char* f : c.artifacts) {
      std::string da = slurp(a / f);
      if (da.empty() || da != slurp(b / f)) ok = false;
      ++files;
    }
  }
  report("A11 re-running every command yields byte-identical artifacts", ok,
         fmt("5 commands, %zu artifact files compared", files));
}

}  // namespace

int main() {
  std::printf("acceptance harness: exact-arithmetic transport, dyadic scheme, coupling\n");
  try {
    criterion_oracle();
    criterion_monotone();
    criterion_support_union();

    std::vector<ParamFamily> canonical = canonical_families();
    criterion_pushforward(canonical);

    auto tg = std::chrono::steady_clock::now();
    std::vector<std::pair<ParamFamily, std::size_t>> gapped = gap_families();
    std::vector<FamilyContext> ctxs;
    std::vector<std::size_t> dims;
    for (const auto& [fam, d] : gapped) {
      ctxs.emplace_back(fam, false, SolveMode::Auto);
      dims.push_back(d);
    }
    double el_build = secs(tg);
    criterion_cauchy(ctxs, dims, el_build);
    criterion_convergence(ctxs, dims);
    criterion_construction_order(canonical, gapped);

    auto tc = std::chrono::steady_clock::now();
    std::vector<CouplingReport> reps;
    for (std::size_t i = 0; i < 10; ++i) reps.push_back(run_experiment(coupling_config(i)));
    double el_couple = secs(tc);
    criterion_isometry(reps, el_couple);
    criterion_coupling_bounds(reps);
    criterion_constant_integrand();

    criterion_cli_determinism();
  } catch (const std::exception& e) {
    std::printf("[FAIL] harness aborted: %s\n", e.what());
    ++g_failures;
  }
  if (g_failures) {
    std::printf("%d criteria failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
