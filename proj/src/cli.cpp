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

#include "otlab/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <string>

#include "CLI11.hpp"
#include "otlab/coupling.hpp"
#include "otlab/dyadic.hpp"
#include "otlab/error.hpp"
#include "otlab/io.hpp"
#include "otlab/measure.hpp"
#include "otlab/ot.hpp"
#include "otlab/rng.hpp"

namespace otlab::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config;
  std::string out = ".";
  std::string format = "both";
  std::string rational = "auto";
  bool allow_nonunique = false;
  unsigned threads = 1;

  bool json() const { return format != "csv"; }
  bool csv() const { return format != "json"; }
  SolveMode mode() const {
    if (rational == "on") return SolveMode::Exact;
    if (rational == "off") return SolveMode::Floating;
    return SolveMode::Auto;
  }
  std::string base_dir() const { return fs::path(config).parent_path().string(); }
  std::string out_path(const std::string& file) const {
    return (fs::path(out) / file).string();
  }
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--config", opt.config, "Path to the JSON configuration")->required();
  cmd->add_option("--out", opt.out, "Output directory for artifacts (default: .)");
  cmd->add_option("--format", opt.format, "Artifact format: json | csv | both (default: both)")
      ->check(CLI::IsMember({"json", "csv", "both"}));
  cmd->add_option("--rational", opt.rational,
                  "Arithmetic: on | off | auto (auto = exact when edges <= 400)")
      ->check(CLI::IsMember({"on", "off", "auto"}));
  cmd->add_flag("--allow-nonunique", opt.allow_nonunique,
                "Fall back to a canonical optimal vertex when the optimal plan is not unique");
  cmd->add_option("--threads", opt.threads, "Worker threads for replications (default: 1)")
      ->check(CLI::PositiveNumber);
}

void prepare_out(const Options& opt) {
  if (opt.out != "." && !opt.out.empty()) fs::create_directories(opt.out);
}

const char* yn(bool b) { return b ? "true" : "false"; }

int cmd_solve(const Options& opt, bool emit_psi) {
  io::SolveConfig cfg = io::solve_from_json(io::load_json_file(opt.config), opt.base_dir());
  CostSpec spec{cfg.p};
  FaceAnalysis fa = analyze_face(cfg.mu, cfg.nu, spec, opt.mode());
  prepare_out(opt);
  if (emit_psi) {
    io::Json j;
    j["edges"] = io::edges_to_json(fa.psi);
    j["unique"] = fa.unique;
    if (opt.json()) io::write_json_file(opt.out_path("psi.json"), j);
    if (opt.csv()) io::write_text_file(opt.out_path("psi.csv"), io::edges_to_csv(fa.psi));
    std::printf("edges=%zu unique=%s\n", fa.psi.size(), yn(fa.unique));
    return 0;
  }
  if (opt.json()) io::write_json_file(opt.out_path("plan.json"), io::plan_to_json(fa.plan));
  if (opt.csv()) io::write_text_file(opt.out_path("plan.csv"), io::plan_to_csv(fa.plan));
  if (cfg.p < 1.0 && !disjoint_supports(cfg.mu, cfg.nu))
    std::fprintf(stderr,
                 "warning: strictly concave cost with overlapping supports; "
                 "an optimal map need not exist (the optimal plan is still exact)\n");
  std::printf("value=%s unique=%s map=%s\n", io::format_double(fa.plan.value).c_str(),
              yn(fa.unique), yn(fa.map.has_value()));
  return 0;
}

int cmd_dyadic(const Options& opt) {
  io::DyadicConfig cfg = io::dyadic_from_json(io::load_json_file(opt.config), opt.base_dir());
  FamilyContext ctx(cfg.family, opt.allow_nonunique, opt.mode());
  ApproxReport rep = dyadic_report(ctx, cfg.K);
  prepare_out(opt);
  if (opt.json()) io::write_json_file(opt.out_path("dyadic_report.json"), io::approx_report_to_json(rep));
  if (opt.csv()) {
    io::write_text_file(opt.out_path("dyadic_gaps.csv"), io::gaps_to_csv(rep));
    io::write_text_file(opt.out_path("dyadic_errors.csv"), io::errors_to_csv(rep));
  }
  std::printf("K=%d gaps=%zu errors_monotone=%s pushforward=%s all_pass=%s\n", rep.K,
              rep.gaps.size(), yn(rep.errors_monotone), yn(rep.pushforward_ok),
              yn(rep.all_pass()));
  if (!rep.all_pass()) {
    std::fprintf(stderr, "error: a dyadic approximation bound failed\n");
    return 4;
  }
  return 0;
}

int cmd_couple(const Options& opt) {
  ExperimentConfig cfg = io::experiment_from_json(io::load_json_file(opt.config), opt.base_dir());
  cfg.threads = opt.threads;
  CouplingReport rep = run_experiment(cfg, opt.mode());
  prepare_out(opt);
  if (opt.json())
    io::write_json_file(opt.out_path("coupling_report.json"), io::coupling_report_to_json(rep));
  if (opt.csv())
    io::write_text_file(opt.out_path("coupling_report.csv"), io::coupling_report_to_csv(rep));
  std::printf("rhs=%s lhs_terminal=%s lhs_sup=%s pass=%s\n", io::format_double(rep.rhs).c_str(),
              io::format_double(rep.lhs_terminal).c_str(),
              io::format_double(rep.lhs_sup).c_str(), yn(rep.pass()));
  if (!rep.pass()) {
    std::fprintf(stderr, "error: a coupling bound failed beyond three standard errors\n");
    return 4;
  }
  return 0;
}

// Deterministic instance generation.  Families draw a gaussian source cloud
// and an independent scaled-and-shifted gaussian target cloud per parameter,
// resampling until the quadratic/power-cost plan is a unique map so the
// downstream approximation scheme applies without fallbacks.
int cmd_gen(const Options& opt) {
  io::GenConfig cfg = io::gen_from_json(io::load_json_file(opt.config));
  prepare_out(opt);
  std::string path = opt.out_path(cfg.name + ".json");
  if (cfg.kind == io::GenConfig::Kind::Measure) {
    DiscreteMeasure m = sample_cloud(cfg.dist, cfg.n, cfg.seed);
    io::write_json_file(path, io::measure_to_json(m, true));
    std::printf("wrote %s\n", path.c_str());
    return 0;
  }
  ParamFamily fam;
  fam.p = cfg.p;
  CostSpec spec{cfg.p};
  DistSpec gauss;
  gauss.kind = DistSpec::Kind::Gaussian;
  gauss.mean.assign(cfg.dim, 0.0);
  gauss.sd = 1.0;
  constexpr std::uint64_t kMaxAttempts = 64;
  for (std::size_t idx = 0; idx < cfg.count; ++idx) {
    ParamEntry e;
    e.label = "lambda" + std::to_string(idx);
    e.mass = cfg.masses.empty() ? Rat(1) : cfg.masses[idx];
    e.mass_d = to_double(e.mass);
    for (std::uint64_t attempt = 0;; ++attempt) {
      if (attempt == kMaxAttempts)
        throw InstanceError("could not draw a uniquely solvable instance at '" + e.label + "'");
      std::uint64_t s_mu = rng::key(cfg.seed, rng::kStreamInstance, idx, attempt, 0);
      std::uint64_t s_nu = rng::key(cfg.seed, rng::kStreamInstance, idx, attempt, 1);
      e.mu = sample_cloud(gauss, cfg.n, s_mu);
      double c = 0.5 + rng::uniform(cfg.seed, rng::kStreamInstance, idx, attempt, 2);
      Point v;
      v.x.resize(cfg.dim);
      for (std::size_t i = 0; i < cfg.dim; ++i)
        v.x[i] = -2.0 + 4.0 * rng::uniform(cfg.seed, rng::kStreamInstance, idx, attempt, 3, i);
      e.nu = translate(scale(sample_cloud(gauss, cfg.n, s_nu), c), v);
      if (e.mu.size() == e.nu.size() && is_unique(e.mu, e.nu, spec).unique) break;
    }
    fam.params.push_back(std::move(e));
  }
  fam.validate();
  io::write_json_file(path, io::family_to_json(fam));
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"otlab: exact discrete optimal transport, dyadic transport approximation, "
               "and martingale-measure coupling experiments"};
  app.require_subcommand(1);
  Options opt;
  CLI::App* solve = app.add_subcommand("solve", "Solve one transport instance; writes plan.json/plan.csv");
  CLI::App* psi = app.add_subcommand("psi", "Support union over all optimal plans; writes psi.json/psi.csv");
  CLI::App* dyadic = app.add_subcommand("dyadic", "Dyadic approximation report for a parameter family");
  CLI::App* couple = app.add_subcommand("couple", "Monte Carlo coupling experiment; writes coupling_report.*");
  CLI::App* gen = app.add_subcommand("gen", "Generate a measure or family file from a seed");
  for (CLI::App* c : {solve, psi, dyadic, couple, gen}) add_common(c, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(opt, false);
    if (psi->parsed()) return cmd_solve(opt, true);
    if (dyadic->parsed()) return cmd_dyadic(opt);
    if (couple->parsed()) return cmd_couple(opt);
    if (gen->parsed()) return cmd_gen(opt);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
  return 2;
}

}  // namespace otlab::cli
