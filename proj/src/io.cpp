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

#include "otlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "otlab/error.hpp"

namespace otlab::io {

namespace {

// ---- strict JSON accessors -------------------------------------------------

double get_number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + " must be a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(where + " must be finite");
  return v;
}

double get_positive(const Json& j, const std::string& where) {
  double v = get_number(j, where);
  if (!(v > 0.0)) throw ConfigError(where + " must be positive");
  return v;
}

std::size_t get_count(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<long long>() < 0))
    throw ConfigError(where + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

std::uint64_t get_u64(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<long long>() < 0))
    throw ConfigError(where + " must be a nonnegative integer");
  return j.get<std::uint64_t>();
}

std::string get_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ConfigError(where + " must be a string");
  return j.get<std::string>();
}

const Json& get_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + " must be an array");
  return j;
}

std::vector<double> get_vector(const Json& j, const std::string& where) {
  get_array(j, where);
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(get_number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Point get_point(const Json& j, const std::string& where) {
  Point p;
  p.x = get_vector(j, where);
  if (p.x.empty()) throw ConfigError(where + " must be a nonempty coordinate array");
  p.normalize();
  return p;
}

// Weight / mass: a JSON number, or a string holding an integer, a fraction
// "n/d", or a decimal.
Rat get_rat(const Json& j, const std::string& where) {
  try {
    if (j.is_number()) return rat_of(get_number(j, where));
    if (j.is_string()) return rat_parse(j.get<std::string>());
  } catch (const Error& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + " must be a number or a numeric string");
}

std::string resolve(const std::string& path, const std::string& base_dir) {
  std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return path;
  return (std::filesystem::path(base_dir) / p).string();
}

std::string csv_bool(bool b) { return b ? "1" : "0"; }

}  // namespace

void check_keys(const Json& j, const std::string& where,
                std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : required)
      if (item.key() == k) known = true;
    for (const char* k : optional)
      if (item.key() == k) known = true;
    if (!known) throw ConfigError(where + ": unknown key '" + item.key() + "'");
  }
  for (const char* k : required)
    if (!j.contains(k)) throw ConfigError(where + ": missing key '" + std::string(k) + "'");
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError("malformed JSON in '" + path + "'");
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("short write to '" + path + "'");
}

void write_json_file(const std::string& path, const Json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Measures and families.
// ---------------------------------------------------------------------------

Json measure_to_json(const DiscreteMeasure& m, bool rational_weights) {
  Json atoms = Json::array();
  for (const Atom& a : m.atoms()) {
    Json x = Json::array();
    for (double c : a.p.x) x.push_back(c);
    Json atom;
    atom["x"] = std::move(x);
    if (rational_weights)
      atom["w"] = rat_string(a.w);
    else
      atom["w"] = a.wd;
    atoms.push_back(std::move(atom));
  }
  Json j;
  j["dim"] = m.dim();
  j["atoms"] = std::move(atoms);
  return j;
}

DiscreteMeasure measure_from_json(const Json& j, const std::string& where) {
  check_keys(j, where, {"dim", "atoms"});
  std::size_t d = get_count(j["dim"], where + ".dim");
  if (d < 1) throw ConfigError(where + ".dim must be >= 1");
  const Json& atoms = get_array(j["atoms"], where + ".atoms");
  if (atoms.empty()) throw ConfigError(where + ".atoms must be nonempty");
  std::vector<Point> pts;
  std::vector<Rat> ws;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    std::string aw = where + ".atoms[" + std::to_string(i) + "]";
    check_keys(atoms[i], aw, {"x", "w"});
    Point p = get_point(atoms[i]["x"], aw + ".x");
    if (p.dim() != d) throw ConfigError(aw + ".x does not match dim");
    pts.push_back(std::move(p));
    ws.push_back(get_rat(atoms[i]["w"], aw + ".w"));
  }
  return make_discrete(pts, ws);
}

DiscreteMeasure measure_from_json_or_path(const Json& j, const std::string& base_dir,
                                          const std::string& where) {
  if (j.is_string())
    return measure_from_json(load_json_file(resolve(j.get<std::string>(), base_dir)), where);
  return measure_from_json(j, where);
}

Json family_to_json(const ParamFamily& fam) {
  Json params = Json::array();
  for (const ParamEntry& e : fam.params) {
    Json p;
    p["lambda"] = e.label;
    p["m"] = rat_string(e.mass);
    p["mu"] = measure_to_json(e.mu, true);
    p["nu"] = measure_to_json(e.nu, true);
    params.push_back(std::move(p));
  }
  Json j;
  j["mE"] = fam.mE();
  j["params"] = std::move(params);
  j["p"] = fam.p;
  return j;
}

ParamFamily family_from_json(const Json& j) {
  check_keys(j, "family", {"mE", "params", "p"});
  double mE = get_number(j["mE"], "family.mE");
  const Json& params = get_array(j["params"], "family.params");
  if (params.empty()) throw ConfigError("family.params must be nonempty");
  ParamFamily fam;
  for (std::size_t i = 0; i < params.size(); ++i) {
    std::string pw = "family.params[" + std::to_string(i) + "]";
    check_keys(params[i], pw, {"lambda", "m", "mu", "nu"});
    ParamEntry e;
    const Json& lab = params[i]["lambda"];
    if (lab.is_string())
      e.label = lab.get<std::string>();
    else if (lab.is_number_integer())
      e.label = std::to_string(lab.get<long long>());
    else
      throw ConfigError(pw + ".lambda must be a string or an integer");
    e.mass = get_rat(params[i]["m"], pw + ".m");
    e.mass_d = to_double(e.mass);
    e.mu = measure_from_json(params[i]["mu"], pw + ".mu");
    e.nu = measure_from_json(params[i]["nu"], pw + ".nu");
    fam.params.push_back(std::move(e));
  }
  fam.p = get_positive(j["p"], "family.p");
  fam.validate();
  if (std::fabs(mE - fam.mE()) > 1e-9)
    throw ConfigError("family.mE does not match the sum of parameter masses");
  return fam;
}

// ---------------------------------------------------------------------------
// Plans and edge sets.
// ---------------------------------------------------------------------------

Json plan_to_json(const TransportPlan& plan) {
  Json entries = Json::array();
  for (const PlanEntry& e : plan.entries) {
    Json row;
    row["i"] = e.i;
    row["j"] = e.j;
    if (plan.rational)
      row["m"] = rat_string(e.m);
    else
      row["m"] = e.md;
    entries.push_back(std::move(row));
  }
  Json j;
  j["value"] = plan.value;
  j["entries"] = std::move(entries);
  return j;
}

std::string plan_to_csv(const TransportPlan& plan) {
  std::ostringstream out;
  out << "i,j,m\n";
  for (const PlanEntry& e : plan.entries)
    out << e.i << ',' << e.j << ',' << format_double(e.md) << '\n';
  return out.str();
}

Json edges_to_json(const EdgeSet& edges) {
  Json j = Json::array();
  for (const auto& [i, k] : edges.edges) j.push_back(Json::array({i, k}));
  return j;
}

std::string edges_to_csv(const EdgeSet& edges) {
  std::ostringstream out;
  out << "i,j\n";
  for (const auto& [i, k] : edges.edges) out << i << ',' << k << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Dyadic approximation reports.
// ---------------------------------------------------------------------------

Json approx_report_to_json(const ApproxReport& rep) {
  Json gaps = Json::array();
  for (const GapRow& g : rep.gaps) {
    Json row;
    row["k"] = g.k;
    row["k2"] = g.k2;
    row["gap"] = g.gap;
    row["bound"] = g.bound;
    row["pass"] = g.pass;
    gaps.push_back(std::move(row));
  }
  Json errs = Json::array();
  for (const ErrRow& e : rep.errors) {
    Json row;
    row["k"] = e.k;
    row["err"] = e.err;
    row["bound"] = e.bound;
    row["pass"] = e.pass;
    errs.push_back(std::move(row));
  }
  Json j;
  j["K"] = rep.K;
  j["dim"] = rep.dim;
  j["mass_total"] = rep.mass_total;
  j["gaps"] = std::move(gaps);
  j["errors"] = std::move(errs);
  j["errors_monotone"] = rep.errors_monotone;
  j["pushforward_ok"] = rep.pushforward_ok;
  j["pushforward_rows"] = rep.pushforward_rows;
  j["nonunique_fallback"] = rep.nonunique_fallback;
  j["split_resolved"] = rep.split_resolved;
  j["rational"] = rep.rational;
  j["all_pass"] = rep.all_pass();
  return j;
}

std::string gaps_to_csv(const ApproxReport& rep) {
  std::ostringstream out;
  out << "k,k2,gap,bound,pass\n";
  for (const GapRow& g : rep.gaps)
    out << g.k << ',' << g.k2 << ',' << format_double(g.gap) << ',' << format_double(g.bound)
        << ',' << csv_bool(g.pass) << '\n';
  return out.str();
}

std::string errors_to_csv(const ApproxReport& rep) {
  std::ostringstream out;
  out << "k,err,bound,pass\n";
  for (const ErrRow& e : rep.errors)
    out << e.k << ',' << format_double(e.err) << ',' << format_double(e.bound) << ','
        << csv_bool(e.pass) << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Command configuration documents.
// ---------------------------------------------------------------------------

SolveConfig solve_from_json(const Json& j, const std::string& base_dir) {
  check_keys(j, "config", {"mu", "nu", "p"});
  SolveConfig cfg;
  cfg.mu = measure_from_json_or_path(j["mu"], base_dir, "mu");
  cfg.nu = measure_from_json_or_path(j["nu"], base_dir, "nu");
  cfg.p = get_positive(j["p"], "p");
  return cfg;
}

DyadicConfig dyadic_from_json(const Json& j, const std::string& base_dir) {
  check_keys(j, "config", {"family", "K"});
  DyadicConfig cfg;
  if (j["family"].is_string())
    cfg.family = family_from_json(load_json_file(resolve(j["family"].get<std::string>(), base_dir)));
  else
    cfg.family = family_from_json(j["family"]);
  cfg.K = static_cast<int>(get_count(j["K"], "K"));
  if (cfg.K > kMaxLevel) throw ConfigError("K must be <= " + std::to_string(kMaxLevel));
  return cfg;
}

ExperimentConfig experiment_from_json(const Json& j, const std::string& base_dir) {
  check_keys(j, "config", {"grid", "cov", "phi", "R", "seed"});
  ExperimentConfig cfg;

  const Json& grid = j["grid"];
  check_keys(grid, "grid", {"S", "steps"}, {"clock"});
  if (grid.contains("clock") && get_string(grid["clock"], "grid.clock") != "linear")
    throw ConfigError("grid.clock: only 'linear' is supported");
  double S = get_positive(grid["S"], "grid.S");
  std::size_t steps = get_count(grid["steps"], "grid.steps");
  if (steps < 1) throw ConfigError("grid.steps must be >= 1");
  cfg.grid = TimeGrid::linear(S, steps);

  const Json& cov = get_array(j["cov"], "cov");
  if (cov.size() != 1 && cov.size() != steps)
    throw ConfigError("cov must have one entry or one per step");
  for (std::size_t i = 0; i < cov.size(); ++i) {
    std::string cw = "cov[" + std::to_string(i) + "]";
    check_keys(cov[i], cw, {"q", "qhat"});
    cfg.cov.q.push_back(measure_from_json_or_path(cov[i]["q"], base_dir, cw + ".q"));
    cfg.cov.qhat.push_back(measure_from_json_or_path(cov[i]["qhat"], base_dir, cw + ".qhat"));
  }
  if (cov.size() == 1)
    for (std::size_t i = 1; i < steps; ++i) {
      cfg.cov.q.push_back(cfg.cov.q[0]);
      cfg.cov.qhat.push_back(cfg.cov.qhat[0]);
    }

  const Json& phi = j["phi"];
  if (!phi.is_object() || !phi.contains("kind"))
    throw ConfigError("phi must be an object with a 'kind'");
  std::string kind = get_string(phi["kind"], "phi.kind");
  if (kind == "linear") {
    check_keys(phi, "phi", {"kind", "w"}, {"b", "scale"});
    cfg.phi.kind = PredictableField::Kind::Linear;
    cfg.phi.w = get_vector(phi["w"], "phi.w");
    cfg.phi.b = phi.contains("b") ? get_number(phi["b"], "phi.b") : 0.0;
    if (phi.contains("scale")) {
      if (phi["scale"].is_number())
        cfg.phi.scale = {get_number(phi["scale"], "phi.scale")};
      else
        cfg.phi.scale = get_vector(phi["scale"], "phi.scale");
    }
  } else if (kind == "lipschitz-table") {
    check_keys(phi, "phi", {"kind", "entries"});
    cfg.phi.kind = PredictableField::Kind::LipschitzTable;
    const Json& entries = get_array(phi["entries"], "phi.entries");
    if (entries.size() != 1 && entries.size() != steps)
      throw ConfigError("phi.entries must have one entry or one per step");
    for (std::size_t i = 0; i < entries.size(); ++i) {
      std::string ew = "phi.entries[" + std::to_string(i) + "]";
      check_keys(entries[i], ew, {"z"}, {"scale"});
      cfg.phi.z.push_back(get_point(entries[i]["z"], ew + ".z"));
      cfg.phi.scale.push_back(
          entries[i].contains("scale") ? get_number(entries[i]["scale"], ew + ".scale") : 1.0);
    }
  } else {
    throw ConfigError("phi.kind must be 'linear' or 'lipschitz-table'");
  }

  cfg.R = get_count(j["R"], "R");
  if (cfg.R < 1) throw ConfigError("R must be >= 1");
  cfg.seed = get_u64(j["seed"], "seed");
  return cfg;
}

Json coupling_report_to_json(const CouplingReport& rep) {
  Json j;
  j["R"] = rep.R;
  j["generator"] = rep.generator;
  j["rhs"] = rep.rhs;
  j["rhs_se"] = rep.rhs_se;
  j["lhs_terminal"] = rep.lhs_terminal;
  j["lhs_terminal_se"] = rep.lhs_terminal_se;
  j["lhs_sup"] = rep.lhs_sup;
  j["lhs_sup_se"] = rep.lhs_sup_se;
  j["isometry_exact"] = rep.isometry_exact;
  j["isometry_mc"] = rep.isometry_mc;
  j["isometry_se"] = rep.isometry_se;
  j["step_mean"] = rep.step_mean;
  j["step_mean_se"] = rep.step_mean_se;
  j["terminal_pass"] = rep.terminal_pass;
  j["sup_pass"] = rep.sup_pass;
  j["literal_pass"] = rep.literal_pass;
  j["isometry_pass"] = rep.isometry_pass;
  j["martingale_pass"] = rep.martingale_pass;
  j["pass"] = rep.pass();
  return j;
}

std::string coupling_report_to_csv(const CouplingReport& rep) {
  std::ostringstream out;
  out << "quantity,estimate,stderr,bound,pass\n";
  auto row = [&](const char* q, double est, double se, double bound, bool pass) {
    out << q << ',' << format_double(est) << ',' << format_double(se) << ','
        << format_double(bound) << ',' << csv_bool(pass) << '\n';
  };
  row("lhs_terminal", rep.lhs_terminal, rep.lhs_terminal_se,
      rep.rhs + 3.0 * rep.lhs_terminal_se, rep.terminal_pass);
  row("lhs_sup", rep.lhs_sup, rep.lhs_sup_se, 4.0 * rep.rhs + 3.0 * rep.lhs_sup_se,
      rep.sup_pass);
  row("literal_no_factor", rep.lhs_sup, rep.lhs_sup_se, rep.rhs + 3.0 * rep.lhs_sup_se,
      rep.literal_pass);
  row("rhs", rep.rhs, rep.rhs_se, rep.rhs, true);
  row("isometry_mc", rep.isometry_mc, rep.isometry_se, rep.isometry_exact, rep.isometry_pass);
  double worst = 0.0, worst_se = 0.0;
  for (std::size_t i = 0; i < rep.step_mean.size(); ++i)
    if (std::fabs(rep.step_mean[i]) >= worst) {
      worst = std::fabs(rep.step_mean[i]);
      worst_se = rep.step_mean_se[i];
    }
  row("martingale_max_abs_step_mean", worst, worst_se, 3.0 * worst_se, rep.martingale_pass);
  return out.str();
}

// ---------------------------------------------------------------------------
// Generation configs.
// ---------------------------------------------------------------------------

DistSpec dist_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type"))
    throw ConfigError("dist must be an object with a 'type'");
  std::string type = get_string(j["type"], "dist.type");
  DistSpec d;
  if (type == "uniform-box") {
    check_keys(j, "dist", {"type", "lo", "hi"});
    d.kind = DistSpec::Kind::UniformBox;
    d.lo = get_vector(j["lo"], "dist.lo");
    d.hi = get_vector(j["hi"], "dist.hi");
  } else if (type == "gaussian") {
    check_keys(j, "dist", {"type", "mean", "sd"});
    d.kind = DistSpec::Kind::Gaussian;
    d.mean = get_vector(j["mean"], "dist.mean");
    d.sd = get_number(j["sd"], "dist.sd");
  } else if (type == "two-point-mixture") {
    check_keys(j, "dist", {"type", "a", "b", "pa"});
    d.kind = DistSpec::Kind::TwoPointMixture;
    d.a = get_point(j["a"], "dist.a");
    d.b = get_point(j["b"], "dist.b");
    d.pa = get_number(j["pa"], "dist.pa");
  } else {
    throw ConfigError("dist.type must be uniform-box, gaussian, or two-point-mixture");
  }
  d.validate();
  return d;
}

Json dist_to_json(const DistSpec& d) {
  Json j;
  switch (d.kind) {
    case DistSpec::Kind::UniformBox:
      j["type"] = "uniform-box";
      j["lo"] = d.lo;
      j["hi"] = d.hi;
      break;
    case DistSpec::Kind::Gaussian:
      j["type"] = "gaussian";
      j["mean"] = d.mean;
      j["sd"] = d.sd;
      break;
    case DistSpec::Kind::TwoPointMixture:
      j["type"] = "two-point-mixture";
      j["a"] = d.a.x;
      j["b"] = d.b.x;
      j["pa"] = d.pa;
      break;
  }
  return j;
}

GenConfig gen_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw ConfigError("config must be an object with a 'kind'");
  std::string kind = get_string(j["kind"], "kind");
  GenConfig cfg;
  if (kind == "measure") {
    check_keys(j, "config", {"kind", "name", "dist", "n", "seed"});
    cfg.kind = GenConfig::Kind::Measure;
    cfg.dist = dist_from_json(j["dist"]);
  } else if (kind == "family") {
    check_keys(j, "config", {"kind", "name", "dim", "count", "n", "p", "seed"}, {"masses"});
    cfg.kind = GenConfig::Kind::Family;
    cfg.dim = get_count(j["dim"], "dim");
    if (cfg.dim < 1) throw ConfigError("dim must be >= 1");
    cfg.count = get_count(j["count"], "count");
    if (cfg.count < 1 || cfg.count > kMaxFamilySize)
      throw ConfigError("count must be between 1 and " + std::to_string(kMaxFamilySize));
    cfg.p = get_positive(j["p"], "p");
    if (j.contains("masses")) {
      const Json& masses = get_array(j["masses"], "masses");
      if (masses.size() != cfg.count) throw ConfigError("masses must have one entry per parameter");
      for (std::size_t i = 0; i < masses.size(); ++i) {
        Rat m = get_rat(masses[i], "masses[" + std::to_string(i) + "]");
        if (sign(m) <= 0) throw ConfigError("masses must be positive");
        cfg.masses.push_back(std::move(m));
      }
    }
  } else {
    throw ConfigError("kind must be 'measure' or 'family'");
  }
  cfg.name = get_string(j["name"], "name");
  if (cfg.name.empty() || cfg.name.find('/') != std::string::npos ||
      cfg.name.find('\\') != std::string::npos || cfg.name.front() == '.')
    throw ConfigError("name must be a plain file stem");
  cfg.n = get_count(j["n"], "n");
  if (cfg.n < 1) throw ConfigError("n must be >= 1");
  cfg.seed = get_u64(j["seed"], "seed");
  return cfg;
}

}  // namespace otlab::io
