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

#include "otlab/coupling.hpp"

#include <cmath>

#include "otlab/error.hpp"
#include "otlab/parallel.hpp"
#include "otlab/rng.hpp"

namespace otlab {

void TimeGrid::validate() const {
  if (times.size() < 2) throw ConfigError("time grid needs at least one step");
  if (times.front() != 0.0) throw ConfigError("time grid must start at 0");
  for (std::size_t i = 0; i + 1 < times.size(); ++i)
    if (!(times[i] < times[i + 1])) throw ConfigError("time grid must be strictly increasing");
  if (dk.size() != times.size() - 1) throw ConfigError("clock increments must match step count");
  for (double d : dk)
    if (!(d >= 0.0) || !std::isfinite(d)) throw ConfigError("clock increments must be >= 0");
}

TimeGrid TimeGrid::linear(double S, std::size_t steps) {
  if (!(S > 0.0) || !std::isfinite(S)) throw ConfigError("horizon must be positive");
  if (steps < 1) throw ConfigError("need at least one time step");
  TimeGrid g;
  g.times.resize(steps + 1);
  g.dk.resize(steps);
  for (std::size_t i = 0; i <= steps; ++i)
    g.times[i] = S * static_cast<double>(i) / static_cast<double>(steps);
  g.times[steps] = S;
  for (std::size_t i = 0; i < steps; ++i) g.dk[i] = g.times[i + 1] - g.times[i];
  g.validate();
  return g;
}

std::size_t CovariationProcess::dim() const { return q.empty() ? 0 : q[0].dim(); }

void CovariationProcess::validate(std::size_t grid_steps) const {
  if (q.size() != grid_steps || qhat.size() != grid_steps)
    throw ConfigError("covariation needs one (q, qhat) pair per time step");
  std::size_t d = dim();
  for (std::size_t i = 0; i < q.size(); ++i)
    if (q[i].dim() != d || qhat[i].dim() != d)
      throw ConfigError("covariation measures must share one dimension");
}

double PredictableField::eval(std::size_t step, const Point& a) const {
  double s = scale.empty() ? 1.0 : scale[scale.size() == 1 ? 0 : step];
  if (kind == Kind::Linear) {
    double dot = b;
    for (std::size_t c = 0; c < w.size(); ++c) dot += w[c] * a[c];
    return s * dot;
  }
  const Point& zc = z[z.size() == 1 ? 0 : step];
  return s * dist(a, zc);
}

double PredictableField::lipschitz(std::size_t step) const {
  double s = scale.empty() ? 1.0 : scale[scale.size() == 1 ? 0 : step];
  if (kind == Kind::Linear) {
    double n2 = 0.0;
    for (double c : w) n2 += c * c;
    return std::fabs(s) * std::sqrt(n2);
  }
  return std::fabs(s);
}

void PredictableField::validate(std::size_t steps, std::size_t d) const {
  if (!scale.empty() && scale.size() != 1 && scale.size() != steps)
    throw ConfigError("scale table must have one entry or one per step");
  for (double s : scale)
    if (!std::isfinite(s)) throw ConfigError("non-finite scale");
  if (kind == Kind::Linear) {
    if (w.size() != d) throw ConfigError("linear field weight vector must match dimension");
    for (double c : w)
      if (!std::isfinite(c)) throw ConfigError("non-finite field weight");
    if (!std::isfinite(b)) throw ConfigError("non-finite field offset");
  } else {
    if (z.empty() || (z.size() != 1 && z.size() != steps))
      throw ConfigError("reference-point table must have one entry or one per step");
    for (const Point& p : z)
      if (p.dim() != d) throw ConfigError("reference point dimension mismatch");
  }
}

void check_lipschitz(const PredictableField& phi, const CovariationProcess& cov) {
  for (std::size_t i = 0; i < cov.steps(); ++i) {
    double L = phi.lipschitz(i);
    std::vector<const Point*> pts;
    for (const Atom& a : cov.q[i].atoms()) pts.push_back(&a.p);
    for (const Atom& a : cov.qhat[i].atoms()) pts.push_back(&a.p);
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        double lhs = std::fabs(phi.eval(i, *pts[a]) - phi.eval(i, *pts[b]));
        if (lhs > L * dist(*pts[a], *pts[b]) + 1e-9)
          throw ConfigError("declared Lipschitz constant violated at step " + std::to_string(i));
      }
  }
}

NoiseRealization simulate_noise(const CovariationProcess& cov, const TimeGrid& grid,
                                std::uint64_t seed, std::uint64_t rep) {
  grid.validate();
  cov.validate(grid.steps());
  NoiseRealization out;
  out.seed = seed;
  out.rep = rep;
  out.xi.resize(grid.steps());
  for (std::size_t i = 0; i < grid.steps(); ++i) {
    const DiscreteMeasure& qi = cov.q[i];
    out.xi[i].resize(qi.size());
    for (std::size_t j = 0; j < qi.size(); ++j) {
      double sd = std::sqrt(qi.atom(j).wd * grid.dk[i]);
      out.xi[i][j] = sd * rng::gaussian(seed, rng::kStreamNoise, rep, i, j);
    }
  }
  return out;
}

std::vector<double> integrate(const PredictableField& phi, const NoiseRealization& noise,
                              const CovariationProcess& cov, const TimeGrid& grid) {
  const std::size_t N = grid.steps();
  std::vector<double> path(N + 1, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    double inc = 0.0;
    for (std::size_t j = 0; j < cov.q[i].size(); ++j)
      inc += phi.eval(i, cov.q[i].atom(j).p) * noise.xi[i][j];
    path[i + 1] = path[i] + inc;
  }
  return path;
}

StepMaps transport_process(const CovariationProcess& cov, SolveMode mode) {
  StepMaps out;
  CostSpec quad{2.0};
  for (std::size_t i = 0; i < cov.steps(); ++i) {
    FaceAnalysis fa = analyze_face(cov.q[i], cov.qhat[i], quad, mode);
    if (!fa.unique || !fa.map)
      throw NonUniqueError("optimal plan at step " + std::to_string(i) + " is not a unique map",
                           std::to_string(i));
    out.maps.push_back(std::move(*fa.map));
    out.w2sq.push_back(fa.plan.value);
  }
  return out;
}

std::vector<double> coupled_integral(const PredictableField& phi, const NoiseRealization& noise,
                                     const StepMaps& maps, const CovariationProcess& cov,
                                     const TimeGrid& grid) {
  const std::size_t N = grid.steps();
  if (maps.maps.size() != N) throw InstanceError("one transport map per step required");
  std::vector<double> path(N + 1, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    double inc = 0.0;
    for (std::size_t j = 0; j < cov.q[i].size(); ++j)
      inc += phi.eval(i, maps.maps[i].apply(cov.q[i].atom(j).p)) * noise.xi[i][j];
    path[i + 1] = path[i] + inc;
  }
  return path;
}

PlanNoise plan_coupling_noise(const std::vector<TransportPlan>& plans, const TimeGrid& grid,
                              std::uint64_t seed, std::uint64_t rep) {
  grid.validate();
  if (plans.size() != grid.steps()) throw InstanceError("one plan per time step required");
  PlanNoise out;
  out.seed = seed;
  out.rep = rep;
  out.xi.resize(plans.size());
  for (std::size_t i = 0; i < plans.size(); ++i) {
    plans[i].check_feasible();
    out.xi[i].resize(plans[i].entries.size());
    for (std::size_t l = 0; l < plans[i].entries.size(); ++l) {
      double sd = std::sqrt(plans[i].entries[l].md * grid.dk[i]);
      out.xi[i][l] = sd * rng::gaussian(seed, rng::kStreamNoise, rep, i, l);
    }
  }
  return out;
}

namespace {

std::vector<double> integrate_marginal(const PredictableField& phi, const PlanNoise& noise,
                                       const std::vector<TransportPlan>& plans,
                                       const TimeGrid& grid, bool second) {
  const std::size_t N = grid.steps();
  std::vector<double> path(N + 1, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    double inc = 0.0;
    for (std::size_t l = 0; l < plans[i].entries.size(); ++l) {
      const PlanEntry& e = plans[i].entries[l];
      const Point& a = second ? plans[i].target.atom(e.j).p : plans[i].source.atom(e.i).p;
      inc += phi.eval(i, a) * noise.xi[i][l];
    }
    path[i + 1] = path[i] + inc;
  }
  return path;
}

}  // namespace

std::vector<double> integrate_first_marginal(const PredictableField& phi, const PlanNoise& noise,
                                             const std::vector<TransportPlan>& plans,
                                             const TimeGrid& grid) {
  return integrate_marginal(phi, noise, plans, grid, false);
}

std::vector<double> integrate_second_marginal(const PredictableField& phi, const PlanNoise& noise,
                                              const std::vector<TransportPlan>& plans,
                                              const TimeGrid& grid) {
  return integrate_marginal(phi, noise, plans, grid, true);
}

namespace {

struct MeanSe {
  double mean = 0.0, se = 0.0;
};

// Plain left-to-right mean and standard error; the summation order is
// fixed so results do not depend on the worker count.
MeanSe mean_se(const std::vector<double>& v) {
  MeanSe out;
  const std::size_t n = v.size();
  if (n == 0) return out;
  double sum = 0.0;
  for (double x : v) sum += x;
  out.mean = sum / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double x : v) {
      double d = x - out.mean;
      ss += d * d;
    }
    out.se = std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
  }
  return out;
}

}  // namespace

CouplingReport run_experiment(const ExperimentConfig& cfg, SolveMode mode) {
  cfg.grid.validate();
  cfg.cov.validate(cfg.grid.steps());
  cfg.phi.validate(cfg.grid.steps(), cfg.cov.dim());
  if (cfg.R < 1) throw ConfigError("replication count must be >= 1");
  check_lipschitz(cfg.phi, cfg.cov);

  const std::size_t N = cfg.grid.steps();
  StepMaps maps = transport_process(cfg.cov, mode);

  CouplingReport rep;
  rep.R = cfg.R;
  rep.generator = rng::kGeneratorName;

  // Deterministic right side and exact discretized isometry value.
  double rhs = 0.0, iso = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    double L = cfg.phi.lipschitz(i);
    rhs += L * L * maps.w2sq[i] * cfg.grid.dk[i];
    double s = 0.0;
    for (std::size_t j = 0; j < cfg.cov.q[i].size(); ++j) {
      double f = cfg.phi.eval(i, cfg.cov.q[i].atom(j).p);
      s += f * f * cfg.cov.q[i].atom(j).wd;
    }
    iso += s * cfg.grid.dk[i];
  }
  rep.rhs = rhs;
  rep.rhs_se = 0.0;
  rep.isometry_exact = iso;

  std::vector<double> sup2(cfg.R), term2(cfg.R), xs2(cfg.R);
  std::vector<double> incs(cfg.R * N);
  parallel_for(cfg.R, cfg.threads, [&](std::size_t r) {
    NoiseRealization noise = simulate_noise(cfg.cov, cfg.grid, cfg.seed, r);
    std::vector<double> x = integrate(cfg.phi, noise, cfg.cov, cfg.grid);
    std::vector<double> xh = coupled_integral(cfg.phi, noise, maps, cfg.cov, cfg.grid);
    double worst = 0.0;
    for (std::size_t m = 0; m <= N; ++m) {
      double d = x[m] - xh[m];
      worst = std::max(worst, d * d);
    }
    sup2[r] = worst;
    double dT = x[N] - xh[N];
    term2[r] = dT * dT;
    xs2[r] = x[N] * x[N];
    for (std::size_t i = 0; i < N; ++i) incs[r * N + i] = x[i + 1] - x[i];
  });

  MeanSe ms_sup = mean_se(sup2), ms_term = mean_se(term2), ms_iso = mean_se(xs2);
  rep.lhs_sup = ms_sup.mean;
  rep.lhs_sup_se = ms_sup.se;
  rep.lhs_terminal = ms_term.mean;
  rep.lhs_terminal_se = ms_term.se;
  rep.isometry_mc = ms_iso.mean;
  rep.isometry_se = ms_iso.se;

  rep.step_mean.resize(N);
  rep.step_mean_se.resize(N);
  rep.martingale_pass = true;
  std::vector<double> step(cfg.R);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t r = 0; r < cfg.R; ++r) step[r] = incs[r * N + i];
    MeanSe ms = mean_se(step);
    rep.step_mean[i] = ms.mean;
    rep.step_mean_se[i] = ms.se;
    if (std::fabs(ms.mean) > 3.0 * ms.se) rep.martingale_pass = false;
  }

  rep.terminal_pass = rep.lhs_terminal <= rep.rhs + 3.0 * rep.lhs_terminal_se;
  rep.sup_pass = rep.lhs_sup <= 4.0 * rep.rhs + 3.0 * rep.lhs_sup_se;
  rep.literal_pass = rep.lhs_sup <= rep.rhs + 3.0 * rep.lhs_sup_se;
  rep.isometry_pass = std::fabs(rep.isometry_mc - rep.isometry_exact) <= 3.0 * rep.isometry_se;
  return rep;
}

}  // namespace otlab
