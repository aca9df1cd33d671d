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

#ifndef OTLAB_COUPLING_HPP_
#define OTLAB_COUPLING_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "otlab/measure.hpp"
#include "otlab/ot.hpp"

namespace otlab {

// Discrete time grid 0 = t_0 < ... < t_N = S with clock increments
// dk_i = k(t_{i+1}) - k(t_i) >= 0. The default clock is k_t = t.
struct TimeGrid {
  std::vector<double> times;
  std::vector<double> dk;

  std::size_t steps() const { return dk.size(); }
  double horizon() const { return times.empty() ? 0.0 : times.back(); }
  void validate() const;

  static TimeGrid linear(double S, std::size_t steps);
};

// Per-step source and target laws of the noise covariance.
struct CovariationProcess {
  std::vector<DiscreteMeasure> q, qhat;

  std::size_t steps() const { return q.size(); }
  std::size_t dim() const;
  void validate(std::size_t grid_steps) const;
};

// The integrand phi(step, a) with a per-step Lipschitz constant.
//
//   linear:          phi(i,a) = s_i * (w . a + b),   L_i = |s_i| |w|
//   lipschitz-table: phi(i,a) = s_i * |a - z_i|,     L_i = |s_i|
//
// Per-step tables (z, scale) of length 1 apply to every step.
struct PredictableField {
  enum class Kind { Linear, LipschitzTable };
  Kind kind = Kind::Linear;
  std::vector<double> w;
  double b = 0.0;
  std::vector<Point> z;
  std::vector<double> scale;

  double eval(std::size_t step, const Point& a) const;
  double lipschitz(std::size_t step) const;
  void validate(std::size_t steps, std::size_t dim) const;
};

// Spot-check of the Lipschitz declaration on all atom pairs of each step
// (tolerance 1e-9); throws ConfigError on violation.
void check_lipschitz(const PredictableField& phi, const CovariationProcess& cov);

// Sampled increments of the orthogonal noise: one centered Gaussian of
// variance w_{ij} dk_i per (step i, atom j of q_i). Every draw is a pure
// function of (seed, rep, i, j).
struct NoiseRealization {
  std::uint64_t seed = 0, rep = 0;
  std::vector<std::vector<double>> xi;
};

NoiseRealization simulate_noise(const CovariationProcess& cov, const TimeGrid& grid,
                                std::uint64_t seed, std::uint64_t rep = 0);

// Path X_{t_m} = sum_{i<m} sum_j phi(i, a_{ij}) xi_{ij}; X_0 = 0.
std::vector<double> integrate(const PredictableField& phi, const NoiseRealization& noise,
                              const CovariationProcess& cov, const TimeGrid& grid);

// Per-step optimal transport maps from q_i to qhat_i (quadratic cost),
// with the exact squared distances. Throws NonUniqueError (where = step
// index) when a step's optimal plan is not a unique map.
struct StepMaps {
  std::vector<DeterministicMap> maps;
  std::vector<double> w2sq;
};
StepMaps transport_process(const CovariationProcess& cov, SolveMode mode = SolveMode::Auto);

// Coupled path: same noise, integrand composed with the step maps.
std::vector<double> coupled_integral(const PredictableField& phi, const NoiseRealization& noise,
                                     const StepMaps& maps, const CovariationProcess& cov,
                                     const TimeGrid& grid);

// Noise indexed by the entries of per-step plans (covariance = plan mass
// times dk), plus the two marginal integrators. With a deterministic plan
// the entry index equals the source atom index and the masses equal the
// atom weights, so the same (seed, rep) reproduces simulate_noise /
// integrate / coupled_integral bit for bit.
struct PlanNoise {
  std::uint64_t seed = 0, rep = 0;
  std::vector<std::vector<double>> xi;
};
PlanNoise plan_coupling_noise(const std::vector<TransportPlan>& plans, const TimeGrid& grid,
                              std::uint64_t seed, std::uint64_t rep = 0);
std::vector<double> integrate_first_marginal(const PredictableField& phi, const PlanNoise& noise,
                                             const std::vector<TransportPlan>& plans,
                                             const TimeGrid& grid);
std::vector<double> integrate_second_marginal(const PredictableField& phi, const PlanNoise& noise,
                                              const std::vector<TransportPlan>& plans,
                                              const TimeGrid& grid);

struct ExperimentConfig {
  TimeGrid grid;
  CovariationProcess cov;
  PredictableField phi;
  std::size_t R = 0;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

// Monte Carlo estimates of both sides of the coupling estimate, with the
// hard assertions (terminal and factor-4 sup bound) and the reported-only
// literal no-factor comparison.
struct CouplingReport {
  std::size_t R = 0;
  double lhs_sup = 0.0, lhs_sup_se = 0.0;
  double lhs_terminal = 0.0, lhs_terminal_se = 0.0;
  double rhs = 0.0, rhs_se = 0.0;  // deterministic covariations: se = 0
  double isometry_exact = 0.0, isometry_mc = 0.0, isometry_se = 0.0;
  std::vector<double> step_mean, step_mean_se;  // increment means of X
  bool terminal_pass = false;
  bool sup_pass = false;
  bool literal_pass = false;  // reported, never asserted
  bool isometry_pass = false;
  bool martingale_pass = false;
  std::string generator;

  bool pass() const { return terminal_pass && sup_pass; }
};

CouplingReport run_experiment(const ExperimentConfig& cfg, SolveMode mode = SolveMode::Auto);

}  // namespace otlab

#endif  // OTLAB_COUPLING_HPP_
