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

#include "otlab/ot.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <type_traits>

#include "otlab/error.hpp"
#include "otlab/network_simplex.hpp"

namespace otlab {

namespace {

constexpr double kFloatSupportEps = 1e-9;  // face-membership threshold
constexpr double kFloatEntryEps = 1e-11;   // plan-entry extraction threshold

template <class W>
std::vector<W> weights_of(const DiscreteMeasure& mu) {
  std::vector<W> w;
  w.reserve(mu.size());
  for (const Atom& a : mu.atoms()) {
    if constexpr (std::is_same_v<W, Rat>)
      w.push_back(a.w);
    else
      w.push_back(a.wd);
  }
  return w;
}

template <class W>
const std::vector<W>& costs_of(const CostMatrix& cm);
template <>
const std::vector<Rat>& costs_of<Rat>(const CostMatrix& cm) {
  return cm.cr;
}
template <>
const std::vector<double>& costs_of<double>(const CostMatrix& cm) {
  return cm.c;
}

template <class W>
TransportPlan extract_plan(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                           const CostSpec& spec, const CostMatrix& cm,
                           const TransportSimplex<W>& s) {
  TransportPlan plan;
  plan.source = mu;
  plan.target = nu;
  plan.spec = spec;
  const std::vector<W>& f = s.flow();
  if constexpr (std::is_same_v<W, Rat>) {
    Rat total(0);
    for (std::size_t a = 0; a < f.size(); ++a)
      if (sgn(f[a]) > 0) {
        plan.entries.push_back({a / cm.m, a % cm.m, f[a], to_double(f[a])});
        total += f[a] * cm.cr[a];
      }
    plan.value_r = total;
    plan.value = to_double(total);
    plan.rational = true;
  } else {
    double total = 0.0;
    for (std::size_t a = 0; a < f.size(); ++a)
      if (f[a] > kFloatEntryEps) {
        plan.entries.push_back({a / cm.m, a % cm.m, rat_of(f[a]), f[a]});
        total += f[a] * cm.c[a];
      }
    plan.value_r = 0;
    plan.value = total;
    plan.rational = false;
  }
  return plan;
}

template <class W>
void absorb_support(const TransportSimplex<W>& s, std::size_t m,
                    std::set<std::pair<std::size_t, std::size_t>>& edges) {
  const std::vector<W>& f = s.flow();
  for (std::size_t a = 0; a < f.size(); ++a) {
    bool positive;
    if constexpr (std::is_same_v<W, Rat>)
      positive = sgn(f[a]) > 0;
    else
      positive = f[a] > kFloatSupportEps;
    if (positive) edges.insert({a / m, a % m});
  }
}

// Solve once, then decide face membership edge by edge.
//
// The optimal face is exactly the set of feasible plans supported on the
// zero-reduced-cost edges of any one optimal dual (complementary
// slackness), so edges with strictly positive reduced cost are screened
// out for free. Each remaining candidate is probed by maximizing its flow
// over the face: lexicographic costs (c, -e_a) re-optimized warm from the
// current basis. Every plan seen along the way is optimal, so all its
// support edges are absorbed, which usually empties the candidate list
// after few probes.
template <class W>
std::pair<TransportPlan, EdgeSet> solve_with_psi(const DiscreteMeasure& mu,
                                                 const DiscreteMeasure& nu, const CostSpec& spec,
                                                 const CostMatrix& cm) {
  const std::size_t arcs = cm.n * cm.m;
  TransportSimplex<W> s(weights_of<W>(mu), weights_of<W>(nu), 2);
  std::vector<W> costs(arcs * 2, W(0));
  const std::vector<W>& base = costs_of<W>(cm);
  for (std::size_t a = 0; a < arcs; ++a) costs[a * 2] = base[a];
  s.set_costs(std::move(costs));
  s.solve();

  TransportPlan plan = extract_plan<W>(mu, nu, spec, cm, s);
  std::set<std::pair<std::size_t, std::size_t>> edges;
  absorb_support(s, cm.m, edges);

  std::vector<char> candidate(arcs, 0);
  for (std::size_t a = 0; a < arcs; ++a) {
    W r = s.reduced_cost0(a);
    if constexpr (std::is_same_v<W, Rat>)
      candidate[a] = sgn(r) == 0;
    else
      candidate[a] = r <= kFloatSupportEps && r >= -kFloatSupportEps;
  }
  for (std::size_t a = 0; a < arcs; ++a) {
    if (!candidate[a]) continue;
    if (edges.count({a / cm.m, a % cm.m})) continue;
    s.set_cost_component(a, 1, W(-1));
    s.reoptimize();
    absorb_support(s, cm.m, edges);
    s.set_cost_component(a, 1, W(0));
  }

  EdgeSet psi;
  psi.edges.assign(edges.begin(), edges.end());
  return {std::move(plan), std::move(psi)};
}

EdgeSet support_at_threshold(const TransportPlan& plan, double eps) {
  EdgeSet out;
  for (const PlanEntry& e : plan.entries)
    if (plan.rational || e.md > eps) out.edges.emplace_back(e.i, e.j);
  return out;
}

}  // namespace

bool TransportPlan::has_split_row() const {
  for (std::size_t k = 0; k + 1 < entries.size(); ++k)
    if (entries[k].i == entries[k + 1].i) return true;
  return false;
}

std::optional<DeterministicMap> TransportPlan::as_map() const {
  if (has_split_row()) return std::nullopt;
  DeterministicMap map;
  for (const PlanEntry& e : entries)
    map.assignment.emplace_back(source.atom(e.i).p, target.atom(e.j).p);
  return map;
}

void TransportPlan::check_feasible() const {
  std::vector<Rat> row(source.size(), Rat(0)), col(target.size(), Rat(0));
  std::vector<double> rowd(source.size(), 0.0), cold(target.size(), 0.0);
  for (const PlanEntry& e : entries) {
    if (e.i >= source.size() || e.j >= target.size()) throw InstanceError("plan entry out of range");
    row[e.i] += e.m;
    col[e.j] += e.m;
    rowd[e.i] += e.md;
    cold[e.j] += e.md;
  }
  if (rational) {
    for (std::size_t i = 0; i < row.size(); ++i)
      if (row[i] != source.atom(i).w) throw InstanceError("plan row sum mismatch");
    for (std::size_t j = 0; j < col.size(); ++j)
      if (col[j] != target.atom(j).w) throw InstanceError("plan column sum mismatch");
  } else {
    for (std::size_t i = 0; i < rowd.size(); ++i)
      if (std::fabs(rowd[i] - source.atom(i).wd) > 1e-10)
        throw InstanceError("plan row sum mismatch");
    for (std::size_t j = 0; j < cold.size(); ++j)
      if (std::fabs(cold[j] - target.atom(j).wd) > 1e-10)
        throw InstanceError("plan column sum mismatch");
  }
}

double TransportPlan::recompute_value() const {
  double total = 0.0;
  for (const PlanEntry& e : entries)
    total += e.md * cost_value(spec, source.atom(e.i).p, target.atom(e.j).p);
  return total;
}

bool EdgeSet::contains(std::size_t i, std::size_t j) const {
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

EdgeSet plan_support(const TransportPlan& plan) {
  EdgeSet out;
  for (const PlanEntry& e : plan.entries) out.edges.emplace_back(e.i, e.j);
  return out;
}

TransportPlan solve_exact(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                          const CostSpec& spec, SolveMode mode) {
  spec.validate();
  CostMatrix cm = CostMatrix::build(mu, nu, spec);
  if (use_rational(mode, cm.n * cm.m)) {
    TransportSimplex<Rat> s(weights_of<Rat>(mu), weights_of<Rat>(nu), 1);
    s.set_costs(cm.cr);
    s.solve();
    return extract_plan<Rat>(mu, nu, spec, cm, s);
  }
  TransportSimplex<double> s(weights_of<double>(mu), weights_of<double>(nu), 1);
  s.set_costs(cm.c);
  s.solve();
  return extract_plan<double>(mu, nu, spec, cm, s);
}

BruteForceResult solve_bruteforce(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                  const CostSpec& spec) {
  spec.validate();
  if (mu.size() != nu.size()) throw InstanceError("brute force needs equal atom counts");
  const std::size_t n = mu.size();
  if (n > 8) throw InstanceError("brute force is limited to 8 atoms per side");
  const Rat& w0 = mu.atom(0).w;
  for (const Atom& a : mu.atoms())
    if (a.w != w0) throw InstanceError("brute force needs equal weights");
  for (const Atom& a : nu.atoms())
    if (a.w != w0) throw InstanceError("brute force needs equal weights");

  CostMatrix cm = CostMatrix::build(mu, nu, spec);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  BruteForceResult out;
  Rat best;
  bool first = true;
  do {
    Rat total(0);
    for (std::size_t i = 0; i < n; ++i) total += cm.rat_at(i, perm[i]);
    if (first || total < best) {
      best = total;
      out.optimal_perms.clear();
      out.optimal_perms.push_back(perm);
      first = false;
    } else if (total == best) {
      out.optimal_perms.push_back(perm);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  out.value_r = w0 * best;
  out.value = to_double(out.value_r);
  return out;
}

TransportPlan solve_1d_monotone(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                const CostSpec& spec) {
  spec.validate();
  if (mu.dim() != 1 || nu.dim() != 1) throw InstanceError("monotone coupling requires dimension 1");
  if (!(spec.p > 1.0)) throw InstanceError("monotone coupling requires exponent p > 1");
  CostMatrix cm = CostMatrix::build(mu, nu, spec);

  TransportPlan plan;
  plan.source = mu;
  plan.target = nu;
  plan.spec = spec;
  Rat total(0);
  std::size_t i = 0, j = 0;
  Rat ri = mu.atom(0).w, rj = nu.atom(0).w;
  while (true) {
    Rat t = std::min(ri, rj);
    if (sgn(t) > 0) {
      plan.entries.push_back({i, j, t, to_double(t)});
      total += t * cm.rat_at(i, j);
    }
    ri -= t;
    rj -= t;
    bool i_done = sgn(ri) == 0, j_done = sgn(rj) == 0;
    bool i_last = i + 1 == mu.size(), j_last = j + 1 == nu.size();
    if (i_done && i_last && j_done && j_last) break;
    if (i_done && i_last && (!j_done || !j_last))
      throw InstanceError("monotone sweep imbalance");
    if (j_done && j_last && (!i_done || !i_last))
      throw InstanceError("monotone sweep imbalance");
    if (i_done && !i_last) ri = mu.atom(++i).w;
    if (j_done && !j_last) rj = nu.atom(++j).w;
  }
  plan.value_r = total;
  plan.value = to_double(total);
  plan.rational = true;
  return plan;
}

double wasserstein(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p,
                   SolveMode mode) {
  if (!(p >= 1.0)) throw ConfigError("wasserstein order must satisfy p >= 1");
  CostSpec spec{p};
  TransportPlan plan = solve_exact(mu, nu, spec, mode);
  if (p == 1.0) return plan.value;
  if (p == 2.0) return std::sqrt(plan.value);
  return std::pow(plan.value, 1.0 / p);
}

EdgeSet support_union(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                      const CostSpec& spec, SolveMode mode) {
  spec.validate();
  CostMatrix cm = CostMatrix::build(mu, nu, spec);
  if (use_rational(mode, cm.n * cm.m))
    return solve_with_psi<Rat>(mu, nu, spec, cm).second;
  return solve_with_psi<double>(mu, nu, spec, cm).second;
}

FaceAnalysis analyze_face(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                          const CostSpec& spec, SolveMode mode) {
  spec.validate();
  CostMatrix cm = CostMatrix::build(mu, nu, spec);
  FaceAnalysis out;
  if (use_rational(mode, cm.n * cm.m))
    std::tie(out.plan, out.psi) = solve_with_psi<Rat>(mu, nu, spec, cm);
  else
    std::tie(out.plan, out.psi) = solve_with_psi<double>(mu, nu, spec, cm);

  EdgeSet supp = support_at_threshold(out.plan, kFloatSupportEps);
  out.unique = (out.psi == supp) && !out.plan.has_split_row();
  if (out.unique) out.map = out.plan.as_map();
  return out;
}

UniqueResult is_unique(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                       const CostSpec& spec, SolveMode mode) {
  FaceAnalysis fa = analyze_face(mu, nu, spec, mode);
  return {fa.unique, std::move(fa.map)};
}

TransportPlan lexmin_vertex(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                            const CostSpec& spec) {
  spec.validate();
  CostMatrix cm = CostMatrix::build(mu, nu, spec);
  const std::size_t arcs = cm.n * cm.m;
  if (!lexmin_available(arcs)) return solve_exact(mu, nu, spec, SolveMode::Auto);

  const std::size_t width = arcs + 1;
  TransportSimplex<Rat> s(weights_of<Rat>(mu), weights_of<Rat>(nu), width);
  std::vector<Rat> costs(arcs * width, Rat(0));
  for (std::size_t a = 0; a < arcs; ++a) {
    costs[a * width] = cm.cr[a];
    costs[a * width + 1 + a] = 1;
  }
  s.set_costs(std::move(costs));
  s.solve();
  return extract_plan<Rat>(mu, nu, spec, cm, s);
}

bool disjoint_supports(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.dim() != nu.dim()) throw InstanceError("measures have different dimensions");
  for (const Atom& a : mu.atoms())
    if (nu.find(a.p)) return false;
  return true;
}

}  // namespace otlab
