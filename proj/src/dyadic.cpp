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

#include "otlab/dyadic.hpp"

#include <cmath>
#include <map>

#include "otlab/error.hpp"

namespace otlab {

namespace {

void check_level(int k) {
  if (k < 0 || k > kMaxLevel) throw ConfigError("resolution level must lie in [0, 20]");
}

}  // namespace

DyadicIndex cell_of(const Point& x, int k) {
  check_level(k);
  DyadicIndex idx;
  idx.k = k;
  idx.n.reserve(x.dim());
  for (double c : x.x) {
    if (!std::isfinite(c)) throw InstanceError("non-finite coordinate has no cell");
    double scaled = std::floor(std::ldexp(c, k));
    if (std::fabs(scaled) > 4.6e18) throw InstanceError("coordinate too large for cell indexing");
    idx.n.push_back(static_cast<std::int64_t>(scaled));
  }
  return idx;
}

Point cell_center(const DyadicIndex& idx) {
  check_level(idx.k);
  Point p;
  p.x.reserve(idx.n.size());
  for (std::int64_t ni : idx.n)
    p.x.push_back(std::ldexp(static_cast<double>(ni) + 0.5, -idx.k));
  p.normalize();
  return p;
}

std::pair<Point, Point> cell_box(const DyadicIndex& idx) {
  check_level(idx.k);
  Point lo, hi;
  for (std::int64_t ni : idx.n) {
    lo.x.push_back(std::ldexp(static_cast<double>(ni), -idx.k));
    hi.x.push_back(std::ldexp(static_cast<double>(ni) + 1.0, -idx.k));
  }
  lo.normalize();
  hi.normalize();
  return {lo, hi};
}

bool cell_contains(const DyadicIndex& idx, const Point& x) {
  if (x.dim() != idx.n.size()) throw InstanceError("cell and point dimensions differ");
  auto [lo, hi] = cell_box(idx);
  for (std::size_t i = 0; i < x.dim(); ++i)
    if (!(lo[i] <= x[i] && x[i] < hi[i])) return false;
  return true;
}

FamilyContext::FamilyContext(ParamFamily family, bool allow_nonunique, SolveMode mode)
    : family_(std::move(family)) {
  family_.validate();
  const std::size_t count = family_.params.size();
  included_.assign(count, 0);
  unique_.assign(count, 0);
  fallback_.assign(count, 0);
  split_resolved_.assign(count, 0);
  plans_.resize(count);
  psis_.resize(count);
  maps_.resize(count);
  CostSpec spec{family_.p};
  for (std::size_t idx = 0; idx < count; ++idx) {
    const ParamEntry& e = family_.params[idx];
    if (sign(e.mass) == 0) continue;
    included_[idx] = 1;
    FaceAnalysis fa = analyze_face(e.mu, e.nu, spec, mode);
    rational_ = rational_ && fa.plan.rational;
    unique_[idx] = fa.unique ? 1 : 0;
    if (fa.unique) {
      maps_[idx] = std::move(fa.map);
    } else if (allow_nonunique) {
      TransportPlan lex = lexmin_vertex(e.mu, e.nu, spec);
      rational_ = rational_ && lex.rational;
      fallback_[idx] = 1;
      // Resolve any split source atom to its lowest-index target so a
      // genuine (flagged) map exists for the approximation scheme.
      DeterministicMap m;
      std::size_t row = static_cast<std::size_t>(-1);
      for (const PlanEntry& pe : lex.entries) {
        if (pe.i == row) {
          split_resolved_[idx] = 1;
          continue;
        }
        row = pe.i;
        m.assignment.emplace_back(lex.source.atom(pe.i).p, lex.target.atom(pe.j).p);
      }
      maps_[idx] = std::move(m);
      plans_[idx] = std::move(lex);
      psis_[idx] = std::move(fa.psi);
      continue;
    }
    plans_[idx] = std::move(fa.plan);
    psis_[idx] = std::move(fa.psi);
  }
}

const DeterministicMap& FamilyContext::map_of(std::size_t idx) const {
  if (idx >= maps_.size()) throw InstanceError("parameter index out of range");
  if (!maps_[idx])
    throw NonUniqueError("no unique optimal transport map at parameter '" +
                             family_.params[idx].label + "'",
                         family_.params[idx].label);
  return *maps_[idx];
}

bool FamilyContext::any_fallback() const {
  for (char f : fallback_)
    if (f) return true;
  return false;
}

bool FamilyContext::any_split_resolved() const {
  for (char f : split_resolved_)
    if (f) return true;
  return false;
}

std::size_t FamilyContext::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < family_.params.size(); ++i)
    if (family_.params[i].label == label) return i;
  throw InstanceError("unknown parameter label '" + label + "'");
}

StepTransport build_Tk(const FamilyContext& ctx, int k) {
  check_level(k);
  StepTransport tk;
  tk.k = k;
  tk.per_param.resize(ctx.size());
  for (std::size_t idx = 0; idx < ctx.size(); ++idx) {
    if (!ctx.included(idx)) continue;
    const DeterministicMap& map = ctx.map_of(idx);  // throws NonUniqueError if absent
    StepTransport::PerParam& pp = tk.per_param[idx];
    pp.included = true;
    const DiscreteMeasure& mu = ctx.family().params[idx].mu;
    pp.cell.reserve(mu.size());
    pp.center.reserve(mu.size());
    for (const Atom& a : mu.atoms()) {
      DyadicIndex cell = cell_of(map.apply(a.p), k);
      pp.center.push_back(cell_center(cell));
      pp.cell.push_back(std::move(cell));
    }
  }
  return tk;
}

StepTransport build_Tk(const ParamFamily& family, int k, bool allow_nonunique, SolveMode mode) {
  FamilyContext ctx(family, allow_nonunique, mode);
  return build_Tk(ctx, k);
}

bool b_membership(const FamilyContext& ctx, const std::string& label, const Point& x,
                  const DyadicIndex& idx) {
  std::size_t pi = ctx.index_of(label);
  if (!ctx.included(pi)) throw InstanceError("parameter '" + label + "' has zero mass: no plan");
  const ParamEntry& e = ctx.family().params[pi];
  auto ai = e.mu.find(x);
  if (!ai) throw InstanceError("point is not an atom of the source measure");
  if (ctx.unique(pi)) {
    for (const PlanEntry& pe : ctx.plan_of(pi).entries)
      if (pe.i == *ai && cell_contains(idx, e.nu.atom(pe.j).p)) return true;
  } else {
    for (const auto& [i, j] : ctx.psi_of(pi).edges)
      if (i == *ai && cell_contains(idx, e.nu.atom(j).p)) return true;
  }
  return false;
}

std::vector<PushRow> pushforward_check(const FamilyContext& ctx, const StepTransport& tk) {
  std::vector<PushRow> rows;
  for (std::size_t idx = 0; idx < ctx.size(); ++idx) {
    if (!ctx.included(idx)) continue;
    const ParamEntry& e = ctx.family().params[idx];
    const StepTransport::PerParam& pp = tk.per_param[idx];
    std::map<DyadicIndex, Rat> cell_mass;
    for (std::size_t a = 0; a < e.mu.size(); ++a) cell_mass[pp.cell[a]] += e.mu.atom(a).w;
    for (const auto& [cell, lhs] : cell_mass) {
      auto [lo, hi] = cell_box(cell);
      Rat rhs = e.nu.mass_in_box(lo, hi);
      bool pass = ctx.rational() ? (lhs == rhs)
                                 : std::fabs(to_double(Rat(lhs - rhs))) <= 1e-12;
      rows.push_back({e.label, cell, lhs, rhs, pass});
    }
  }
  return rows;
}

namespace {

// sum_λ m(λ) sum_x w(x) |A(λ,x) - B(λ,x)| for two per-atom point tables.
double integrated_distance(const FamilyContext& ctx,
                           const std::vector<std::vector<Point>>& a,
                           const std::vector<std::vector<Point>>& b) {
  double total = 0.0;
  for (std::size_t idx = 0; idx < ctx.size(); ++idx) {
    if (!ctx.included(idx)) continue;
    const ParamEntry& e = ctx.family().params[idx];
    for (std::size_t i = 0; i < e.mu.size(); ++i)
      total += to_double(Rat(e.mass * e.mu.atom(i).w)) * dist(a[idx][i], b[idx][i]);
  }
  return total;
}

std::vector<std::vector<Point>> centers_of(const StepTransport& tk) {
  std::vector<std::vector<Point>> out(tk.per_param.size());
  for (std::size_t idx = 0; idx < tk.per_param.size(); ++idx)
    out[idx] = tk.per_param[idx].center;
  return out;
}

std::vector<std::vector<Point>> exact_targets(const FamilyContext& ctx) {
  std::vector<std::vector<Point>> out(ctx.size());
  for (std::size_t idx = 0; idx < ctx.size(); ++idx) {
    if (!ctx.included(idx)) continue;
    const DeterministicMap& map = ctx.map_of(idx);
    const DiscreteMeasure& mu = ctx.family().params[idx].mu;
    out[idx].reserve(mu.size());
    for (const Atom& a : mu.atoms()) out[idx].push_back(map.apply(a.p));
  }
  return out;
}

}  // namespace

double cauchy_gap(const FamilyContext& ctx, int k, int k2) {
  if (k2 < k) throw ConfigError("cauchy gap needs k2 >= k");
  StepTransport ta = build_Tk(ctx, k), tb = build_Tk(ctx, k2);
  return integrated_distance(ctx, centers_of(ta), centers_of(tb));
}

double approx_error(const FamilyContext& ctx, int K) {
  StepTransport tk = build_Tk(ctx, K);
  return integrated_distance(ctx, centers_of(tk), exact_targets(ctx));
}

double cauchy_bound(std::size_t dim, int k, double mass_total) {
  return std::sqrt(static_cast<double>(dim)) * std::ldexp(mass_total, -k);
}

double error_bound(std::size_t dim, int K, double mass_total) {
  return std::sqrt(static_cast<double>(dim)) * std::ldexp(mass_total, -(K + 1));
}

bool ApproxReport::all_pass() const {
  for (const GapRow& g : gaps)
    if (!g.pass) return false;
  for (const ErrRow& e : errors)
    if (!e.pass) return false;
  return errors_monotone && pushforward_ok;
}

ApproxReport dyadic_report(const FamilyContext& ctx, int K) {
  check_level(K);
  ApproxReport rep;
  rep.K = K;
  rep.dim = ctx.family().dim();
  rep.mass_total = ctx.family().mE();
  rep.rational = ctx.rational();
  rep.nonunique_fallback = ctx.any_fallback();
  rep.split_resolved = ctx.any_split_resolved();

  std::vector<StepTransport> levels;
  levels.reserve(K + 1);
  for (int k = 0; k <= K; ++k) levels.push_back(build_Tk(ctx, k));
  std::vector<std::vector<std::vector<Point>>> centers;
  centers.reserve(K + 1);
  for (const StepTransport& tk : levels) centers.push_back(centers_of(tk));
  std::vector<std::vector<Point>> exact = exact_targets(ctx);

  for (int k = 0; k <= K; ++k)
    for (int k2 = k + 1; k2 <= K; ++k2) {
      double gap = integrated_distance(ctx, centers[k], centers[k2]);
      double bound = cauchy_bound(rep.dim, k, rep.mass_total);
      rep.gaps.push_back({k, k2, gap, bound, gap <= bound});
    }

  for (int k = 0; k <= K; ++k) {
    double err = integrated_distance(ctx, centers[k], exact);
    double bound = error_bound(rep.dim, k, rep.mass_total);
    rep.errors.push_back({k, err, bound, err <= bound});
  }
  rep.errors_monotone = true;
  for (std::size_t i = 0; i + 1 < rep.errors.size(); ++i)
    if (!(rep.errors[i + 1].err <= rep.errors[i].err)) rep.errors_monotone = false;

  rep.pushforward_ok = true;
  rep.pushforward_rows = 0;
  for (const StepTransport& tk : levels) {
    std::vector<PushRow> rows = pushforward_check(ctx, tk);
    rep.pushforward_rows += rows.size();
    for (const PushRow& r : rows)
      if (!r.pass) rep.pushforward_ok = false;
  }
  return rep;
}

}  // namespace otlab
