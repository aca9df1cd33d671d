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

#ifndef OTLAB_DYADIC_HPP_
#define OTLAB_DYADIC_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "otlab/measure.hpp"
#include "otlab/ot.hpp"
#include "otlab/point.hpp"

namespace otlab {

// Resolution levels are capped so that cell indices of coordinates up to
// 1e4 stay far inside int64 range.
inline constexpr int kMaxLevel = 20;

// The half-open cell A = prod_i [n_i/2^k, (n_i+1)/2^k).
struct DyadicIndex {
  int k = 0;
  std::vector<std::int64_t> n;

  bool operator==(const DyadicIndex& o) const { return k == o.k && n == o.n; }
  bool operator!=(const DyadicIndex& o) const { return !(*this == o); }
  bool operator<(const DyadicIndex& o) const {
    if (k != o.k) return k < o.k;
    return n < o.n;
  }
};

// Index of the cell containing x at level k: n_i = floor(x_i * 2^k).
DyadicIndex cell_of(const Point& x, int k);

// The cell's center, coordinates (n_i + 1/2) / 2^k (exact dyadic doubles).
Point cell_center(const DyadicIndex& idx);

// Half-open membership test and the cell's box corners.
bool cell_contains(const DyadicIndex& idx, const Point& x);
std::pair<Point, Point> cell_box(const DyadicIndex& idx);

// Per-parameter solved transport data for one family, computed once and
// shared by every level of the approximation scheme.
//
// Zero-mass parameters are recorded but excluded from maps, checks, and
// integrals (the hypotheses only need to hold almost everywhere).
// Parameters whose optimal plan is not a unique map get a transport map
// only when `allow_nonunique` is set: then the lexicographically smallest
// optimal vertex is selected and any split source atom is resolved to its
// lowest-index target, with both fallbacks flagged.
class FamilyContext {
 public:
  FamilyContext(ParamFamily family, bool allow_nonunique = false,
                SolveMode mode = SolveMode::Auto);

  const ParamFamily& family() const { return family_; }
  std::size_t size() const { return family_.params.size(); }

  bool included(std::size_t idx) const { return included_[idx]; }
  bool unique(std::size_t idx) const { return unique_[idx]; }
  bool has_map(std::size_t idx) const { return maps_[idx].has_value(); }
  // Throws NonUniqueError naming the parameter when no map is available.
  const DeterministicMap& map_of(std::size_t idx) const;
  const TransportPlan& plan_of(std::size_t idx) const { return plans_[idx]; }
  const EdgeSet& psi_of(std::size_t idx) const { return psis_[idx]; }
  bool used_fallback(std::size_t idx) const { return fallback_[idx]; }
  bool split_resolved(std::size_t idx) const { return split_resolved_[idx]; }
  bool any_fallback() const;
  bool any_split_resolved() const;
  bool rational() const { return rational_; }

  std::size_t index_of(const std::string& label) const;  // throws on unknown label

 private:
  ParamFamily family_;
  bool rational_ = true;
  std::vector<char> included_, unique_, fallback_, split_resolved_;
  std::vector<TransportPlan> plans_;
  std::vector<EdgeSet> psis_;
  std::vector<std::optional<DeterministicMap>> maps_;
};

// The level-k piecewise-constant transport: per included parameter, each
// source atom's assigned cell (of its exact image) and that cell's center.
struct StepTransport {
  int k = 0;
  struct PerParam {
    bool included = false;
    std::vector<DyadicIndex> cell;
    std::vector<Point> center;
  };
  std::vector<PerParam> per_param;
};

StepTransport build_Tk(const FamilyContext& ctx, int k);
StepTransport build_Tk(const ParamFamily& family, int k, bool allow_nonunique = false,
                       SolveMode mode = SolveMode::Auto);

// True iff some optimal target of atom x at the named parameter lies in
// the given cell (the unique plan's targets when unique, otherwise any
// edge of the optimizer support union).
bool b_membership(const FamilyContext& ctx, const std::string& label, const Point& x,
                  const DyadicIndex& idx);

// One row of the pushforward identity check: mass assigned to the cell's
// center by the level-k map against the target mass of the cell itself.
struct PushRow {
  std::string label;
  DyadicIndex cell;
  Rat lhs, rhs;
  bool pass = false;
};
std::vector<PushRow> pushforward_check(const FamilyContext& ctx, const StepTransport& tk);

// Integrated distance between two levels of the scheme:
//   sum_λ m(λ) sum_x w(x) |T^k(λ,x) - T^{k2}(λ,x)|.
double cauchy_gap(const FamilyContext& ctx, int k, int k2);

// Integrated distance between level K and the exact maps.
double approx_error(const FamilyContext& ctx, int K);

double cauchy_bound(std::size_t dim, int k, double mass_total);    // sqrt(d) 2^-k m(E)
double error_bound(std::size_t dim, int K, double mass_total);     // sqrt(d) 2^-(K+1) m(E)

// Aggregated multi-level report for a family.
struct GapRow {
  int k = 0, k2 = 0;
  double gap = 0.0, bound = 0.0;
  bool pass = false;
};
struct ErrRow {
  int k = 0;
  double err = 0.0, bound = 0.0;
  bool pass = false;
};
struct ApproxReport {
  int K = 0;
  std::size_t dim = 0;
  double mass_total = 0.0;
  std::vector<GapRow> gaps;     // all 0 <= k < k2 <= K
  std::vector<ErrRow> errors;   // K' = 0..K
  bool errors_monotone = false;
  bool pushforward_ok = false;
  std::size_t pushforward_rows = 0;
  bool nonunique_fallback = false;
  bool split_resolved = false;
  bool rational = true;

  bool all_pass() const;
};

ApproxReport dyadic_report(const FamilyContext& ctx, int K);

}  // namespace otlab

#endif  // OTLAB_DYADIC_HPP_
