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

#ifndef OTLAB_OT_HPP_
#define OTLAB_OT_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "otlab/cost.hpp"
#include "otlab/measure.hpp"
#include "otlab/rational.hpp"

namespace otlab {

// Arithmetic selection. Auto solves exactly when the instance has at most
// kRationalEdgeLimit edges and in guarded floating point beyond.
enum class SolveMode { Auto, Exact, Floating };

inline constexpr std::size_t kRationalEdgeLimit = 400;

inline bool use_rational(SolveMode mode, std::size_t edges) {
  switch (mode) {
    case SolveMode::Exact:
      return true;
    case SolveMode::Floating:
      return false;
    case SolveMode::Auto:
      return edges <= kRationalEdgeLimit;
  }
  return true;
}

struct PlanEntry {
  std::size_t i = 0, j = 0;
  Rat m;
  double md = 0.0;
};

// A sparse coupling between two discrete measures, with its cost value.
struct TransportPlan {
  DiscreteMeasure source, target;
  CostSpec spec;
  std::vector<PlanEntry> entries;  // sorted by (i, j); strictly positive mass
  Rat value_r;                     // exact value (rational mode only)
  double value = 0.0;
  bool rational = true;

  bool has_split_row() const;
  // The induced map when every source atom has a single target.
  std::optional<DeterministicMap> as_map() const;
  // Throws InstanceError unless row/column sums match the marginals
  // (exactly in rational mode, within 1e-10 otherwise).
  void check_feasible() const;
  double recompute_value() const;
};

struct EdgeSet {
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // sorted

  bool contains(std::size_t i, std::size_t j) const;
  std::size_t size() const { return edges.size(); }
  bool operator==(const EdgeSet& o) const { return edges == o.edges; }
  bool operator!=(const EdgeSet& o) const { return !(*this == o); }
};

EdgeSet plan_support(const TransportPlan& plan);

// Minimum-cost coupling by network simplex.
TransportPlan solve_exact(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                          const CostSpec& spec, SolveMode mode = SolveMode::Auto);

// Exhaustive oracle over all n! permutation couplings of two equal-weight
// measures with the same atom count n <= 8. Returns the optimal value and
// every optimal permutation.
struct BruteForceResult {
  Rat value_r;
  double value = 0.0;
  std::vector<std::vector<std::size_t>> optimal_perms;
};
BruteForceResult solve_bruteforce(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                  const CostSpec& spec);

// Quantile (sorted-order) coupling in one dimension; optimal for p > 1.
TransportPlan solve_1d_monotone(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                const CostSpec& spec);

// p-th root of the optimal transport cost for |x-y|^p, p >= 1.
double wasserstein(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p,
                   SolveMode mode = SolveMode::Auto);

// Union of the supports of ALL optimal plans. An edge belongs to the
// result iff its flow can be made positive somewhere on the optimal face.
EdgeSet support_union(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                      const CostSpec& spec, SolveMode mode = SolveMode::Auto);

// True plus the induced map iff the optimal plan is unique and is a map.
struct UniqueResult {
  bool unique = false;
  std::optional<DeterministicMap> map;
};
UniqueResult is_unique(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                       const CostSpec& spec, SolveMode mode = SolveMode::Auto);

// One optimal plan, the full optimizer support union, and the uniqueness
// verdict from a single solver run (what cmd-level consumers need).
struct FaceAnalysis {
  TransportPlan plan;
  EdgeSet psi;
  bool unique = false;
  std::optional<DeterministicMap> map;
};
FaceAnalysis analyze_face(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                          const CostSpec& spec, SolveMode mode = SolveMode::Auto);

// The lexicographically smallest optimal vertex (flows compared in arc-id
// order). Exact, and limited to instances within kRationalEdgeLimit; larger
// instances fall back to the deterministic pivot-rule vertex.
TransportPlan lexmin_vertex(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                            const CostSpec& spec);
inline bool lexmin_available(std::size_t edges) { return edges <= kRationalEdgeLimit; }

// Whether the two supports share no point (relevant to concave exponents).
bool disjoint_supports(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

}  // namespace otlab

#endif  // OTLAB_OT_HPP_
