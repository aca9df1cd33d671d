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

#ifndef OTLAB_NETWORK_SIMPLEX_HPP_
#define OTLAB_NETWORK_SIMPLEX_HPP_

#include <cstddef>
#include <queue>
#include <vector>

#include "otlab/error.hpp"
#include "otlab/rational.hpp"

namespace otlab {

// Primal network simplex for the dense transportation problem
//
//   minimize   sum_{ij} c_{ij} x_{ij}
//   subject to row sums = supply, column sums = demand, x >= 0,
//
// specialized in two ways:
//
//  * The scalar type W is either Rat (exact) or double (epsilon-guarded).
//
//  * Costs are LEXICOGRAPHIC vectors of width L: an arc's cost is a tuple
//    (c_0, ..., c_{L-1}) and tuples compare lexicographically. L = 1 is the
//    ordinary problem. With costs ((c_a), (-1 at one arc)) the solver
//    maximizes that arc's flow over the set of optimal plans, and with
//    ((c_a), e_0, e_1, ...) it finds the lexicographically smallest optimal
//    vertex. One pivot loop serves all three uses.
//
// Pivot rule: Bland's — the entering arc is the lowest-id arc with
// lexicographically negative reduced cost, and the leaving arc is the
// lowest-id minimizer of the ratio test. This makes every output a
// deterministic function of the input and prevents cycling even on the
// (heavily degenerate) transportation polytope.
//
// Arc ids are i*m + j. The basis is a spanning tree on n row nodes and
// m column nodes; it is rebuilt (parents + potentials) after every pivot,
// which is O((n+m)L) and dominated by the O(nmL) entering-arc scan anyway.
template <class W>
class TransportSimplex {
 public:
  TransportSimplex(std::vector<W> supply, std::vector<W> demand, std::size_t lex_width)
      : n_(supply.size()),
        m_(demand.size()),
        L_(lex_width),
        supply_(std::move(supply)),
        demand_(std::move(demand)) {
    if (n_ == 0 || m_ == 0) throw InstanceError("transportation problem needs nonempty sides");
    if (L_ == 0) throw InstanceError("lexicographic width must be >= 1");
    costs_.assign(n_ * m_ * L_, W(0));
    flow_.assign(n_ * m_, W(0));
    basic_.assign(n_ * m_, 0);
  }

  std::size_t rows() const { return n_; }
  std::size_t cols() const { return m_; }
  std::size_t lex_width() const { return L_; }

  void set_costs(std::vector<W> costs) {
    if (costs.size() != n_ * m_ * L_) throw InstanceError("cost vector has wrong size");
    costs_ = std::move(costs);
  }
  void set_cost_component(std::size_t arc, std::size_t l, const W& v) {
    costs_[arc * L_ + l] = v;
  }
  const W& cost_component(std::size_t arc, std::size_t l) const { return costs_[arc * L_ + l]; }

  // Full solve: fresh northwest-corner basis, then pivot to optimality.
  void solve() {
    check_balance();
    build_initial_basis();
    rebuild_tree();
    pivot_loop();
    verify();
  }

  // Re-optimize after a cost change, keeping the current (feasible) basis.
  void reoptimize() {
    rebuild_tree();
    pivot_loop();
    verify();
  }

  const std::vector<W>& flow() const { return flow_; }
  bool in_basis(std::size_t arc) const { return basic_[arc] != 0; }
  std::size_t pivot_count() const { return pivots_; }

  W objective(std::size_t l) const {
    W total(0);
    for (std::size_t a = 0; a < n_ * m_; ++a)
      if (!is_zero(flow_[a])) total += flow_[a] * costs_[a * L_ + l];
    return total;
  }

  // Lexicographic sign of the reduced cost of an arc under the current
  // potentials: -1, 0, or +1. Nonnegative everywhere off the basis at
  // optimality.
  int reduced_sign(std::size_t arc) const {
    std::size_t i = arc / m_, j = arc % m_;
    for (std::size_t l = 0; l < L_; ++l) {
      W r = costs_[arc * L_ + l] - pot_[i * L_ + l] - pot_[(n_ + j) * L_ + l];
      int s = sign_of(r);
      if (s != 0) return s;
    }
    return 0;
  }

  // First-component reduced cost (for complementary-slackness screening).
  W reduced_cost0(std::size_t arc) const {
    std::size_t i = arc / m_, j = arc % m_;
    return costs_[arc * L_] - pot_[i * L_] - pot_[(n_ + j) * L_];
  }

 private:
  static constexpr bool exact() { return std::is_same_v<W, Rat>; }

  int sign_of(const W& v) const {
    if constexpr (exact()) {
      return sgn(v);
    } else {
      if (v > opt_eps_) return 1;
      if (v < -opt_eps_) return -1;
      return 0;
    }
  }
  bool is_zero(const W& v) const {
    if constexpr (exact()) {
      return sgn(v) == 0;
    } else {
      return v <= flow_eps_ && v >= -flow_eps_;
    }
  }

  void check_balance() const {
    W s(0);
    for (const W& a : supply_) {
      if (sign_nonneg(a) < 0) throw InstanceError("negative supply");
      s += a;
    }
    W d(0);
    for (const W& b : demand_) {
      if (sign_nonneg(b) < 0) throw InstanceError("negative demand");
      d += b;
    }
    W gap = s - d;
    if constexpr (exact()) {
      if (sgn(gap) != 0) throw InstanceError("unbalanced transportation problem");
    } else {
      if (gap > feas_eps_ || gap < -feas_eps_) throw InstanceError("unbalanced transportation problem");
    }
  }
  int sign_nonneg(const W& v) const {
    if constexpr (exact()) {
      return sgn(v);
    } else {
      return v < -feas_eps_ ? -1 : 1;
    }
  }

  // Northwest-corner rule. Advancing exactly one index per step yields
  // exactly n + m - 1 basic arcs, with zero-flow basic arcs on degenerate
  // ties — a valid (degenerate) starting tree.
  void build_initial_basis() {
    std::fill(flow_.begin(), flow_.end(), W(0));
    std::fill(basic_.begin(), basic_.end(), 0);
    std::vector<W> ra = supply_, rb = demand_;
    std::size_t i = 0, j = 0;
    while (true) {
      std::size_t arc = i * m_ + j;
      basic_[arc] = 1;
      W t = (ra[i] < rb[j]) ? ra[i] : rb[j];
      if (is_zero(t)) t = W(0);
      flow_[arc] = t;
      ra[i] -= t;
      rb[j] -= t;
      if (is_zero(ra[i])) ra[i] = W(0);
      if (is_zero(rb[j])) rb[j] = W(0);
      if (i == n_ - 1 && j == m_ - 1) break;
      if (i < n_ - 1 && (sign_of_flow(ra[i]) == 0 || j == m_ - 1))
        ++i;
      else
        ++j;
    }
  }
  int sign_of_flow(const W& v) const {
    if constexpr (exact()) {
      return sgn(v);
    } else {
      return v > flow_eps_ ? 1 : (v < -flow_eps_ ? -1 : 0);
    }
  }

  // Rebuild parent pointers and potentials from the basic arcs.
  // Node ids: 0..n-1 rows, n..n+m-1 columns. Root is node 0; potentials
  // satisfy u_i + v_j = c_{ij} componentwise on every basic arc.
  void rebuild_tree() {
    std::size_t nodes = n_ + m_;
    adj_.assign(nodes, {});
    for (std::size_t a = 0; a < n_ * m_; ++a)
      if (basic_[a]) {
        std::size_t i = a / m_, j = a % m_;
        adj_[i].push_back(a);
        adj_[n_ + j].push_back(a);
      }
    parent_.assign(nodes, kNone);
    parent_arc_.assign(nodes, kNone);
    depth_.assign(nodes, 0);
    order_.clear();
    order_.reserve(nodes);
    std::vector<char> seen(nodes, 0);
    std::queue<std::size_t> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
      std::size_t v = q.front();
      q.pop();
      order_.push_back(v);
      for (std::size_t a : adj_[v]) {
        std::size_t i = a / m_, j = a % m_;
        std::size_t w = (v == i) ? n_ + j : i;
        if (!seen[w]) {
          seen[w] = 1;
          parent_[w] = v;
          parent_arc_[w] = a;
          depth_[w] = depth_[v] + 1;
          q.push(w);
        }
      }
    }
    if (order_.size() != nodes) throw InstanceError("basis does not span the bipartite graph");

    pot_.assign(nodes * L_, W(0));
    for (std::size_t idx = 1; idx < order_.size(); ++idx) {
      std::size_t v = order_[idx];
      std::size_t a = parent_arc_[v];
      std::size_t i = a / m_, j = a % m_;
      std::size_t other = (v == i) ? n_ + j : i;
      for (std::size_t l = 0; l < L_; ++l)
        pot_[v * L_ + l] = costs_[a * L_ + l] - pot_[other * L_ + l];
    }
  }

  void pivot_loop() {
    const std::size_t arcs = n_ * m_;
    while (true) {
      std::size_t entering = kNone;
      for (std::size_t a = 0; a < arcs; ++a)
        if (!basic_[a] && reduced_sign(a) < 0) {
          entering = a;
          break;
        }
      if (entering == kNone) return;
      pivot(entering);
      if (++pivots_ > kPivotLimit) throw InstanceError("pivot limit exceeded");
    }
  }

  // Apply one pivot on the cycle closed by `entering`.
  //
  // Walking from either endpoint up to the least common ancestor, the
  // orientation alternates; the sign of the flow change on a path arc is
  // determined by the side and by whether the walk leaves a row node or a
  // column node (checked against the 2x2 cycle by hand):
  //   row-endpoint side:  leave a row node -> -theta, a column node -> +theta
  //   col-endpoint side:  leave a column node -> -theta, a row node -> +theta
  void pivot(std::size_t entering) {
    std::size_t ei = entering / m_, ej = entering % m_;
    std::size_t a_node = ei, b_node = n_ + ej;

    plus_.clear();
    minus_.clear();
    plus_.push_back(entering);
    std::size_t x = a_node, y = b_node;
    while (x != y) {
      if (depth_[x] >= depth_[y]) {
        (x < n_ ? minus_ : plus_).push_back(parent_arc_[x]);
        x = parent_[x];
      } else {
        (y >= n_ ? minus_ : plus_).push_back(parent_arc_[y]);
        y = parent_[y];
      }
    }

    std::size_t leaving = kNone;
    W t(0);
    for (std::size_t a : minus_) {
      if (leaving == kNone || flow_[a] < t || (flow_[a] == t && a < leaving)) {
        t = flow_[a];
        leaving = a;
      }
    }
    if (leaving == kNone) throw InstanceError("pivot cycle has no leaving arc");

    for (std::size_t a : plus_) flow_[a] += t;
    for (std::size_t a : minus_) flow_[a] -= t;
    flow_[leaving] = W(0);
    if constexpr (!exact()) {
      for (std::size_t a : minus_)
        if (is_zero(flow_[a])) flow_[a] = 0.0;
    }
    basic_[entering] = 1;
    basic_[leaving] = 0;
    rebuild_tree();
  }

  // Internal certificate: primal feasibility and lexicographic dual
  // feasibility of the final basis.
  void verify() const {
    for (std::size_t a = 0; a < n_ * m_; ++a) {
      if (sign_nonneg(flow_[a]) < 0) throw InstanceError("negative flow after solve");
      if (!basic_[a] && reduced_sign(a) < 0)
        throw InstanceError("dual feasibility certificate failed");
    }
    for (std::size_t i = 0; i < n_; ++i) {
      W s(0);
      for (std::size_t j = 0; j < m_; ++j) s += flow_[i * m_ + j];
      check_eq(s, supply_[i], "row sum mismatch after solve");
    }
    for (std::size_t j = 0; j < m_; ++j) {
      W s(0);
      for (std::size_t i = 0; i < n_; ++i) s += flow_[i * m_ + j];
      check_eq(s, demand_[j], "column sum mismatch after solve");
    }
  }
  void check_eq(const W& a, const W& b, const char* msg) const {
    W gap = a - b;
    if constexpr (exact()) {
      if (sgn(gap) != 0) throw InstanceError(msg);
    } else {
      if (gap > feas_eps_ || gap < -feas_eps_) throw InstanceError(msg);
    }
  }

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  static constexpr std::size_t kPivotLimit = 1000000;

  std::size_t n_, m_, L_;
  std::vector<W> supply_, demand_;
  std::vector<W> costs_;  // flat, arc-major: costs_[arc*L + l]
  std::vector<W> flow_;
  std::vector<char> basic_;

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> parent_, parent_arc_, order_;
  std::vector<std::size_t> depth_;
  std::vector<W> pot_;
  std::vector<std::size_t> plus_, minus_;
  std::size_t pivots_ = 0;

  // Floating-mode guards (unused in exact mode): dual feasibility within
  // 1e-9, flows treated as zero below 1e-11, marginal sums within 1e-10.
  double opt_eps_ = 1e-9;
  double flow_eps_ = 1e-11;
  double feas_eps_ = 1e-10;
};

}  // namespace otlab

#endif  // OTLAB_NETWORK_SIMPLEX_HPP_
