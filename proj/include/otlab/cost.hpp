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

#ifndef OTLAB_COST_HPP_
#define OTLAB_COST_HPP_

#include <cstddef>
#include <vector>

#include "otlab/measure.hpp"
#include "otlab/point.hpp"
#include "otlab/rational.hpp"

namespace otlab {

// Ground cost |x-y|^p with the Euclidean norm.
struct CostSpec {
  double p = 2.0;

  enum class Class { StrictlyConvex, Linear, StrictlyConcave };
  Class classification() const {
    if (p > 1.0) return Class::StrictlyConvex;
    if (p == 1.0) return Class::Linear;
    return Class::StrictlyConcave;
  }
  void validate() const;
};

double cost_value(const CostSpec& spec, const Point& x, const Point& y);

// Dense pairwise cost table between the atoms of two measures.
//
// Each entry is computed once in double precision and then embedded as the
// exact rational equal to that double. All exact-arithmetic decisions
// (optimality, face membership, oracle comparisons) refer to this one
// embedded matrix, so the rational solver, the brute-force enumerator, and
// the plan values are mutually consistent to the last bit.
struct CostMatrix {
  std::size_t n = 0, m = 0;
  std::vector<double> c;  // row-major, n*m
  std::vector<Rat> cr;    // exact embeddings of c

  double at(std::size_t i, std::size_t j) const { return c[i * m + j]; }
  const Rat& rat_at(std::size_t i, std::size_t j) const { return cr[i * m + j]; }

  static CostMatrix build(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                          const CostSpec& spec);
};

}  // namespace otlab

#endif  // OTLAB_COST_HPP_
