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

#ifndef OTLAB_MEASURE_HPP_
#define OTLAB_MEASURE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "otlab/point.hpp"
#include "otlab/rational.hpp"

namespace otlab {

// One atom of a discrete measure. The weight is kept exactly as a
// rational; `wd` caches its double value for floating-point consumers.
struct Atom {
  Point p;
  Rat w;
  double wd = 0.0;
};

// A finitely supported probability measure on R^d.
//
// Canonical form enforced at construction: atoms sorted lexicographically
// by coordinates, duplicates (exact coordinate equality) merged by summing
// weights, zero-weight atoms dropped, weights normalized so they sum to
// exactly 1 as rationals.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  DiscreteMeasure(std::vector<Point> points, std::vector<Rat> weights);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return atoms_.size(); }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const Atom& atom(std::size_t i) const { return atoms_[i]; }

  // Index of the atom at exactly `p`, if present.
  std::optional<std::size_t> find(const Point& p) const;

  // Total weight of atoms lying in the half-open box [lo, hi).
  Rat mass_in_box(const Point& lo, const Point& hi) const;

  bool operator==(const DiscreteMeasure& other) const;
  bool operator!=(const DiscreteMeasure& other) const { return !(*this == other); }

 private:
  std::size_t dim_ = 0;
  std::vector<Atom> atoms_;
};

DiscreteMeasure make_discrete(const std::vector<Point>& points, const std::vector<double>& weights);
DiscreteMeasure make_discrete(const std::vector<Point>& points, const std::vector<Rat>& weights);

// A point-to-point assignment defined on a finite set of source points.
struct DeterministicMap {
  std::vector<std::pair<Point, Point>> assignment;

  // Image of x; throws InstanceError if x is not covered.
  const Point& apply(const Point& x) const;
  bool covers(const DiscreteMeasure& mu) const;
};

DeterministicMap identity_map(const DiscreteMeasure& mu);

// Image measure of mu under the map; every atom of mu must be covered.
DiscreteMeasure pushforward(const DiscreteMeasure& mu, const DeterministicMap& map);

// Translate / affinely rescale every atom (weights unchanged).
DiscreteMeasure translate(const DiscreteMeasure& mu, const Point& v);
DiscreteMeasure scale(const DiscreteMeasure& mu, double factor);

// Descriptor for sample_cloud.
struct DistSpec {
  enum class Kind { UniformBox, Gaussian, TwoPointMixture };
  Kind kind = Kind::UniformBox;
  // uniform-box: per-coordinate bounds lo[i] <= x_i < hi[i].
  std::vector<double> lo, hi;
  // gaussian: mean vector, isotropic standard deviation.
  std::vector<double> mean;
  double sd = 1.0;
  // two-point-mixture: P(a) = pa, P(b) = 1 - pa.
  Point a, b;
  double pa = 0.5;

  std::size_t dim() const;
  void validate() const;
};

// n equal-weight draws; fully determined by (spec, n, seed). Coincident
// draws merge per DiscreteMeasure construction.
DiscreteMeasure sample_cloud(const DistSpec& spec, std::size_t n, std::uint64_t seed);

// One parameter value λ with its mass and marginal pair.
struct ParamEntry {
  std::string label;
  Rat mass;
  double mass_d = 0.0;
  DiscreteMeasure mu;
  DiscreteMeasure nu;
};

// A finite weighted parameter space with a shared cost exponent.
struct ParamFamily {
  std::vector<ParamEntry> params;
  double p = 2.0;

  std::size_t dim() const;
  Rat total_mass() const;
  double mE() const { return to_double(total_mass()); }
  void validate() const;
};

inline constexpr std::size_t kMaxFamilySize = 64;

}  // namespace otlab

#endif  // OTLAB_MEASURE_HPP_
