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

#include "otlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "otlab/error.hpp"
#include "otlab/rng.hpp"

namespace otlab {

DiscreteMeasure::DiscreteMeasure(std::vector<Point> points, std::vector<Rat> weights) {
  if (points.size() != weights.size())
    throw ConfigError("points and weights must have equal length");
  if (points.empty()) throw ConfigError("a discrete measure needs at least one atom");
  dim_ = points[0].dim();
  if (dim_ == 0) throw ConfigError("points must have dimension >= 1");
  Rat total = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].dim() != dim_) throw ConfigError("mixed point dimensions in one measure");
    for (double c : points[i].x)
      if (!std::isfinite(c)) throw ConfigError("non-finite coordinate");
    if (sign(weights[i]) < 0) throw ConfigError("negative weight");
    total += weights[i];
  }
  if (sign(total) <= 0) throw ConfigError("weights must have positive sum");

  std::vector<std::size_t> order(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });

  for (std::size_t idx : order) {
    Rat w = weights[idx] / total;
    if (sign(w) == 0) continue;
    if (!atoms_.empty() && atoms_.back().p == points[idx]) {
      atoms_.back().w += w;
    } else {
      atoms_.push_back({points[idx], w, 0.0});
    }
  }
  if (atoms_.empty()) throw ConfigError("all weights vanish");
  for (Atom& a : atoms_) a.wd = to_double(a.w);
}

std::optional<std::size_t> DiscreteMeasure::find(const Point& p) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), p,
                             [](const Atom& a, const Point& q) { return a.p < q; });
  if (it != atoms_.end() && it->p == p)
    return static_cast<std::size_t>(it - atoms_.begin());
  return std::nullopt;
}

Rat DiscreteMeasure::mass_in_box(const Point& lo, const Point& hi) const {
  Rat m = 0;
  for (const Atom& a : atoms_) {
    bool inside = true;
    for (std::size_t i = 0; i < dim_ && inside; ++i)
      inside = lo[i] <= a.p[i] && a.p[i] < hi[i];
    if (inside) m += a.w;
  }
  return m;
}

bool DiscreteMeasure::operator==(const DiscreteMeasure& other) const {
  if (dim_ != other.dim_ || atoms_.size() != other.atoms_.size()) return false;
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (atoms_[i].p != other.atoms_[i].p || atoms_[i].w != other.atoms_[i].w) return false;
  return true;
}

DiscreteMeasure make_discrete(const std::vector<Point>& points, const std::vector<double>& weights) {
  std::vector<Rat> w;
  w.reserve(weights.size());
  for (double x : weights) {
    if (!std::isfinite(x) || x < 0.0) throw ConfigError("weights must be finite and nonnegative");
    w.push_back(rat_of(x));
  }
  return DiscreteMeasure(points, w);
}

DiscreteMeasure make_discrete(const std::vector<Point>& points, const std::vector<Rat>& weights) {
  return DiscreteMeasure(points, weights);
}

const Point& DeterministicMap::apply(const Point& x) const {
  for (const auto& [src, dst] : assignment)
    if (src == x) return dst;
  throw InstanceError("map does not cover the requested point");
}

bool DeterministicMap::covers(const DiscreteMeasure& mu) const {
  for (const Atom& a : mu.atoms()) {
    bool found = false;
    for (const auto& [src, dst] : assignment)
      if (src == a.p) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

DeterministicMap identity_map(const DiscreteMeasure& mu) {
  DeterministicMap map;
  for (const Atom& a : mu.atoms()) map.assignment.emplace_back(a.p, a.p);
  return map;
}

DiscreteMeasure pushforward(const DiscreteMeasure& mu, const DeterministicMap& map) {
  std::vector<Point> pts;
  std::vector<Rat> w;
  for (const Atom& a : mu.atoms()) {
    bool found = false;
    for (const auto& [src, dst] : map.assignment)
      if (src == a.p) {
        pts.push_back(dst);
        w.push_back(a.w);
        found = true;
        break;
      }
    if (!found) throw InstanceError("map leaves a source atom uncovered");
  }
  return DiscreteMeasure(std::move(pts), std::move(w));
}

DiscreteMeasure translate(const DiscreteMeasure& mu, const Point& v) {
  if (v.dim() != mu.dim()) throw ConfigError("translation vector dimension mismatch");
  std::vector<Point> pts;
  std::vector<Rat> w;
  for (const Atom& a : mu.atoms()) {
    Point q = a.p;
    for (std::size_t i = 0; i < q.dim(); ++i) q[i] += v[i];
    q.normalize();
    pts.push_back(q);
    w.push_back(a.w);
  }
  return DiscreteMeasure(std::move(pts), std::move(w));
}

DiscreteMeasure scale(const DiscreteMeasure& mu, double factor) {
  if (!std::isfinite(factor)) throw ConfigError("scale factor must be finite");
  std::vector<Point> pts;
  std::vector<Rat> w;
  for (const Atom& a : mu.atoms()) {
    Point q = a.p;
    for (std::size_t i = 0; i < q.dim(); ++i) q[i] *= factor;
    q.normalize();
    pts.push_back(q);
    w.push_back(a.w);
  }
  return DiscreteMeasure(std::move(pts), std::move(w));
}

std::size_t DistSpec::dim() const {
  switch (kind) {
    case Kind::UniformBox:
      return lo.size();
    case Kind::Gaussian:
      return mean.size();
    case Kind::TwoPointMixture:
      return a.dim();
  }
  return 0;
}

void DistSpec::validate() const {
  switch (kind) {
    case Kind::UniformBox:
      if (lo.empty() || lo.size() != hi.size()) throw ConfigError("uniform-box needs matching lo/hi");
      for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] < hi[i])) throw ConfigError("uniform-box needs lo < hi per coordinate");
      break;
    case Kind::Gaussian:
      if (mean.empty()) throw ConfigError("gaussian needs a mean vector");
      if (!(sd > 0.0) || !std::isfinite(sd)) throw ConfigError("gaussian needs sd > 0");
      break;
    case Kind::TwoPointMixture:
      if (a.dim() == 0 || a.dim() != b.dim())
        throw ConfigError("two-point-mixture needs two points of equal dimension");
      if (!(pa >= 0.0 && pa <= 1.0)) throw ConfigError("mixture probability must lie in [0,1]");
      break;
  }
}

DiscreteMeasure sample_cloud(const DistSpec& spec, std::size_t n, std::uint64_t seed) {
  spec.validate();
  if (n < 1) throw ConfigError("sample count must be >= 1");
  std::size_t d = spec.dim();
  std::vector<Point> pts;
  std::vector<Rat> w(n, Rat(1));
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Point p;
    p.x.resize(d);
    switch (spec.kind) {
      case DistSpec::Kind::UniformBox:
        for (std::size_t c = 0; c < d; ++c) {
          double u = rng::uniform(seed, rng::kStreamCloud, i, c);
          p[c] = spec.lo[c] + u * (spec.hi[c] - spec.lo[c]);
        }
        break;
      case DistSpec::Kind::Gaussian:
        for (std::size_t c = 0; c < d; ++c)
          p[c] = spec.mean[c] + spec.sd * rng::gaussian(seed, rng::kStreamCloud, i, c);
        break;
      case DistSpec::Kind::TwoPointMixture: {
        double u = rng::uniform(seed, rng::kStreamCloud, i, 0);
        p = (u < spec.pa) ? spec.a : spec.b;
        break;
      }
    }
    p.normalize();
    pts.push_back(std::move(p));
  }
  return DiscreteMeasure(std::move(pts), std::move(w));
}

std::size_t ParamFamily::dim() const {
  if (params.empty()) return 0;
  return params[0].mu.dim();
}

Rat ParamFamily::total_mass() const {
  Rat t = 0;
  for (const ParamEntry& e : params) t += e.mass;
  return t;
}

void ParamFamily::validate() const {
  if (params.empty()) throw ConfigError("parameter family is empty");
  if (params.size() > kMaxFamilySize) throw ConfigError("parameter family exceeds 64 entries");
  if (!(p > 0.0) || !std::isfinite(p)) throw ConfigError("cost exponent must be positive");
  std::set<std::string> labels;
  std::size_t d = params[0].mu.dim();
  for (const ParamEntry& e : params) {
    if (!labels.insert(e.label).second) throw ConfigError("duplicate parameter label '" + e.label + "'");
    if (sign(e.mass) < 0) throw ConfigError("negative parameter mass at '" + e.label + "'");
    if (e.mu.dim() != d || e.nu.dim() != d)
      throw ConfigError("all measures in a family must share one dimension");
  }
  if (sign(total_mass()) <= 0) throw ConfigError("total parameter mass must be positive");
}

}  // namespace otlab
