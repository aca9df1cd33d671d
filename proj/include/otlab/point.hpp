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

#ifndef OTLAB_POINT_HPP_
#define OTLAB_POINT_HPP_

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace otlab {

// A point of R^d. Coordinates are plain doubles; -0.0 is normalized to
// 0.0 on construction so equality and ordering are unambiguous.
struct Point {
  std::vector<double> x;

  Point() = default;
  explicit Point(std::vector<double> coords) : x(std::move(coords)) { normalize(); }
  Point(std::initializer_list<double> coords) : x(coords) { normalize(); }

  std::size_t dim() const { return x.size(); }
  double operator[](std::size_t i) const { return x[i]; }
  double& operator[](std::size_t i) { return x[i]; }

  void normalize() {
    for (double& c : x)
      if (c == 0.0) c = 0.0;  // collapses -0.0
  }

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x; }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  // Lexicographic; shorter vectors first. Total order used for canonical
  // atom sorting.
  friend bool operator<(const Point& a, const Point& b) {
    if (a.x.size() != b.x.size()) return a.x.size() < b.x.size();
    for (std::size_t i = 0; i < a.x.size(); ++i) {
      if (a.x[i] < b.x[i]) return true;
      if (a.x[i] > b.x[i]) return false;
    }
    return false;
  }
};

inline double dist2(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    double d = a.x[i] - b.x[i];
    s += d * d;
  }
  return s;
}

inline double dist(const Point& a, const Point& b) { return std::sqrt(dist2(a, b)); }

inline double sup_norm_dist(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.x.size(); ++i) s = std::max(s, std::fabs(a.x[i] - b.x[i]));
  return s;
}

}  // namespace otlab

#endif  // OTLAB_POINT_HPP_
