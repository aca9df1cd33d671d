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

#include "otlab/cost.hpp"

#include <cmath>

#include "otlab/error.hpp"

namespace otlab {

void CostSpec::validate() const {
  if (!(p > 0.0) || !std::isfinite(p)) throw ConfigError("cost exponent must be positive and finite");
}

double cost_value(const CostSpec& spec, const Point& x, const Point& y) {
  spec.validate();
  if (x.dim() != y.dim()) throw InstanceError("cost arguments have different dimensions");
  if (spec.p == 2.0) return dist2(x, y);
  double r = (x.dim() == 1) ? std::fabs(x[0] - y[0]) : dist(x, y);
  if (spec.p == 1.0) return r;
  if (r == 0.0) return 0.0;
  return std::pow(r, spec.p);
}

CostMatrix CostMatrix::build(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                             const CostSpec& spec) {
  if (mu.dim() != nu.dim()) throw InstanceError("measures have different dimensions");
  CostMatrix out;
  out.n = mu.size();
  out.m = nu.size();
  out.c.resize(out.n * out.m);
  out.cr.resize(out.n * out.m);
  for (std::size_t i = 0; i < out.n; ++i)
    for (std::size_t j = 0; j < out.m; ++j) {
      double v = cost_value(spec, mu.atom(i).p, nu.atom(j).p);
      out.c[i * out.m + j] = v;
      out.cr[i * out.m + j] = rat_of(v);
    }
  return out;
}

}  // namespace otlab
