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

#ifndef OTLAB_RATIONAL_HPP
#define OTLAB_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

namespace otlab {

// Exact rational scalar.  Doubles embed exactly (they are dyadic
// rationals), so instance data given as doubles can be carried through
// the solvers without rounding.
using Rat = mpq_class;

/// Exact rational value of a finite double.
Rat rat_of(double x);

double to_double(const Rat& q);

/// Canonical string form: "n" for integers, "n/d" otherwise.
std::string rat_string(const Rat& q);

/// Parses "n", "n/d", or a plain decimal such as "0.25" / "-1.5e-3",
/// all read exactly.  Throws ConfigError on anything else.
Rat rat_parse(const std::string& s);

inline int sign(const Rat& q) { return sgn(q); }

}  // namespace otlab

#endif  // OTLAB_RATIONAL_HPP
