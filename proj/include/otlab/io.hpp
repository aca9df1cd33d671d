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
//
// JSON/CSV serialization of measures, families, plans, and reports, plus
// parsing of the command configuration documents.  All readers validate
// strictly (unknown keys rejected) and throw ConfigError with a message
// naming the offending location; all writers are byte-deterministic.

#ifndef OTLAB_IO_HPP_
#define OTLAB_IO_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "otlab/coupling.hpp"
#include "otlab/dyadic.hpp"
#include "otlab/measure.hpp"
#include "otlab/ot.hpp"

namespace otlab::io {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Low-level helpers.
// ---------------------------------------------------------------------------

// Rejects keys outside required ∪ optional and checks every required key is
// present.  `where` names the object in error messages.
void check_keys(const Json& j, const std::string& where,
                std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional = {});

// Reads and parses a JSON file; ConfigError on IO or parse failure.
Json load_json_file(const std::string& path);

// Writes text verbatim (binary stream, LF endings as produced by the
// serializers); Error on IO failure.
void write_text_file(const std::string& path, const std::string& text);

// dump(2) plus a trailing newline.
void write_json_file(const std::string& path, const Json& j);

// Shortest round-trip decimal form of a double (used for CSV cells).
std::string format_double(double v);

// ---------------------------------------------------------------------------
// Measures and families.
// ---------------------------------------------------------------------------

// {"dim": d, "atoms": [{"x": [..], "w": w}, ..]}.  With rational_weights the
// weights are emitted as exact fraction strings ("1/3"); otherwise as JSON
// numbers.
Json measure_to_json(const DiscreteMeasure& m, bool rational_weights);
DiscreteMeasure measure_from_json(const Json& j, const std::string& where = "measure");

// Accepts either an inline measure object or a path string (resolved
// relative to base_dir) naming a measure file.
DiscreteMeasure measure_from_json_or_path(const Json& j, const std::string& base_dir,
                                          const std::string& where);

// {"mE": total, "params": [{"lambda": id, "m": mass, "mu": .., "nu": ..}],
//  "p": exponent}.  Masses and weights are emitted as fraction strings.
Json family_to_json(const ParamFamily& fam);
ParamFamily family_from_json(const Json& j);

// ---------------------------------------------------------------------------
// Plans and edge sets.
// ---------------------------------------------------------------------------

// {"value": v, "entries": [{"i": i, "j": j, "m": m}, ..]}; masses as
// fraction strings when the plan was solved in rational mode.
Json plan_to_json(const TransportPlan& plan);
std::string plan_to_csv(const TransportPlan& plan);

// Sorted bare list of [i, j] pairs.
Json edges_to_json(const EdgeSet& edges);
std::string edges_to_csv(const EdgeSet& edges);

// ---------------------------------------------------------------------------
// Dyadic approximation reports.
// ---------------------------------------------------------------------------

Json approx_report_to_json(const ApproxReport& rep);
std::string gaps_to_csv(const ApproxReport& rep);    // k,k2,gap,bound,pass
std::string errors_to_csv(const ApproxReport& rep);  // k,err,bound,pass

// ---------------------------------------------------------------------------
// Command configuration documents.
// ---------------------------------------------------------------------------

// solve / psi: {"mu": measure-or-path, "nu": measure-or-path, "p": exponent}.
struct SolveConfig {
  DiscreteMeasure mu, nu;
  double p = 2.0;
};
SolveConfig solve_from_json(const Json& j, const std::string& base_dir);

// dyadic: {"family": family-or-path, "K": level}.
struct DyadicConfig {
  ParamFamily family;
  int K = 0;
};
DyadicConfig dyadic_from_json(const Json& j, const std::string& base_dir);

// couple: {"grid": {"S", "steps", "clock"}, "cov": [{"q", "qhat"}, ..],
//          "phi": {"kind", ..}, "R", "seed"}.  A length-1 "cov" array is
// recycled across all steps.
ExperimentConfig experiment_from_json(const Json& j, const std::string& base_dir);

Json coupling_report_to_json(const CouplingReport& rep);
std::string coupling_report_to_csv(const CouplingReport& rep);

// gen: {"kind": "measure", "name", "dist": {..}, "n", "seed"}
//   or {"kind": "family", "name", "dim", "count", "n", "p", "seed",
//       "masses"?}.
struct GenConfig {
  enum class Kind { Measure, Family };
  Kind kind = Kind::Measure;
  std::string name;
  // measure
  DistSpec dist;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  // family
  std::size_t dim = 1;
  std::size_t count = 0;
  double p = 2.0;
  std::vector<Rat> masses;  // empty: every parameter gets mass 1
};
GenConfig gen_from_json(const Json& j);

DistSpec dist_from_json(const Json& j);
Json dist_to_json(const DistSpec& d);

}  // namespace otlab::io

#endif  // OTLAB_IO_HPP_
