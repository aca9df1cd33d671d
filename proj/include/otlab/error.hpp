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

#ifndef OTLAB_ERROR_HPP
#define OTLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace otlab {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed configuration or serialized input (schema violations,
/// unparsable files, out-of-range run parameters).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

/// A structurally valid instance that cannot be processed: dimension
/// mismatches, empty supports, unsupported sizes, solver breakdowns.
class InstanceError : public Error {
 public:
  explicit InstanceError(const std::string& what) : Error(what) {}
};

/// The optimal plan of an instance is not a unique map, so no transport
/// map can be extracted.  `where` names the offending parameter value or
/// time step.
class NonUniqueError : public InstanceError {
 public:
  NonUniqueError(const std::string& what, std::string where)
      : InstanceError(what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

}  // namespace otlab

#endif  // OTLAB_ERROR_HPP
