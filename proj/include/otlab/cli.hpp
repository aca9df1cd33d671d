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

#ifndef OTLAB_CLI_HPP_
#define OTLAB_CLI_HPP_

namespace otlab::cli {

// Full command-line entry point.  Returns the process exit code:
//   0  success
//   2  configuration / usage error
//   3  instance or solver error (including non-unique transport maps)
//   4  a checked bound failed
//   1  unexpected internal error
int run(int argc, char** argv);

}  // namespace otlab::cli

#endif  // OTLAB_CLI_HPP_
