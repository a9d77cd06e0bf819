// Copyright 2026 The cdenlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: `lemmas` and `experiment`.

#ifndef CDENLAB_TOOLS_CLI_H_
#define CDENLAB_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace cdenlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// args excludes the program name. Reports go to --out when given, otherwise
/// to `out` ahead of the summary line.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cdenlab

#endif  // CDENLAB_TOOLS_CLI_H_
