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

// Report envelope shared by every CLI command.

#ifndef CDENLAB_REPORT_H_
#define CDENLAB_REPORT_H_

#include <string>

#include "json.hpp"

namespace cdenlab {

inline constexpr const char* kToolVersion = "0.1.0";

/// {tool_version, config, results, wall_time_ms}.
nlohmann::json make_report(const nlohmann::json& config, const nlohmann::json& results, double wall_time_ms);

/// Indented JSON with a trailing newline; key order is sorted, so equal
/// reports serialize to equal bytes.
std::string render_report(const nlohmann::json& report);

}  // namespace cdenlab

#endif  // CDENLAB_REPORT_H_
