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

#include "cdenlab/report.h"

namespace cdenlab {

nlohmann::json make_report(const nlohmann::json& config, const nlohmann::json& results, double wall_time_ms) {
  nlohmann::json j;
  j["tool_version"] = kToolVersion;
  j["config"] = config;
  j["results"] = results.is_array() ? results : nlohmann::json::array({results});
  j["wall_time_ms"] = wall_time_ms;
  return j;
}

std::string render_report(const nlohmann::json& report) { return report.dump(2) + "\n"; }

}  // namespace cdenlab
