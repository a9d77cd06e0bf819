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

#include "cdenlab/stats.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace cdenlab {

Interval wilson95(uint64_t wins, uint64_t trials) {
  if (trials == 0) return {0, 1};
  constexpr double z = 1.959963984540054;
  double n = static_cast<double>(trials);
  double p = static_cast<double>(wins) / n;
  double z2 = z * z;
  double denom = 1 + z2 / n;
  double center = (p + z2 / (2 * n)) / denom;
  double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  // Clamp, and keep the point estimate inside despite rounding at p ∈ {0, 1}.
  return {std::min(p, std::max(0.0, center - half)), std::max(p, std::min(1.0, center + half))};
}

void GameStats::record(bool win) {
  ++trials;
  if (win) ++wins;
  outcomes.push_back(win ? 1 : 0);
}

void GameStats::record(bool win, double exact_prob) {
  record(win);
  exact.push_back(exact_prob);
}

void GameStats::finalize() {
  estimate = trials ? static_cast<double>(wins) / static_cast<double>(trials) : 0.0;
  ci95 = wilson95(wins, trials);
}

std::optional<double> GameStats::exact_mean() const {
  if (exact.empty()) return std::nullopt;
  return std::accumulate(exact.begin(), exact.end(), 0.0) / static_cast<double>(exact.size());
}

double GameStats::sigma_at(double p) const {
  if (trials == 0) return 0;
  return std::sqrt(std::max(0.0, p * (1 - p)) / static_cast<double>(trials));
}

std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

nlohmann::json GameStats::to_json(bool per_trial) const {
  nlohmann::json j;
  j["game"] = game;
  j["params"] = params;
  j["trials"] = trials;
  j["wins"] = wins;
  j["estimate"] = estimate;
  j["ci95"] = {ci95.lo, ci95.hi};
  char seed_hex[24];
  std::snprintf(seed_hex, sizeof seed_hex, "0x%llx", static_cast<unsigned long long>(seed));
  j["seed"] = seed_hex;
  j["wall_time_ms"] = wall_time_ms;
  if (auto m = exact_mean()) j["exact_mean"] = *m;
  if (per_trial) j["outcomes"] = outcomes;
  return j;
}

std::string GameStats::to_csv(bool per_trial) const {
  std::ostringstream os;
  if (per_trial) {
    os << "game,trial,win" << (exact.empty() ? "" : ",exact_prob") << "\n";
    for (size_t i = 0; i < outcomes.size(); ++i) {
      os << game << ',' << i << ',' << int(outcomes[i]);
      if (!exact.empty()) os << ',' << fmt_num(exact[i]);
      os << "\n";
    }
    return os.str();
  }
  os << "game,trials,wins,estimate,ci95_lo,ci95_hi,seed\n";
  os << game << ',' << trials << ',' << wins << ',' << fmt_num(estimate) << ',' << fmt_num(ci95.lo) << ','
     << fmt_num(ci95.hi) << ',' << seed << "\n";
  return os.str();
}

std::string GameStats::summary() const {
  char buf[256];
  std::snprintf(buf, sizeof buf, "game=%s estimate=%.6f ci95=[%.6f,%.6f] trials=%llu", game.c_str(), estimate,
                ci95.lo, ci95.hi, static_cast<unsigned long long>(trials));
  return buf;
}

nlohmann::json BoundReport::to_json() const {
  return {{"lemma", lemma}, {"instance", instance}, {"lhs", lhs},   {"rhs", rhs},
          {"slack", slack}, {"holds", holds},       {"extra", extra}};
}

BoundReport make_bound(std::string lemma, nlohmann::json instance, double lhs, double rhs) {
  BoundReport r;
  r.lemma = std::move(lemma);
  r.instance = std::move(instance);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.holds = r.slack >= -kBoundTolerance;
  return r;
}

void SuiteSummary::add(const BoundReport& r, bool keep_detail) {
  ++instances;
  if (!r.holds) {
    ++violations;
    max_violation = std::max(max_violation, -r.slack);
  }
  if (keep_detail || !r.holds) details.push_back(r.to_json());
}

nlohmann::json SuiteSummary::to_json() const {
  return {{"lemma_id", lemma_id},
          {"instances", instances},
          {"violations", violations},
          {"max_violation", max_violation},
          {"details", details}};
}

}  // namespace cdenlab
