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

// Monte Carlo bookkeeping for security games and two-sided bound reports.

#ifndef CDENLAB_STATS_H_
#define CDENLAB_STATS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace cdenlab {

struct Interval {
  double lo = 0;
  double hi = 1;
};

/// 95% Wilson score interval for `wins` successes out of `trials`.
Interval wilson95(uint64_t wins, uint64_t trials);

struct GameStats {
  std::string game;
  nlohmann::json params = nlohmann::json::object();
  uint64_t trials = 0;
  uint64_t wins = 0;
  double estimate = 0;
  Interval ci95;
  uint64_t seed = 0;
  /// Left at 0 unless timing is requested, so reports stay reproducible.
  double wall_time_ms = 0;

  /// Per-trial outcomes, in trial order.
  std::vector<uint8_t> outcomes;
  /// Exactly computed per-trial winning probabilities, when the game has them.
  std::vector<double> exact;

  void record(bool win);
  void record(bool win, double exact_prob);
  /// Recomputes estimate and ci95 from the counters.
  void finalize();

  std::optional<double> exact_mean() const;
  /// Binomial standard deviation of the estimate at probability p.
  double sigma_at(double p) const;

  nlohmann::json to_json(bool per_trial = false) const;
  /// Header plus one summary row, or one row per trial.
  std::string to_csv(bool per_trial = false) const;
  /// `game=… estimate=… ci95=[…,…] trials=…`
  std::string summary() const;
};

inline constexpr double kBoundTolerance = 1e-9;

struct BoundReport {
  std::string lemma;
  nlohmann::json instance = nlohmann::json::object();
  double lhs = 0;
  double rhs = 0;
  double slack = 0;
  bool holds = true;
  nlohmann::json extra = nlohmann::json::object();

  nlohmann::json to_json() const;
};

/// lhs ≤ rhs, up to kBoundTolerance.
BoundReport make_bound(std::string lemma, nlohmann::json instance, double lhs, double rhs);

/// Summary of a lemma suite: {lemma_id, instances, violations, max_violation}.
struct SuiteSummary {
  std::string lemma_id;
  uint64_t instances = 0;
  uint64_t violations = 0;
  double max_violation = 0;
  nlohmann::json details = nlohmann::json::array();

  void add(const BoundReport& r, bool keep_detail = false);
  nlohmann::json to_json() const;
};

/// Fixed-precision rendering used in every report ("%.12g").
std::string fmt_num(double v);

}  // namespace cdenlab

#endif  // CDENLAB_STATS_H_
