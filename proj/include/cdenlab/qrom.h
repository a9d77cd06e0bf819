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

// Simulated random oracles, reprogramming overlays and query instrumentation.

#ifndef CDENLAB_QROM_H_
#define CDENLAB_QROM_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "cdenlab/statevec.h"
#include "json.hpp"

namespace cdenlab {

class Rng;

/// A classical function {0,1}^in_bits -> {0,1}^out_bits.
class Oracle {
 public:
  virtual ~Oracle() = default;
  virtual size_t in_bits() const = 0;
  virtual size_t out_bits() const = 0;
  /// x must fit in in_bits(); throws otherwise.
  virtual uint64_t query(uint64_t x) const = 0;
  uint64_t operator()(uint64_t x) const { return query(x); }
  /// {seed, in_bits, out_bits, overlays:[...]} of the underlying stack.
  virtual nlohmann::json spec() const = 0;

 protected:
  void check_input(uint64_t x) const;
};

using OraclePtr = std::shared_ptr<const Oracle>;

/// Lazily evaluated random function: output is a keyed mix of (seed, x).
class OracleTable final : public Oracle {
 public:
  OracleTable(uint64_t seed, size_t in_bits, size_t out_bits);
  size_t in_bits() const override { return in_bits_; }
  size_t out_bits() const override { return out_bits_; }
  uint64_t query(uint64_t x) const override;
  nlohmann::json spec() const override;
  uint64_t seed() const { return seed_; }

 private:
  uint64_t seed_;
  size_t in_bits_;
  size_t out_bits_;
  uint64_t key_;
};

OraclePtr oracle_new(uint64_t seed, size_t in_bits, size_t out_bits);

/// Overrides base on the given inputs.
OraclePtr reprogram_points(OraclePtr base, std::map<uint64_t, uint64_t> points);
/// Exchanges base's outputs on a and b.
OraclePtr reprogram_swap(OraclePtr base, uint64_t a, uint64_t b);
/// w ↦ base(p ‖ w) for a p of p_bits bits.
OraclePtr restrict_prefix(OraclePtr base, uint64_t p, size_t p_bits);
/// Rebuilds an oracle stack from spec().
OraclePtr oracle_from_spec(const nlohmann::json& spec);

/// Inputs narrower than the oracle are zero-padded on the right:
/// H(x) := H(x ‖ 0…0).
uint64_t query_padded(const Oracle& o, uint64_t x, size_t x_bits);
/// Packs a ‖ b with b occupying the low b_bits bits.
inline uint64_t concat_bits(uint64_t a, uint64_t b, size_t b_bits) { return (a << b_bits) | b; }

/// |x⟩_in|y⟩_out ↦ |x⟩_in|y ⊕ O(x)⟩_out.
SparseState coherent_query(const SparseState& st, const std::string& in_reg, const std::string& out_reg,
                           const Oracle& o);

// ---------------------------------------------------------------------------
// Oracle algorithms and query traces

struct SchmidtTerm {
  double weight;          // |α_{t,i}|²
  Eigen::VectorXcd vec;   // |q_{t,i}⟩ over (in_reg, out_reg)
};

struct QueryRecord {
  size_t t = 0;
  std::map<uint64_t, double> input_weights;  // Born weight of each query input
  bool has_schmidt = false;
  std::vector<SchmidtTerm> schmidt;
};

struct QueryTrace {
  std::vector<QueryRecord> queries;
};

/// Σ_t Σ_{x∈S} weight of x at query t.
double query_weight(const QueryTrace& trace, const std::set<uint64_t>& S);

/// A T-query algorithm: step(1), query, step(2), query, …, step(T), query,
/// step(T+1). Query registers are in_reg()/out_reg() of the state.
class OracleAlgorithm {
 public:
  virtual ~OracleAlgorithm() = default;
  virtual size_t num_queries() const = 0;
  virtual SparseState initial_state() const = 0;
  virtual SparseState step(size_t t, const SparseState& st) const = 0;
  virtual std::string in_reg() const { return "QIN"; }
  virtual std::string out_reg() const { return "QOUT"; }
};

/// Applies one query to the state.
using QueryOp = std::function<SparseState(const SparseState&)>;

QueryOp classical_query_op(const OracleAlgorithm& alg, OraclePtr o);

struct RunResult {
  SparseState final_state;
  QueryTrace trace;
};

/// Joint supports above this many terms skip the Schmidt snapshot.
inline constexpr size_t kSchmidtSupportCap = size_t{1} << 10;

RunResult run_with_query(const OracleAlgorithm& alg, const QueryOp& q, bool record_schmidt = true);
RunResult run_with_oracle(const OracleAlgorithm& alg, OraclePtr o, bool record_schmidt = true);

/// Stops `alg` before a uniformly random query and measures its input.
/// Caches the deterministic pre-query states so repeated draws are cheap.
class RandomQueryExtractor {
 public:
  RandomQueryExtractor(const OracleAlgorithm& alg, OraclePtr o);
  /// Empty when the algorithm makes no queries.
  std::optional<std::pair<uint64_t, uint64_t>> sample(Rng& rng) const;

 private:
  OraclePtr oracle_;
  std::string in_reg_;
  std::vector<SparseState> pre_query_;
};

std::optional<std::pair<uint64_t, uint64_t>> extract_by_random_query(const OracleAlgorithm& alg, OraclePtr o,
                                                                     Rng& rng);

/// Compares H(k‖·) against an independent table on `probes` random suffixes.
struct PrfReport {
  size_t probes = 0;
  size_t suffix_bits = 0;
  std::vector<double> bit_freq_h;
  std::vector<double> bit_freq_g;
  double max_bit_dev_h = 0;
  double max_bit_dev_g = 0;
  size_t collisions_h = 0;  // among outputs truncated to 16 bits
  size_t collisions_g = 0;
  double expected_collisions = 0;
  bool ok = true;
  nlohmann::json to_json() const;
};

inline constexpr double kPrfBitTolerance = 0.02;

PrfReport prf_split_check(OraclePtr h, const F2Vec& k, size_t probes, uint64_t seed);

}  // namespace cdenlab

#endif  // CDENLAB_QROM_H_
