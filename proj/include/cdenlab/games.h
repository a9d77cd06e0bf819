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

// Security-game harnesses with scripted adversary strategies.
//
// Every game takes a master seed; trial i draws from Rng::for_trial(seed, i),
// so results are reproducible and independent of trial order. Strategies are
// classical-control programs over the statevec/qrom toolkit.

#ifndef CDENLAB_GAMES_H_
#define CDENLAB_GAMES_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdenlab/f2lin.h"
#include "cdenlab/fs_cden.h"
#include "cdenlab/qrom.h"
#include "cdenlab/sig_cden.h"
#include "cdenlab/stats.h"
#include "cdenlab/statevec.h"
#include "json.hpp"

namespace cdenlab {

class Rng;

template <typename View, typename Out>
struct Strategy {
  std::string name;
  std::function<Out(const View&, Rng&)> run;
};

// ---------------------------------------------------------------------------
// Adaptive classical deletion

/// Hidden data of one index: the state is (|x⁰⟩ + (−1)^c|x¹⟩)/√2.
struct AdpDelInstance {
  uint64_t x0 = 0;
  uint64_t x1 = 0;
  bool c = false;
};

struct AdpDelView {
  size_t lambda_x = 0;
  std::vector<SparseState> states;  // register "X", one per index
  /// Set only for strategies that declare needs_hidden (harness self-tests).
  const std::vector<AdpDelInstance>* hidden = nullptr;
};

struct AdpDelAnswer {
  std::function<uint64_t(uint64_t)> f;
  size_t f_bits = 0;  // output width ℓ_i, 1..64
  uint64_t y = 0;
  uint64_t d1 = 0;
  uint64_t d2 = 0;
};

enum class FChoice { kPreCommitted, kPostState };
const char* to_string(FChoice mode);

struct AdpDelStrategy {
  std::string name;
  FChoice f_mode = FChoice::kPreCommitted;
  bool needs_hidden = false;
  std::function<std::vector<AdpDelAnswer>(const AdpDelView&, Rng&)> run;
  /// Exact winning probability of one index given its hidden data.
  std::function<double(size_t lambda_x, const AdpDelInstance&)> exact_index;
};

inline const std::string kAdpRegX = "X";

/// x⁰ ≠ x¹ is enforced by resampling.
AdpDelInstance sample_adp_instance(size_t lambda_x, Rng& rng);
SparseState adp_state(size_t lambda_x, const AdpDelInstance& inst);
/// The challenger's check for one index; throws std::invalid_argument on a
/// malformed answer.
bool adp_check(size_t lambda_x, const AdpDelInstance& inst, const AdpDelAnswer& ans);

AdpDelStrategy adp_oracle_cheat();
/// Measures X, answers y = outcome with f constant and uniform d's.
AdpDelStrategy adp_computational();
/// Hadamard-measures X, answers d¹ = outcome with f = identity, guesses y.
AdpDelStrategy adp_hadamard();
AdpDelStrategy adp_strategy_by_name(const std::string& name);

GameStats run_adp_del(const AdpDelStrategy& strategy, size_t lambda_x, size_t reps, uint64_t trials, uint64_t seed);

// ---------------------------------------------------------------------------
// Double extraction

struct DoubleExtInstance {
  uint64_t x0 = 0;
  uint64_t x1 = 0;
  bool b = false;
};

struct DoubleExtView {
  size_t lambda_x = 0;
  bool updated_variant = false;
  /// Registers "B" (1) and "X" (λx); only "X" in the updated variant.
  SparseState state;
  uint64_t hx0 = 0;
  uint64_t hx1 = 0;
  OraclePtr h;
  const DoubleExtInstance* hidden = nullptr;
};

struct DoubleExtStrategy {
  std::string name;
  bool needs_hidden = false;
  std::function<std::pair<uint64_t, uint64_t>(const DoubleExtView&, Rng&)> run;
  std::function<double(const DoubleExtView&, const DoubleExtInstance&)> exact;
};

SparseState double_ext_state(size_t lambda_x, const DoubleExtInstance& inst, bool updated_variant);

DoubleExtStrategy dx_measure_and_guess();
DoubleExtStrategy dx_oracle_cheat();
DoubleExtStrategy dx_measured_twice();
DoubleExtStrategy dx_strategy_by_name(const std::string& name);

GameStats run_double_extraction(const DoubleExtStrategy& strategy, size_t lambda_x, uint64_t trials, uint64_t seed,
                                bool updated_variant = false);

// ---------------------------------------------------------------------------
// Verifier soundness

/// What AuxSetup hands out; the harness passes (1^λ, vk) to every setup.
struct AuxInput {
  size_t lambda = 0;
  uint64_t vk = 0;
};

struct SoundnessAdvView {
  OtParams op;
  uint64_t vk = 0;
  AuxInput aux;
  const OtSignature* sig = nullptr;  // signature on the dummy message
  OraclePtr h;
  const DsKeys* sk = nullptr;        // forger self-test only
};

struct SoundnessClaim {
  uint64_t m = 0;
  OtSignature reg;
};

struct SoundnessAdversary {
  std::string name;
  bool needs_sk = false;
  std::function<SoundnessClaim(const SoundnessAdvView&, Rng&)> run;
};

struct SoundnessVerifier {
  std::string name;
  /// Acceptance probability of (m, register); sampled by the harness.
  std::function<double(const OtParams&, uint64_t vk, const AuxInput&, uint64_t m, const OtSignature&, OraclePtr)>
      accept_prob;
};

SoundnessVerifier sv_honest();
SoundnessVerifier sv_always_accept();
SoundnessVerifier sv_by_name(const std::string& name);
/// Re-labels the dummy signature as a fresh message (shares adjusted).
SoundnessAdversary sa_replay();
/// Handed the signing key; signs a fresh message.
SoundnessAdversary sa_forger();
SoundnessAdversary sa_by_name(const std::string& name);

/// Only the one-time scheme ("ot") is wired in.
GameStats run_soundness_game(const SoundnessVerifier& verifier, const SoundnessAdversary& adversary,
                             const std::string& scheme, const OtParams& op, uint64_t trials, uint64_t seed);

// ---------------------------------------------------------------------------
// Certified deniability: real vs simulated

struct DeniabilityPair {
  ExperimentRecord real;
  ExperimentRecord sim;
  /// Messages the signing oracle answered other than m*, and the ones the
  /// simulator asked for (both empty for scripted adversaries).
  std::vector<uint64_t> M;
  std::vector<uint64_t> M_S;

  nlohmann::json to_json() const;
};

DeniabilityPair run_deniability_pair(const std::string& scheme, const FsAdversary& adversary, size_t lambda,
                                     uint64_t seed);

struct MemoComparison {
  uint64_t runs = 0;
  uint64_t real_accepts = 0;
  uint64_t sim_accepts = 0;
  /// TV distance of residual histograms among accepted runs.
  double tv_accepted = 0;
  /// TV distance with rejection (⊥) as its own bucket.
  double tv_with_reject = 0;

  nlohmann::json to_json() const;
};

MemoComparison compare_residuals(const std::string& scheme, const FsAdversary& adversary, size_t lambda,
                                 uint64_t runs, uint64_t seed);

// ---------------------------------------------------------------------------
// Evidence collection

struct EvidenceReport {
  GameStats strawman;          // deletion accepted ∧ archived σ verifies
  double strawman_sim_rate = 0;  // same check on a simulated (no-signature) σ
  double strawman_advantage = 0;
  GameStats fs_honest;         // accepted ∧ archived evidence verifies
  double fs_honest_advantage = 0;
  GameStats fs_measure;        // measure-one-point adversary
  double fs_measure_accept_rate = 0;
  double fs_measure_evidence_rate = 0;
  double fs_measure_sim_evidence_rate = 0;
  double inv_A = 0;            // 1/|A|

  nlohmann::json to_json() const;
};

/// Checks an archived FS transcript memo a‖s1‖s2‖s3 against the real oracle.
bool fs_evidence_check(const FsParams& fp, const Oracle& h, uint64_t x, uint64_t memo);

EvidenceReport evidence_collection_demo(uint64_t trials, uint64_t seed, size_t lambda = 8);

// ---------------------------------------------------------------------------
// Direct product hardness

struct DphView {
  size_t lambda = 0;
  SparseState state;  // |A⟩ on register "A"
  std::function<bool(const F2Vec&)> in_A;
  std::function<bool(const F2Vec&)> in_A_perp;
  const F2Subspace* hidden = nullptr;
};

struct DphStrategy {
  std::string name;
  bool needs_hidden = false;
  std::function<std::pair<F2Vec, F2Vec>(const DphView&, Rng&)> run;
  std::function<double(const DphView&, const F2Subspace&)> exact;
};

DphStrategy dph_computational();
DphStrategy dph_hadamard();
DphStrategy dph_oracle_cheat();
DphStrategy dph_strategy_by_name(const std::string& name);

GameStats dph_game(const DphStrategy& strategy, size_t lambda, uint64_t trials, uint64_t seed);

// ---------------------------------------------------------------------------
// Many-time deletion game, scripted scenarios

/// The adversary obtains k1 + k2 signatures, deletes the first k1 honestly,
/// and re-labels each remaining one as the first deleted message. The honest
/// verifier judges the forgeries.
GameStats run_sigcd_scenario(size_t k1, size_t k2, const OtParams& op, uint64_t trials, uint64_t seed);

}  // namespace cdenlab

#endif  // CDENLAB_GAMES_H_
