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

// Coset-state Fiat-Shamir proofs with certified deniability.
//
// A proof is Σ_{a∈A} (−1)^{a·s} |a⟩_A |s1^a, s2^a, s3^a⟩ where every branch is a
// Fiat-Shamir Schnorr transcript whose randomness is H(k‖a) and whose
// challenge is H(a‖x‖s1^a) mod q. Deletion hands the whole state back; the
// verifier uncomputes the transcripts and projects A onto |A_{0,s}⟩.
//
// Oracle inputs are zero-padded on the right to the oracle width, so the
// default 32-bit oracle serves every λ ≤ 12.

#ifndef CDENLAB_FS_CDEN_H_
#define CDENLAB_FS_CDEN_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "cdenlab/f2lin.h"
#include "cdenlab/qrom.h"
#include "cdenlab/sigma.h"
#include "cdenlab/statevec.h"
#include "json.hpp"

namespace cdenlab {

class Rng;

inline constexpr size_t kMaxLambda = 12;
inline constexpr size_t kDefaultOracleInBits = 32;
inline constexpr size_t kDefaultOracleOutBits = 32;

/// Register names used by every proof state.
inline const std::string kRegA = "A";
inline const std::string kRegS1 = "S1";
inline const std::string kRegS2 = "S2";
inline const std::string kRegS3 = "S3";

struct FsParams {
  GroupParams group = GroupParams::toy();
  size_t lambda = 8;

  /// Throws std::invalid_argument for odd λ, λ < 2 or λ > 12.
  void validate() const;
  RegisterLayout layout() const;
};

struct ProofState {
  SparseState state;
  uint64_t x = 0;
};

struct FsDeletionKey {
  F2Subspace A;
  F2Vec s;
  uint64_t k = 0;
  uint64_t w = 0;
};

struct SimKeys {
  F2Subspace A;
  F2Vec s;
  uint64_t k = 0;
  uint64_t k_ch = 0;
};

/// H(k‖a) mod q: the prover randomness of branch a.
uint64_t branch_randomness(const FsParams& fp, const Oracle& h, uint64_t k, uint64_t a);
/// H(a‖x‖s1) mod q.
uint64_t fs_challenge(const FsParams& fp, const Oracle& h, uint64_t a, uint64_t x, uint64_t s1);
/// Padded oracle input a‖x‖s1 (the key a reprogramming overlay uses).
uint64_t fs_challenge_input(const FsParams& fp, const Oracle& h, uint64_t a, uint64_t x, uint64_t s1);
/// The honest transcript of branch a.
Transcript honest_transcript(const FsParams& fp, const Oracle& h, uint64_t x, uint64_t w, uint64_t k, uint64_t a);
/// The simulated transcript of branch a: challenge H(k_ch‖a), response H(k‖a).
Transcript simulated_transcript(const FsParams& fp, const Oracle& h, uint64_t x, const SimKeys& keys, uint64_t a);

/// The coherent verification predicate for one basis term.
bool fs_predicate(const FsParams& fp, const Oracle& h, uint64_t x, uint64_t a, const Transcript& t);

std::pair<ProofState, FsDeletionKey> prove(const FsParams& fp, uint64_t x, uint64_t w, OraclePtr h, Rng& rng);

struct VerifyResult {
  double accept_prob = 0;
  bool accepted = false;
  ProofState post;
};

/// Computes the predicate into a fresh bit, measures it, uncomputes it.
/// With rng == nullptr the outcome "accept" is post-selected (when possible).
VerifyResult verify(const FsParams& fp, uint64_t x, const ProofState& pf, OraclePtr h, Rng* rng = nullptr);

/// The certificate is the proof state itself.
ProofState del(const ProofState& pf);

struct DelVerResult {
  double accept_prob = 0;
  bool accepted = false;
};

/// Uncomputes `transcript(a)` from the Σ registers, requires them to be zero,
/// then projects A onto |A_{0,s}⟩. With rng == nullptr, accepted is
/// accept_prob > 1 − 1e-9.
DelVerResult delver_with(const FsParams& fp, const SparseState& cert, const F2Subspace& A, const F2Vec& s,
                         const std::function<Transcript(uint64_t)>& transcript, Rng* rng);
DelVerResult delver(const FsParams& fp, const FsDeletionKey& dk, const ProofState& cert, uint64_t x, OraclePtr h,
                    Rng* rng = nullptr);

/// H′: H reprogrammed on (a‖x‖s̃1^a) ↦ H(k_ch‖a) for a ∈ A\{0}.
OraclePtr sim_oracle(const FsParams& fp, OraclePtr h, const SimKeys& keys, uint64_t x);

/// |A_{0,s}\{0}⟩ with simulated transcripts.
ProofState sim_proof(const FsParams& fp, OraclePtr h, const SimKeys& keys, uint64_t x);
SimKeys sample_sim_keys(const FsParams& fp, Rng& rng);

// ---------------------------------------------------------------------------
// Experiments

struct AdversaryOutput {
  SparseState cert;                 // layout FsParams::layout()
  std::optional<uint64_t> memo;     // classical residual
  size_t memo_bits = 0;
};

/// Receives the proof and the oracle the adversary may query.
using FsAdversaryFn = std::function<AdversaryOutput(const FsParams&, const ProofState&, OraclePtr, Rng&)>;

struct FsAdversary {
  std::string name;
  FsAdversaryFn run;
};

/// Verifies first (memo = the verification bit) and returns the post state.
FsAdversary honest_deleter();
/// Measures every register in the computational basis; memo = a‖s1‖s2‖s3.
FsAdversary measure_A();
/// Keeps the proof; returns an all-zero certificate.
FsAdversary non_deleting();
/// Returns a uniformly random basis-state certificate.
FsAdversary garbage();
FsAdversary adversary_by_name(const std::string& name);

struct ExperimentRecord {
  bool accepted = false;
  double accept_prob = 0;
  std::optional<uint64_t> residual;  // present only on accept
  size_t residual_bits = 0;
  size_t lambda = 0;
  uint64_t seed = 0;
  nlohmann::json oracle_spec;

  nlohmann::json to_json() const;
};

ExperimentRecord nizk_real_experiment(const FsParams& fp, uint64_t x, uint64_t w, OraclePtr h,
                                      const FsAdversary& adv, uint64_t seed);
ExperimentRecord simulate_experiment(const FsParams& fp, uint64_t x, OraclePtr h, const FsAdversary& adv,
                                     uint64_t seed);

}  // namespace cdenlab

#endif  // CDENLAB_FS_CDEN_H_
