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

// Signature schemes with deletion:
//
//   * fs_sig_*  - coset-state Fiat-Shamir proofs under the oracle H(m‖·).
//   * ot_*      - one-time scheme whose per-index states are two-term
//                 superpositions |x⁰⟩|σ⁰⟩ ± |x¹⟩|σ¹⟩ with classical
//                 certificates checked by a parity equation.
//   * mult_*    - many-time wrapper: fresh one-time keys per signature, the
//                 deletion key encrypted and MACed inside the signature.
//   * straw_*   - a classical signature on id‖m plus a deletable token. It
//                 deletes the token but not the evidence.
//
// The classical signature DS is deterministic Schnorr-Fiat-Shamir over
// GroupParams::signature(): σ = (e, z) packed as e‖z (31+31 bits).

#ifndef CDENLAB_SIG_CDEN_H_
#define CDENLAB_SIG_CDEN_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "cdenlab/fs_cden.h"
#include "cdenlab/qrom.h"
#include "cdenlab/sigma.h"
#include "cdenlab/statevec.h"
#include "json.hpp"

namespace cdenlab {

class Rng;

// ---------------------------------------------------------------------------
// Deterministic classical signature

inline constexpr size_t kDsMessageBits = 32;
inline constexpr size_t kDsScalarBits = 31;
inline constexpr size_t kDsSigBits = 2 * kDsScalarBits;

struct DsKeys {
  uint64_t vk = 0;  // g^sk
  uint64_t sk = 0;
  uint64_t nonce_seed = 0;
};

/// The public hash oracle e = Hash(s1‖msg) mod q lives in `ds_hash()`.
OraclePtr ds_hash();
DsKeys ds_keygen(Rng& rng);
/// msg must fit in 32 bits.
uint64_t ds_sign(const DsKeys& keys, uint64_t msg);
bool ds_verify(uint64_t vk, uint64_t msg, uint64_t sig);

// ---------------------------------------------------------------------------
// Fiat-Shamir signatures with certified deniability

inline constexpr size_t kFsSigMessageBits = 8;

struct FsSigKeys {
  uint64_t vk = 0;
  uint64_t sk = 0;
};

FsSigKeys fs_sig_gen(const FsParams& fp, Rng& rng);
/// H(m‖·) as the proof oracle.
OraclePtr fs_sig_oracle(OraclePtr h, uint64_t m);
std::pair<ProofState, FsDeletionKey> fs_sig_sign(const FsParams& fp, const FsSigKeys& keys, uint64_t m, OraclePtr h,
                                                 Rng& rng);
VerifyResult fs_sig_verify(const FsParams& fp, uint64_t vk, uint64_t m, const ProofState& sig, OraclePtr h,
                           Rng* rng = nullptr);
ProofState fs_sig_del(const ProofState& sig);
DelVerResult fs_sig_delver(const FsParams& fp, const FsDeletionKey& dk, const ProofState& cert, uint64_t vk,
                           uint64_t m, OraclePtr h, Rng* rng = nullptr);

// ---------------------------------------------------------------------------
// One-time scheme

struct OtParams {
  size_t lambda_x = 8;
  size_t share_bits = 8;
  size_t ell = 8;

  void validate() const;
  size_t index_bits() const;
  /// λx + share_bits + index_bits.
  size_t hash_in_bits() const;
  static constexpr size_t kHashOutBits = 32;
};

/// The oracle used for H(x‖m_i‖i); width from OtParams.
OraclePtr ot_hash(const OtParams& op, uint64_t seed);

struct OtDeletionKey {
  std::vector<F2Vec> a1;  // x⁰ ⊕ x¹
  std::vector<F2Vec> a2;  // σ⁰ ⊕ σ¹
  std::vector<bool> c;

  nlohmann::json to_json() const;
};

/// Extra plaintext data of a signature on the dummy message.
struct OtReveal {
  std::vector<uint64_t> x0, x1;
  OtDeletionKey dk;
};

struct OtSignature {
  /// Index-factored state: parts[i] has registers X (λx) and S (62).
  std::vector<SparseState> parts;
  std::vector<uint64_t> shares;
  std::optional<OtReveal> reveal;
};

struct OtCertificate {
  std::vector<F2Vec> d1;
  std::vector<F2Vec> d2;

  nlohmann::json to_json() const;
};

inline const std::string kRegX = "X";
inline const std::string kRegS = "S";
inline constexpr uint64_t kDummyMessage = 0;

/// Branch message H(x‖m_i‖i), the value DS signs.
uint64_t ot_branch_message(const OtParams& op, const Oracle& h, uint64_t x, uint64_t share, size_t i);

std::pair<OtSignature, OtDeletionKey> ot_sign(const OtParams& op, const DsKeys& keys, uint64_t m, OraclePtr h,
                                              Rng& rng);

struct OtVerifyResult {
  double accept_prob = 0;
  OtSignature post;  // conditioned on acceptance (when accept_prob > 0)
};

OtVerifyResult ot_verify(const OtParams& op, uint64_t vk, uint64_t m, const OtSignature& sig, OraclePtr h);

/// Hadamard-basis measurement of every register of every part.
OtCertificate ot_del(const OtParams& op, const OtSignature& sig, Rng& rng);
bool ot_delver(const OtDeletionKey& dk, const OtCertificate& cert);

/// Measures every part in the computational basis.
OtSignature collapse_computational(const OtSignature& sig, Rng& rng);

// ---------------------------------------------------------------------------
// Many-time scheme

struct MultKeys {
  DsKeys global;
  uint64_t sk_enc = 0;
  uint64_t sk_mac = 0;
};

struct Ciphertext {
  uint64_t nonce = 0;
  std::vector<uint64_t> body;

  bool operator==(const Ciphertext&) const = default;
};

struct MultSignature {
  OtSignature ot;
  uint64_t vk_ot = 0;
  uint64_t sig_vk = 0;
  Ciphertext ct;
  uint64_t tag = 0;
};

struct MultCertificate {
  OtCertificate cert;
  Ciphertext ct;
  uint64_t tag = 0;
};

MultKeys mult_gen(Rng& rng);
Ciphertext ske_enc(uint64_t key, const std::vector<uint64_t>& words, Rng& rng);
std::vector<uint64_t> ske_dec(uint64_t key, const Ciphertext& ct);
uint64_t mac_sign(uint64_t key, const Ciphertext& ct);
bool mac_verify(uint64_t key, const Ciphertext& ct, uint64_t tag);
std::vector<uint64_t> serialize_dk(const OtDeletionKey& dk);
/// Throws std::invalid_argument on malformed input.
OtDeletionKey parse_dk(const OtParams& op, const std::vector<uint64_t>& words);

MultSignature mult_sign(const OtParams& op, const MultKeys& keys, uint64_t m, OraclePtr h, Rng& rng);
double mult_verify(const OtParams& op, uint64_t vk, uint64_t m, const MultSignature& sig, OraclePtr h);
MultCertificate mult_del(const OtParams& op, const MultSignature& sig, Rng& rng);
bool mult_delver(const OtParams& op, const MultKeys& keys, const MultCertificate& cert);

// ---------------------------------------------------------------------------
// Strawman

inline constexpr size_t kStrawIdBits = 16;
inline constexpr size_t kStrawMsgBits = 8;
inline constexpr size_t kStrawTokenBits = 8;

struct StrawSignature {
  uint64_t id = 0;
  uint64_t m = 0;
  uint64_t sigma = 0;
  std::optional<SparseState> token;  // register "T"
};

struct StrawDeletionKey {
  F2Vec delta;  // t⁰ ⊕ t¹
  bool c = false;
};

std::pair<StrawSignature, StrawDeletionKey> straw_sign(const DsKeys& keys, uint64_t m, Rng& rng);
/// Requires the token and a valid σ on id‖m.
bool straw_verify(uint64_t vk, uint64_t m, const StrawSignature& sig);
/// What a third party holding only vk can check: σ on id‖m.
bool straw_evidence_check(uint64_t vk, uint64_t id, uint64_t m, uint64_t sigma);
/// Hadamard-measures the token; the classical part is untouched.
F2Vec straw_del(const StrawSignature& sig, Rng& rng);
bool straw_delver(const StrawDeletionKey& dk, const F2Vec& cert);

}  // namespace cdenlab

#endif  // CDENLAB_SIG_CDEN_H_
