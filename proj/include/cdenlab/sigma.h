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

// Schnorr identification over the order-q subgroup of Z_p^*.
//
// Classical and insecure at these sizes; it supplies completeness, exact HVZK
// and special soundness for the Fiat-Shamir constructions.

#ifndef CDENLAB_SIGMA_H_
#define CDENLAB_SIGMA_H_

#include <cstdint>

#include "json.hpp"

namespace cdenlab {

class Rng;

struct GroupParams {
  uint64_t p;
  uint64_t q;
  uint64_t g;

  /// (23, 11, 2).
  static GroupParams toy();
  /// A 32-bit safe-prime group used by the deterministic signature.
  static GroupParams signature();

  /// Throws std::invalid_argument unless q | p−1, g ≠ 1 and g^q ≡ 1.
  void validate() const;
  /// ⌈log₂ p⌉: register width of a group element.
  size_t element_bits() const;
  /// ⌈log₂ q⌉: register width of a challenge or response.
  size_t scalar_bits() const;

  nlohmann::json to_json() const;
  static GroupParams from_json(const nlohmann::json& j);
  bool operator==(const GroupParams&) const = default;
};

uint64_t mod_mul(uint64_t a, uint64_t b, uint64_t m);
uint64_t mod_pow(uint64_t base, uint64_t e, uint64_t m);
/// Inverse modulo a prime m; a must be nonzero mod m.
uint64_t mod_inv(uint64_t a, uint64_t m);

struct Transcript {
  uint64_t s1 = 0;
  uint64_t s2 = 0;
  uint64_t s3 = 0;

  nlohmann::json to_json() const;
  bool operator==(const Transcript&) const = default;
};

struct SchnorrKeys {
  uint64_t x;  // statement g^w
  uint64_t w;  // witness in Z_q \ {0}
};

SchnorrKeys keygen(const GroupParams& gp, Rng& rng);
/// x = g^w; throws for w ∉ [1, q).
SchnorrKeys keys_from_witness(const GroupParams& gp, uint64_t w);

/// s1 = g^r.
uint64_t p1(const GroupParams& gp, uint64_t x, uint64_t w, uint64_t r);
/// s3 = r + s2·w mod q.
uint64_t p3(const GroupParams& gp, uint64_t x, uint64_t w, uint64_t r, uint64_t s2);

/// g^{s3} ≡ s1·x^{s2} (mod p), with range checks on every field.
bool verify(const GroupParams& gp, uint64_t x, const Transcript& t);

/// HVZK simulator: given challenge s2 and response s3 (the simulator's
/// randomness), s1 = g^{s3}·x^{−s2}.
Transcript simulate(const GroupParams& gp, uint64_t x, uint64_t s2, uint64_t s3);

/// w = (s3 − s3')·(s2 − s2')^{−1} mod q. Throws on equal challenges, on
/// differing first messages, or on non-verifying transcripts.
uint64_t extract(const GroupParams& gp, uint64_t x, const Transcript& a, const Transcript& b);

}  // namespace cdenlab

#endif  // CDENLAB_SIGMA_H_
