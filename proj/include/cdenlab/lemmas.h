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

// Numerical lemma suites. Each suite checks an inequality or identity on
// many random instances against an independently computed dense oracle and
// reports {lemma_id, instances, violations, max_violation}.

#ifndef CDENLAB_LEMMAS_H_
#define CDENLAB_LEMMAS_H_

#include <cstdint>
#include <vector>

#include "cdenlab/rng.h"
#include "cdenlab/stats.h"

namespace cdenlab {

inline const std::string kLemmaSubspaceProjector = "subspace-projector";
inline const std::string kLemmaZTwirl = "z-twirl";
inline const std::string kLemmaGentle = "gentle-measurement";
inline const std::string kLemmaPostMeasurement = "post-measurement";
inline const std::string kLemmaPrfSplit = "prf-split";
inline const std::string kLemmaProofZTwirl = "proof-z-twirl";

/// All dim-2 subspaces of GF(2)^4 × `phases` random s: dense formula and the
/// library's circuit against the explicit |A_{0,s}⟩⟨A_{0,s}|.
SuiteSummary subspace_projector_suite(uint64_t seed, size_t phases = 10);
/// Random states on X (2–4 qubits) ⊗ P (1–2 qubits): the phase average over
/// s ∈ GF(2)^|X| equals the block-diagonal part of |ψ⟩⟨ψ|.
SuiteSummary ztwirl_suite(size_t instances, uint64_t seed);
/// TD(ρ, √Eρ√E / Tr Eρ) ≤ √ε with ε = 1 − Tr Eρ.
SuiteSummary gentle_measurement_suite(size_t instances, uint64_t seed);
/// TD(ρ′, σ′) ≤ 3ε / (2 p_i) for projective measurements with p_i ≥ 0.05.
SuiteSummary post_measurement_suite(size_t instances, uint64_t seed);
/// Bit balance and collision counts of H(k‖·) against an independent table.
SuiteSummary prf_suite(uint64_t seed, size_t probes = 10000, size_t keys = 5);
/// At small λ (≤ 6): the phase average of honest proofs (registers A, S3 and the
/// predicate bit) equals the mixture of computational-basis branches.
SuiteSummary proof_ztwirl_suite(uint64_t seed, size_t instances = 5, size_t lambda = 4);
/// The oracle-replacement bounds, one summary per lemma id.
std::vector<SuiteSummary> owth_suites(size_t instances, uint64_t seed, size_t draws = 10000);

struct LemmaConfig {
  uint64_t seed = kDefaultSeed;
  size_t ztwirl_instances = 100;
  size_t gentle_instances = 200;
  size_t postmeas_instances = 200;
  size_t owth_instances = 100;
  size_t owth_draws = 10000;
  size_t prf_probes = 10000;
};

std::vector<SuiteSummary> run_all_lemmas(const LemmaConfig& cfg);

}  // namespace cdenlab

#endif  // CDENLAB_LEMMAS_H_
