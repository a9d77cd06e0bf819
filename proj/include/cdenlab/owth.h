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

// Randomized instances for the oracle-replacement bounds.
//
// Each instance is a small circuit of dense random unitaries interleaved with
// T ≤ 8 queries. Classical instances compare H with a reprogrammed H′ and use
// query weights on the set where they differ; unitary instances compare two
// oracle unitaries through the Schmidt decomposition of each query.

#ifndef CDENLAB_OWTH_H_
#define CDENLAB_OWTH_H_

#include <Eigen/Dense>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "cdenlab/qrom.h"
#include "cdenlab/stats.h"
#include "cdenlab/statevec.h"

namespace cdenlab {

class Rng;

inline const std::string kLemmaBbbv = "bbbv";
inline const std::string kLemmaQwDistinguish = "query-weight-distinguish";
inline const std::string kLemmaQwExtract = "query-weight-extract";
inline const std::string kLemmaUnitaryOwth = "unitary-owth";
inline const std::string kLemmaUnitaryOwthCorollary = "unitary-owth-corollary";

inline constexpr size_t kOwthMaxQueries = 8;
inline constexpr size_t kOwthMaxQubits = 10;

/// Haar-distributed unitary (QR of a complex Gaussian matrix, phases fixed).
Eigen::MatrixXcd random_unitary(size_t dim, Rng& rng);

/// Applies `unitaries[t-1]` to every register at step t; T = size − 1.
class CircuitAlgorithm final : public OracleAlgorithm {
 public:
  CircuitAlgorithm(RegisterLayout layout, std::vector<Eigen::MatrixXcd> unitaries);
  size_t num_queries() const override { return unitaries_.size() - 1; }
  SparseState initial_state() const override;
  SparseState step(size_t t, const SparseState& st) const override;

 private:
  RegisterLayout layout_;
  std::vector<std::string> names_;
  std::vector<Eigen::MatrixXcd> unitaries_;
};

/// W (workspace), QIN, QOUT.
RegisterLayout owth_layout(size_t w, size_t in_bits, size_t out_bits);

/// |x, b⟩ ↦ |x, b ⊕ O(x)⟩ as a dense permutation on (QIN, QOUT).
Eigen::MatrixXcd oracle_unitary(const Oracle& o);

/// Inputs where the two oracles disagree (exhaustive).
std::set<uint64_t> differing_inputs(const Oracle& a, const Oracle& b);

/// BBBV, distinguishing-advantage and extraction bounds for one classical pair.
std::vector<BoundReport> classical_bounds(const OracleAlgorithm& alg, OraclePtr h, OraclePtr h_prime,
                                          const nlohmann::json& descriptor, size_t draws, Rng& rng);

/// The unitary-oracle bound and its corollary at several δ for one pair.
std::vector<BoundReport> unitary_bounds(const OracleAlgorithm& alg, const Eigen::MatrixXcd& u0,
                                        const Eigen::MatrixXcd& u1, const nlohmann::json& descriptor);

/// `instances` classical pairs plus `instances` unitary pairs; `draws`
/// extraction samples per classical instance.
std::vector<BoundReport> owth_bound_suite(size_t instances, uint64_t seed, size_t draws = 10000);

}  // namespace cdenlab

#endif  // CDENLAB_OWTH_H_
