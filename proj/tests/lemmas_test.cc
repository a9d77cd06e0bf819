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

#include "cdenlab/lemmas.h"

#include <cmath>
#include <map>
#include <stdexcept>

#include "cdenlab/owth.h"
#include "cdenlab/rng.h"
#include "gtest/gtest.h"

namespace cdenlab {
namespace {

constexpr double kTol = 1e-9;

// One query on a fixed superposition of inputs, output register zeroed.
class FixedQuery final : public OracleAlgorithm {
 public:
  FixedQuery(size_t in_bits, size_t out_bits, std::vector<std::pair<uint64_t, Amp>> terms)
      : layout_({{"QIN", in_bits}, {"QOUT", out_bits}}), terms_(std::move(terms)) {}
  size_t num_queries() const override { return 1; }
  SparseState initial_state() const override {
    SparseState st(layout_);
    for (auto [x, a] : terms_) st.add(layout_.set(0, "QIN", x), a);
    st.normalize();
    return st;
  }
  SparseState step(size_t, const SparseState& st) const override { return st; }

 private:
  RegisterLayout layout_;
  std::vector<std::pair<uint64_t, Amp>> terms_;
};

const BoundReport& Find(const std::vector<BoundReport>& rs, const std::string& id) {
  for (const auto& r : rs)
    if (r.lemma == id) return r;
  throw std::runtime_error("missing " + id);
}

TEST(ClassicalBounds, IdenticalOraclesHaveZeroDistance) {
  OraclePtr h = oracle_new(1, 3, 2);
  FixedQuery alg(3, 2, {{5, 1}, {2, 1}});
  Rng rng(1);
  auto rs = classical_bounds(alg, h, h, {}, 100, rng);
  for (const auto& r : rs) EXPECT_TRUE(r.holds) << r.lemma;
  EXPECT_EQ(Find(rs, kLemmaQwDistinguish).lhs, 0);
}

TEST(ClassicalBounds, SinglePointSingleQuery) {
  OraclePtr h = oracle_new(2, 3, 2);
  OraclePtr hp = reprogram_points(h, {{5, h->query(5) ^ 1}});
  FixedQuery alg(3, 2, {{5, 1}});
  Rng rng(1);
  auto rs = classical_bounds(alg, h, hp, {}, 1000, rng);
  const BoundReport& d = Find(rs, kLemmaQwDistinguish);
  EXPECT_NEAR(d.lhs, 1, kTol);
  EXPECT_NEAR(d.rhs, 2, kTol);
  EXPECT_TRUE(d.holds);
  const BoundReport& e = Find(rs, kLemmaQwExtract);
  EXPECT_EQ(e.rhs, 1.0);
}

// Half the query weight on the reprogrammed point: the final states overlap in
// one of two branches, so TD = √(1 − 1/4) ≈ 0.866, above √(T·qw) = √0.5.
// Only the form with the factor 2 holds.
TEST(ClassicalBounds, BbbvWithoutFactorTwoFailsOnHalfWeightQuery) {
  OraclePtr h = oracle_new(3, 3, 2);
  OraclePtr hp = reprogram_points(h, {{5, h->query(5) ^ 1}});
  FixedQuery alg(3, 2, {{5, 1}, {2, 1}});
  Rng rng(1);
  auto rs = classical_bounds(alg, h, hp, {}, 100, rng);
  const BoundReport& b = Find(rs, kLemmaBbbv);
  EXPECT_NEAR(b.lhs, std::sqrt(0.75), kTol);
  EXPECT_NEAR(b.rhs, std::sqrt(0.5), kTol);
  EXPECT_FALSE(b.holds);
  const BoundReport& d = Find(rs, kLemmaQwDistinguish);
  EXPECT_TRUE(d.holds);
  EXPECT_EQ(d.extra["forms_disagree"], true);
}

TEST(UnitaryBounds, ClassicalOraclesAsUnitaries) {
  OraclePtr h = oracle_new(4, 3, 2);
  OraclePtr hp = reprogram_points(h, {{5, h->query(5) ^ 1}});
  FixedQuery alg(3, 2, {{5, 1}, {2, 1}});
  auto rs = unitary_bounds(alg, oracle_unitary(*h), oracle_unitary(*hp), {});
  const BoundReport& u = Find(rs, kLemmaUnitaryOwth);
  EXPECT_NEAR(u.lhs, std::sqrt(0.75), kTol);
  EXPECT_NEAR(u.rhs, std::sqrt(4 * 0.75), kTol);
  EXPECT_TRUE(u.holds);
  for (const auto& r : rs) EXPECT_TRUE(r.holds) << r.lemma << " " << r.instance.dump();
}

TEST(UnitaryBounds, RejectsTooManyQueries) {
  RegisterLayout lay = owth_layout(1, 1, 1);
  Rng rng(2);
  std::vector<Eigen::MatrixXcd> us;
  for (int i = 0; i < 10; ++i) us.push_back(random_unitary(8, rng));
  CircuitAlgorithm alg(lay, us);
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(4, 4);
  EXPECT_THROW(unitary_bounds(alg, id, id, {}), std::invalid_argument);
}

TEST(RandomUnitary, IsUnitary) {
  Rng rng(3);
  for (size_t d : {2, 8, 32}) {
    Eigen::MatrixXcd u = random_unitary(d, rng);
    EXPECT_LE((u.adjoint() * u - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(OwthSuite, DistinguishExtractAndUnitaryBoundsHold) {
  auto suites = owth_suites(30, kDefaultSeed, 2000);
  std::map<std::string, SuiteSummary> by_id;
  for (const auto& s : suites) by_id[s.lemma_id] = s;
  for (const auto& id : {kLemmaQwDistinguish, kLemmaQwExtract, kLemmaUnitaryOwth, kLemmaUnitaryOwthCorollary}) {
    ASSERT_TRUE(by_id.count(id)) << id;
    EXPECT_GT(by_id[id].instances, 0u);
    EXPECT_EQ(by_id[id].violations, 0u) << id << " " << by_id[id].to_json().dump();
  }
  ASSERT_TRUE(by_id.count(kLemmaBbbv));
  EXPECT_EQ(by_id[kLemmaBbbv].instances, 30u);
}

TEST(OwthSuite, Reproducible) {
  auto a = owth_bound_suite(5, 9, 200);
  auto b = owth_bound_suite(5, 9, 200);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].to_json().dump(), b[i].to_json().dump());
}

TEST(LemmaSuites, SubspaceProjector) {
  SuiteSummary s = subspace_projector_suite(kDefaultSeed);
  EXPECT_EQ(s.instances, 700u);
  EXPECT_EQ(s.violations, 0u);
  EXPECT_LE(s.max_violation, kTol);
}

TEST(LemmaSuites, ZTwirl) {
  SuiteSummary s = ztwirl_suite(100, kDefaultSeed);
  EXPECT_EQ(s.instances, 100u);
  EXPECT_EQ(s.violations, 0u);
}

TEST(LemmaSuites, GentleAndPostMeasurement) {
  SuiteSummary g = gentle_measurement_suite(200, kDefaultSeed);
  SuiteSummary p = post_measurement_suite(200, kDefaultSeed);
  EXPECT_EQ(g.instances, 200u);
  EXPECT_EQ(p.instances, 200u);
  EXPECT_EQ(g.violations, 0u);
  EXPECT_EQ(p.violations, 0u);
}

TEST(LemmaSuites, PrfAndProofTwirl) {
  EXPECT_EQ(prf_suite(kDefaultSeed, 10000, 3).violations, 0u);
  SuiteSummary z = proof_ztwirl_suite(kDefaultSeed, 3, 4);
  EXPECT_EQ(z.instances, 3u);
  EXPECT_EQ(z.violations, 0u);
  EXPECT_THROW(proof_ztwirl_suite(kDefaultSeed, 1, 8), std::invalid_argument);
}

}  // namespace
}  // namespace cdenlab
