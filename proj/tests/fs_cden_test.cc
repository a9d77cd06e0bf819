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

#include "cdenlab/fs_cden.h"

#include <cmath>
#include <stdexcept>

#include "cdenlab/rng.h"
#include "gtest/gtest.h"

namespace cdenlab {
namespace {

constexpr double kTol = 1e-9;

struct Fixture {
  FsParams fp;
  SchnorrKeys keys;
  OraclePtr h;
};

Fixture Make(size_t lambda, uint64_t seed) {
  Fixture f;
  f.fp.lambda = lambda;
  Rng rng(seed);
  f.keys = keygen(f.fp.group, rng);
  f.h = oracle_new(mix64(seed), kDefaultOracleInBits, kDefaultOracleOutBits);
  return f;
}

// The proof state rebuilt from scratch: Σ_a (−1)^{a·s} |a⟩|g^r, c, r + c·w⟩
// with r = H(k‖a ‖ 0…) mod q and c = H(a‖x‖s1 ‖ 0…) mod q.
SparseState ExpectedProof(const Fixture& f, const FsDeletionKey& dk) {
  const GroupParams& g = f.fp.group;
  const size_t lam = f.fp.lambda, eb = g.element_bits(), in = f.h->in_bits();
  RegisterLayout lay = f.fp.layout();
  SparseState st(lay);
  const auto elems = dk.A.enumerate();
  for (const auto& av : elems) {
    const uint64_t a = av.to_uint();
    const uint64_t r = f.h->query(((dk.k << lam) | a) << (in - 2 * lam)) % g.q;
    uint64_t s1 = 1;
    for (uint64_t i = 0; i < r; ++i) s1 = s1 * g.g % g.p;
    const uint64_t c = f.h->query(((((a << eb) | f.keys.x) << eb) | s1) << (in - lam - 2 * eb)) % g.q;
    const uint64_t s3 = (r + c * f.keys.w) % g.q;
    Label l = lay.set(lay.set(lay.set(lay.set(0, "A", a), "S1", s1), "S2", c), "S3", s3);
    st.add(l, (av.dot(dk.s) ? -1.0 : 1.0) / std::sqrt(double(elems.size())));
  }
  return st;
}

TEST(FsParams, Validation) {
  FsParams fp;
  fp.lambda = 5;
  EXPECT_THROW(fp.validate(), std::invalid_argument);
  fp.lambda = 14;
  EXPECT_THROW(fp.validate(), std::invalid_argument);
  fp.lambda = 12;
  EXPECT_NO_THROW(fp.validate());
}

TEST(Prove, MatchesIndependentConstruction) {
  for (size_t lam : {4, 6, 8}) {
    Fixture f = Make(lam, 100 + lam);
    Rng rng(1);
    auto [pf, dk] = prove(f.fp, f.keys.x, f.keys.w, f.h, rng);
    EXPECT_EQ(pf.state.support_size(), size_t{1} << (lam / 2));
    EXPECT_NEAR(pf.state.norm_squared(), 1, kTol);
    EXPECT_LE(l2_distance(pf.state, ExpectedProof(f, dk)), kTol);
    EXPECT_EQ(dk.A.dim(), lam / 2);
    EXPECT_EQ(dk.s.size(), lam);
    const RegisterLayout lay = f.fp.layout();
    for (const auto& [l, a] : pf.state.amplitudes()) {
      Transcript t{lay.get(l, "S1"), lay.get(l, "S2"), lay.get(l, "S3")};
      EXPECT_TRUE(cdenlab::verify(f.fp.group, f.keys.x, t));
      EXPECT_TRUE(dk.A.contains_uint(lay.get(l, "A")));
    }
  }
}

TEST(Prove, DeterministicAndRejectsBadWitness) {
  Fixture f = Make(4, 7);
  Rng r1(3), r2(3);
  auto a = prove(f.fp, f.keys.x, f.keys.w, f.h, r1);
  auto b = prove(f.fp, f.keys.x, f.keys.w, f.h, r2);
  EXPECT_EQ(a.first.state.dump(), b.first.state.dump());
  const uint64_t bad_w = f.keys.w % (f.fp.group.q - 1) + 1;
  EXPECT_THROW(prove(f.fp, f.keys.x, bad_w, f.h, r1), std::invalid_argument);
}

TEST(Verify, HonestProofAcceptedGently) {
  for (size_t lam : {4, 6, 8}) {
    for (uint64_t seed = 0; seed < 20; ++seed) {
      Fixture f = Make(lam, seed);
      Rng rng(seed);
      auto [pf, dk] = prove(f.fp, f.keys.x, f.keys.w, f.h, rng);
      VerifyResult v = verify(f.fp, f.keys.x, pf, f.h, &rng);
      EXPECT_NEAR(v.accept_prob, 1, kTol);
      EXPECT_TRUE(v.accepted);
      EXPECT_LE(pure_trace_distance(v.post.state, pf.state), kTol);
      DelVerResult d = delver(f.fp, dk, del(v.post), f.keys.x, f.h);
      EXPECT_NEAR(d.accept_prob, 1, kTol);
    }
  }
}

TEST(Verify, CorruptedResponseRejected) {
  Fixture f = Make(6, 4);
  Rng rng(2);
  auto [pf, dk] = prove(f.fp, f.keys.x, f.keys.w, f.h, rng);
  const RegisterLayout lay = f.fp.layout();
  SparseState bad(lay);
  for (const auto& [l, a] : pf.state.amplitudes()) {
    const uint64_t s3 = (lay.get(l, "S3") + 1) % f.fp.group.q;
    bad.add(lay.set(l, "S3", s3), a);
  }
  EXPECT_NEAR(verify(f.fp, f.keys.x, {bad, f.keys.x}, f.h).accept_prob, 0, kTol);
}

TEST(Verify, CollapsedProofStillAccepted) {
  Fixture f = Make(6, 5);
  Rng rng(2);
  auto [pf, dk] = prove(f.fp, f.keys.x, f.keys.w, f.h, rng);
  MeasureResult m = measure(pf.state, "A", rng);
  EXPECT_NEAR(verify(f.fp, f.keys.x, {m.post, f.keys.x}, f.h).accept_prob, 1, kTol);
}

TEST(Del, IsIdentity) {
  Fixture f = Make(4, 1);
  Rng rng(1);
  auto [pf, dk] = prove(f.fp, f.keys.x, f.keys.w, f.h, rng);
  EXPECT_EQ(del(pf).state.dump(), pf.state.dump());
  EXPECT_EQ(del(del(pf)).state.dump(), pf.state.dump());
  EXPECT_NEAR(del(pf).state.norm_squared(), 1, kTol);
}

TEST(DelVer, MeasuredCertificateAcceptsWithInverseSize) {
  for (size_t lam : {4, 8}) {
    Fixture f = Make(lam, 9);
    Rng rng(4);
    auto [pf, dk] = prove(f.fp, f.keys.x, f.keys.w, f.h, rng);
    MeasureResult m = measure(pf.state, "A", rng);
    EXPECT_NEAR(delver(f.fp, dk, {m.post, f.keys.x}, f.keys.x, f.h).accept_prob, 1.0 / (1 << (lam / 2)), kTol);
  }
}

TEST(DelVer, WrongOracleRejectsEverything) {
  Fixture f = Make(6, 10);
  Rng rng(4);
  auto [pf, dk] = prove(f.fp, f.keys.x, f.keys.w, f.h, rng);
  OraclePtr other = oracle_new(12345, kDefaultOracleInBits, kDefaultOracleOutBits);
  EXPECT_LT(delver(f.fp, dk, pf, f.keys.x, other).accept_prob, 1 - 1e-6);
}

TEST(Simulator, OracleIsLocalReprogramming) {
  Fixture f = Make(8, 21);
  Rng rng(5);
  SimKeys keys = sample_sim_keys(f.fp, rng);
  EXPECT_NE(keys.k, keys.k_ch);
  OraclePtr hp = sim_oracle(f.fp, f.h, keys, f.keys.x);
  const auto spec = hp->spec();
  ASSERT_EQ(spec["overlays"].size(), 1u);
  EXPECT_EQ(spec["overlays"][0]["map"].size(), 15u);
  for (const auto& av : keys.A.enumerate()) {
    const uint64_t a = av.to_uint();
    if (a == 0) continue;
    Transcript t = simulated_transcript(f.fp, *f.h, f.keys.x, keys, a);
    const uint64_t in = fs_challenge_input(f.fp, *f.h, a, f.keys.x, t.s1);
    EXPECT_EQ(hp->query(in), f.h->query(((keys.k_ch << 8) | a) << (32 - 16)));
    EXPECT_TRUE(fs_predicate(f.fp, *hp, f.keys.x, a, t));
  }
  Rng probe(6);
  int same = 0;
  for (int i = 0; i < 1000; ++i) {
    const uint64_t x = probe.bits(32);
    same += hp->query(x) == f.h->query(x);
  }
  EXPECT_EQ(same, 1000);
}

TEST(Simulator, ProofVerifiesUnderReprogrammedOracle) {
  Fixture f = Make(8, 22);
  Rng rng(5);
  SimKeys keys = sample_sim_keys(f.fp, rng);
  ProofState sp = sim_proof(f.fp, f.h, keys, f.keys.x);
  EXPECT_EQ(sp.state.support_size(), 15u);
  OraclePtr hp = sim_oracle(f.fp, f.h, keys, f.keys.x);
  EXPECT_NEAR(verify(f.fp, f.keys.x, sp, hp).accept_prob, 1, kTol);
}

TEST(Experiments, HonestDeleter) {
  for (size_t lam : {4, 6, 8}) {
    Fixture f = Make(lam, 30 + lam);
    ExperimentRecord real = nizk_real_experiment(f.fp, f.keys.x, f.keys.w, f.h, honest_deleter(), 1);
    ExperimentRecord sim = simulate_experiment(f.fp, f.keys.x, f.h, honest_deleter(), 1);
    EXPECT_NEAR(real.accept_prob, 1, kTol);
    EXPECT_NEAR(sim.accept_prob, 1 - std::pow(2.0, -double(lam) / 2), kTol);
    EXPECT_TRUE(real.accepted);
    ASSERT_TRUE(real.residual.has_value());
    EXPECT_EQ(*real.residual, 1u);
  }
}

TEST(Experiments, NonDeletingAndGarbage) {
  Fixture f = Make(8, 40);
  for (uint64_t seed = 0; seed < 10; ++seed) {
    ExperimentRecord nd = nizk_real_experiment(f.fp, f.keys.x, f.keys.w, f.h, non_deleting(), seed);
    EXPECT_LE(nd.accept_prob, 1.0 / 16 + kTol);
    EXPECT_EQ(nd.residual.has_value(), nd.accepted);
    ExperimentRecord g = simulate_experiment(f.fp, f.keys.x, f.h, garbage(), seed);
    EXPECT_LE(g.accept_prob, 1.0 / 16 + kTol);
  }
}

TEST(Experiments, ReproducibleRecords) {
  Fixture f = Make(6, 41);
  auto a = nizk_real_experiment(f.fp, f.keys.x, f.keys.w, f.h, measure_A(), 77).to_json();
  auto b = nizk_real_experiment(f.fp, f.keys.x, f.keys.w, f.h, measure_A(), 77).to_json();
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_THROW(adversary_by_name("nope"), std::invalid_argument);
}

}  // namespace
}  // namespace cdenlab
