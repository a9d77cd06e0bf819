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

#include "cdenlab/games.h"

#include <cmath>
#include <stdexcept>

#include "cdenlab/rng.h"
#include "gtest/gtest.h"

namespace cdenlab {
namespace {

constexpr double kTol = 1e-9;

double ThreeSigma(double p, uint64_t n) { return 3 * std::sqrt(p * (1 - p) / double(n)); }

// Empirical rate within 3σ of the mean of the exact per-trial probabilities.
void ExpectMatchesExact(const GameStats& g) {
  auto m = g.exact_mean();
  ASSERT_TRUE(m.has_value()) << g.game;
  EXPECT_LE(std::abs(g.estimate - *m), 3 * g.sigma_at(*m) + 1e-12) << g.summary();
}

// ---------------------------------------------------------------------------
// Wilson intervals and bookkeeping

TEST(Stats, WilsonCoverage) {
  Rng rng(kDefaultSeed);
  int covered = 0;
  const int games = 1000;
  for (int i = 0; i < games; ++i) {
    const double p = 0.05 + 0.9 * rng.uniform01();
    uint64_t wins = 0;
    for (int t = 0; t < 200; ++t) wins += rng.uniform01() < p;
    Interval ci = wilson95(wins, 200);
    covered += ci.lo <= p && p <= ci.hi;
  }
  EXPECT_GE(covered / double(games), 0.93);
  EXPECT_LE(covered / double(games), 0.97);
}

TEST(Stats, WilsonEdgeCases) {
  Interval z = wilson95(0, 100);
  EXPECT_EQ(z.lo, 0);
  EXPECT_GT(z.hi, 0);
  Interval o = wilson95(100, 100);
  EXPECT_EQ(o.hi, 1);
  Interval e = wilson95(0, 0);
  EXPECT_EQ(e.lo, 0);
  EXPECT_EQ(e.hi, 1);
}

TEST(Stats, GameStatsSerialization) {
  GameStats g;
  g.game = "demo";
  g.seed = 0xC0DE;
  g.record(true, 0.5);
  g.record(false, 0.5);
  g.finalize();
  EXPECT_EQ(g.estimate, 0.5);
  EXPECT_EQ(*g.exact_mean(), 0.5);
  auto j = g.to_json(true);
  EXPECT_EQ(j["seed"], "0xc0de");
  EXPECT_EQ(j["outcomes"].size(), 2u);
  EXPECT_NE(g.summary().find("game=demo estimate=0.500000"), std::string::npos);
  const std::string csv = g.to_csv(true);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

TEST(Stats, BoundReports) {
  EXPECT_TRUE(make_bound("x", {}, 1.0, 1.0).holds);
  EXPECT_TRUE(make_bound("x", {}, 1.0 + 5e-10, 1.0).holds);
  EXPECT_FALSE(make_bound("x", {}, 1.0 + 2e-9, 1.0).holds);
  SuiteSummary s;
  s.lemma_id = "x";
  s.add(make_bound("x", {}, 0.5, 1.0));
  s.add(make_bound("x", {}, 1.25, 1.0), true);
  EXPECT_EQ(s.instances, 2u);
  EXPECT_EQ(s.violations, 1u);
  EXPECT_DOUBLE_EQ(s.max_violation, 0.25);
  EXPECT_EQ(s.details.size(), 1u);
}

// ---------------------------------------------------------------------------
// Adaptive classical deletion

TEST(AdpDel, CheckerAgainstHandComputedParity) {
  AdpDelInstance inst{0b0110, 0b1100, true};
  AdpDelAnswer ans;
  ans.f = [](uint64_t x) { return x & 1; };
  ans.f_bits = 1;
  ans.y = 0b1100;
  // x0⊕x1 = 1010; d1 = 1000 gives parity 1, f-difference is 0.
  ans.d1 = 0b1000;
  ans.d2 = 1;
  EXPECT_TRUE(adp_check(4, inst, ans));
  ans.d1 = 0b0100;
  EXPECT_FALSE(adp_check(4, inst, ans));
  ans.d1 = 0b1000;
  ans.y = 0b0001;
  EXPECT_FALSE(adp_check(4, inst, ans));
  ans.f_bits = 0;
  EXPECT_THROW(adp_check(4, inst, ans), std::invalid_argument);
}

TEST(AdpDel, OracleCheatWins) {
  GameStats g = run_adp_del(adp_oracle_cheat(), 8, 6, 500, 1);
  EXPECT_EQ(g.estimate, 1.0);
}

TEST(AdpDel, ComputationalMeasureRate) {
  GameStats g = run_adp_del(adp_computational(), 8, 6, 4096, kDefaultSeed);
  const double p = std::pow(2.0, -6);
  EXPECT_NEAR(g.estimate, p, ThreeSigma(p, 4096));
  EXPECT_LE(g.ci95.lo, p);
  EXPECT_GE(g.ci95.hi, p);
  ExpectMatchesExact(g);
  EXPECT_EQ(g.params["f_choice"], "pre-committed");
}

TEST(AdpDel, HadamardMeasureRate) {
  GameStats g = run_adp_del(adp_hadamard(), 6, 6, 10000, kDefaultSeed);
  EXPECT_EQ(g.wins, 0u);
  ExpectMatchesExact(g);
  GameStats one = run_adp_del(adp_hadamard(), 4, 1, 10000, 2);
  ExpectMatchesExact(one);
  EXPECT_LE(one.estimate, 2.0 / 16 + ThreeSigma(2.0 / 16, 10000));
}

TEST(AdpDel, Reproducible) {
  auto a = run_adp_del(adp_computational(), 6, 3, 300, 5).to_json(true);
  auto b = run_adp_del(adp_computational(), 6, 3, 300, 5).to_json(true);
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_THROW(adp_strategy_by_name("nope"), std::invalid_argument);
}

TEST(AdpDel, InstancesHaveDistinctPreimages) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    AdpDelInstance inst = sample_adp_instance(2, rng);
    EXPECT_NE(inst.x0, inst.x1);
  }
}

// ---------------------------------------------------------------------------
// Double extraction

TEST(DoubleExtraction, MeasureAndGuess) {
  GameStats g = run_double_extraction(dx_measure_and_guess(), 8, 10000, kDefaultSeed);
  const double bound = std::pow(2.0, -7);
  EXPECT_LE(g.estimate, bound + ThreeSigma(bound, 10000));
  ExpectMatchesExact(g);
}

TEST(DoubleExtraction, OracleCheatAndMeasuredTwice) {
  EXPECT_EQ(run_double_extraction(dx_oracle_cheat(), 8, 500, 1).estimate, 1.0);
  EXPECT_EQ(run_double_extraction(dx_oracle_cheat(), 8, 500, 1, true).estimate, 1.0);
  // With x0 ≠ x1 enforced the repeated value never wins.
  EXPECT_EQ(run_double_extraction(dx_measured_twice(), 6, 5000, 2, true).wins, 0u);
  GameStats orig = run_double_extraction(dx_measured_twice(), 6, 5000, 2, false);
  ExpectMatchesExact(orig);
}

TEST(DoubleExtraction, StateShape) {
  DoubleExtInstance inst{3, 9, true};
  SparseState st = double_ext_state(4, inst, false);
  EXPECT_EQ(st.support_size(), 2u);
  const RegisterLayout& lay = st.layout();
  const double r2 = 1 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(st.amplitude(lay.set(lay.set(0, "B", 0), "X", 3)) - Amp(r2)), 0, kTol);
  EXPECT_NEAR(std::abs(st.amplitude(lay.set(lay.set(0, "B", 1), "X", 9)) + Amp(r2)), 0, kTol);
  SparseState up = double_ext_state(4, inst, true);
  EXPECT_FALSE(up.layout().has("B"));
}

// ---------------------------------------------------------------------------
// Soundness

TEST(Soundness, Examples) {
  OtParams op;
  EXPECT_EQ(run_soundness_game(sv_honest(), sa_replay(), "ot", op, 300, 1).wins, 0u);
  EXPECT_EQ(run_soundness_game(sv_always_accept(), sa_replay(), "ot", op, 300, 1).estimate, 1.0);
  EXPECT_EQ(run_soundness_game(sv_honest(), sa_forger(), "ot", op, 300, 1).estimate, 1.0);
  EXPECT_THROW(run_soundness_game(sv_honest(), sa_replay(), "mult", op, 1, 1), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Deniability and evidence

TEST(Deniability, HonestDeleterPair) {
  for (const char* scheme : {"fs-nizk", "fs-sig"}) {
    DeniabilityPair p = run_deniability_pair(scheme, honest_deleter(), 8, 3);
    EXPECT_NEAR(p.real.accept_prob, 1, kTol) << scheme;
    EXPECT_NEAR(p.sim.accept_prob, 0.9375, kTol) << scheme;
    EXPECT_TRUE(p.M_S.empty());
  }
  EXPECT_THROW(run_deniability_pair("bogus", honest_deleter(), 8, 3), std::invalid_argument);
}

TEST(Deniability, AcceptedMemosAgree) {
  MemoComparison c = compare_residuals("fs-nizk", honest_deleter(), 8, 300, 4);
  EXPECT_EQ(c.runs, 300u);
  EXPECT_EQ(c.real_accepts, 300u);
  EXPECT_LE(c.tv_accepted, 0.05);
}

TEST(Evidence, ArchivedTranscriptCheck) {
  FsParams fp;
  fp.lambda = 4;
  Rng rng(5);
  SchnorrKeys k = keygen(fp.group, rng);
  OraclePtr h = oracle_new(1, 32, 32);
  auto [pf, dk] = prove(fp, k.x, k.w, h, rng);
  const RegisterLayout lay = fp.layout();
  for (const auto& [l, a] : pf.state.amplitudes()) {
    EXPECT_TRUE(fs_evidence_check(fp, *h, k.x, static_cast<uint64_t>(l)));
    EXPECT_FALSE(fs_evidence_check(fp, *h, k.x, static_cast<uint64_t>(lay.set(l, "S2", (lay.get(l, "S2") + 1) % 11))));
  }
}

TEST(Evidence, Demo) {
  EvidenceReport r = evidence_collection_demo(400, kDefaultSeed);
  EXPECT_EQ(r.strawman.estimate, 1.0);
  EXPECT_GT(r.strawman_advantage, 0.8);
  EXPECT_EQ(r.fs_honest.wins, 0u);
  EXPECT_EQ(r.fs_honest_advantage, 0);
  EXPECT_DOUBLE_EQ(r.inv_A, 1.0 / 16);
  EXPECT_LE(r.fs_measure.estimate, r.inv_A + ThreeSigma(r.inv_A, 400));
  EXPECT_EQ(r.fs_measure_evidence_rate, 1.0);
}

// ---------------------------------------------------------------------------
// Direct product hardness and many-time scenarios

TEST(Dph, ScriptedStrategies) {
  const double bound = std::pow(2.0, -3);
  for (const auto& s : {dph_computational(), dph_hadamard()}) {
    GameStats g = dph_game(s, 8, 4000, kDefaultSeed);
    EXPECT_LE(g.estimate, bound + ThreeSigma(bound, 4000)) << s.name;
    ExpectMatchesExact(g);
  }
  EXPECT_EQ(dph_game(dph_oracle_cheat(), 8, 200, 1).estimate, 1.0);
  EXPECT_THROW(dph_game(dph_computational(), 7, 1, 1), std::invalid_argument);
}

TEST(SigCd, RelabelledSignaturesRejected) {
  OtParams op;
  op.ell = 4;
  for (size_t k1 : {1, 2})
    for (size_t k2 : {0, 1}) {
      GameStats g = run_sigcd_scenario(k1, k2, op, 50, 7);
      EXPECT_EQ(g.wins, 0u) << k1 << "," << k2;
    }
}

}  // namespace
}  // namespace cdenlab
