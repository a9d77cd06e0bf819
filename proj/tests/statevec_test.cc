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

#include "cdenlab/statevec.h"

#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "cdenlab/rng.h"
#include "gtest/gtest.h"

namespace cdenlab {
namespace {

constexpr double kTol = 1e-9;

F2Vec V(const char* s) { return F2Vec::from_string(s); }

F2Subspace Span(std::vector<F2Vec> rows, size_t n) { return F2Subspace::span(rows, n); }

RegisterLayout One(const std::string& name, size_t w) { return RegisterLayout({{name, w}}); }

// |ψ⟩ = Σ c_i |labels_i⟩ on a single register.
SparseState Make(const RegisterLayout& lay, std::vector<std::pair<uint64_t, Amp>> terms) {
  SparseState st(lay);
  for (auto [l, a] : terms) st.add(l, a);
  return st;
}

SparseState RandomState(const RegisterLayout& lay, size_t terms, Rng& rng) {
  SparseState st(lay);
  const size_t w = lay.total_width();
  for (size_t i = 0; i < terms; ++i) st.add(rng.bits(static_cast<unsigned>(w)), Amp(rng.gaussian(), rng.gaussian()));
  st.normalize();
  return st;
}

double MaxDiff(const SparseState& a, const SparseState& b) {
  return (to_dense(a) - to_dense(b)).cwiseAbs().maxCoeff();
}

// Dense Walsh-Hadamard matrix on w qubits.
Eigen::MatrixXcd DenseHadamard(size_t w) {
  const size_t d = size_t{1} << w;
  Eigen::MatrixXcd H(d, d);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) H(i, j) = (__builtin_popcountll(i & j) & 1 ? -1.0 : 1.0) / std::sqrt(double(d));
  return H;
}

TEST(RegisterLayout, FirstRegisterIsMostSignificant) {
  RegisterLayout lay({{"A", 3}, {"B", 2}});
  EXPECT_EQ(lay.total_width(), 5u);
  EXPECT_EQ(lay.shift("A"), 2u);
  Label l = lay.set(lay.set(0, "A", 0b101), "B", 0b10);
  EXPECT_EQ(static_cast<uint64_t>(l), 0b10110u);
  EXPECT_EQ(lay.get(l, "A"), 0b101u);
  EXPECT_EQ(static_cast<uint64_t>(lay.extract(l, {"B", "A"})), 0b10101u);
}

TEST(CosetState, Examples) {
  const double r2 = 1 / std::sqrt(2.0), r3 = 1 / std::sqrt(3.0);
  SparseState a = coset_state(Span({V("1")}, 1), V("0"), false);
  EXPECT_NEAR(std::abs(a.amplitude(0) - Amp(r2)), 0, kTol);
  EXPECT_NEAR(std::abs(a.amplitude(1) - Amp(r2)), 0, kTol);

  SparseState b = coset_state(Span({V("11")}, 2), V("10"), false);
  EXPECT_NEAR(std::abs(b.amplitude(0b00) - Amp(r2)), 0, kTol);
  EXPECT_NEAR(std::abs(b.amplitude(0b11) + Amp(r2)), 0, kTol);
  EXPECT_EQ(b.support_size(), 2u);

  SparseState c = coset_state(Span({V("01"), V("10")}, 2), V("00"), true);
  EXPECT_EQ(c.support_size(), 3u);
  EXPECT_NEAR(std::abs(c.amplitude(0)), 0, kTol);
  for (uint64_t x : {1, 2, 3}) EXPECT_NEAR(std::abs(c.amplitude(x) - Amp(r3)), 0, kTol);
}

TEST(ClassicalIsometry, Examples) {
  RegisterLayout lay({{"X", 2}, {"Y", 1}});
  const double r2 = 1 / std::sqrt(2.0);
  SparseState st = Make(lay, {{0b000, r2}, {0b110, r2}});
  auto and_fn = [](const std::vector<uint64_t>& in) { return std::vector<uint64_t>{(in[0] >> 1) & in[0] & 1}; };
  SparseState out = apply_classical_isometry(st, {"X"}, {"Y"}, and_fn);
  EXPECT_NEAR(std::abs(out.amplitude(0b000) - Amp(r2)), 0, kTol);
  EXPECT_NEAR(std::abs(out.amplitude(0b111) - Amp(r2)), 0, kTol);
  EXPECT_NEAR(MaxDiff(apply_classical_isometry(out, {"X"}, {"Y"}, and_fn), st), 0, kTol);

  RegisterLayout lay2({{"X", 3}, {"Y", 3}});
  Rng rng(4);
  SparseState r = RandomState(lay2.subset({"X"}), 5, rng);
  SparseState r2s = add_register(r, "Y", 3);
  auto id = [](const std::vector<uint64_t>& in) { return in; };
  SparseState copied = apply_classical_isometry(r2s, {"X"}, {"Y"}, id);
  for (const auto& [l, a] : copied.amplitudes()) EXPECT_EQ(lay2.get(l, "X"), lay2.get(l, "Y"));
  EXPECT_NEAR(copied.norm_squared(), 1, kTol);
}

TEST(ApplyPhase, Examples) {
  RegisterLayout lay = One("X", 2);
  const double r2 = 1 / std::sqrt(2.0);
  SparseState st = Make(lay, {{0b00, r2}, {0b11, r2}});
  EXPECT_NEAR(MaxDiff(apply_phase(st, "X", V("00")), st), 0, kTol);
  SparseState ph = apply_phase(st, "X", V("10"));
  EXPECT_NEAR(std::abs(ph.amplitude(0b11) + Amp(r2)), 0, kTol);
  EXPECT_NEAR(MaxDiff(apply_phase(ph, "X", V("10")), st), 0, kTol);
}

TEST(Hadamard, ZeroGoesToUniform) {
  SparseState st = SparseState::basis(One("X", 5), 0);
  SparseState h = hadamard(st, "X");
  EXPECT_EQ(h.support_size(), 32u);
  for (const auto& [l, a] : h.amplitudes()) EXPECT_NEAR(std::abs(a - Amp(1 / std::sqrt(32.0))), 0, kTol);
}

TEST(Hadamard, InvolutionAndDenseAgreement) {
  Rng rng(99);
  RegisterLayout lay({{"P", 2}, {"X", 4}});
  Eigen::MatrixXcd H4 = DenseHadamard(4);
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(64, 64);
  for (int p = 0; p < 4; ++p) full.block(16 * p, 16 * p, 16, 16) = H4;
  for (int i = 0; i < 50; ++i) {
    SparseState st = RandomState(lay, 1 + rng.uniform_below(8), rng);
    SparseState h = hadamard(st, "X");
    EXPECT_LE((to_dense(h) - full * to_dense(st)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE(MaxDiff(hadamard(h, "X"), st), 1e-12);
  }
}

TEST(Hadamard, SelfDualSubspace) {
  F2Subspace A = Span({V("11")}, 2);
  SparseState h = hadamard(coset_state(A, V("00"), false), "A");
  EXPECT_NEAR(MaxDiff(h, coset_state(A.dual(), V("00"), false)), 0, kTol);
}

TEST(Measure, ClassicalRegisterIsUnchanged) {
  Rng rng(5);
  SparseState st = SparseState::basis(One("X", 3), 0b101);
  MeasureResult m = measure(st, "X", rng);
  EXPECT_EQ(m.value, 0b101u);
  EXPECT_NEAR(m.prob, 1, kTol);
  EXPECT_NEAR(MaxDiff(m.post, st), 0, kTol);
}

TEST(Measure, BellFrequencies) {
  const double r2 = 1 / std::sqrt(2.0);
  SparseState st = Make(One("X", 2), {{0b00, r2}, {0b11, r2}});
  Rng rng(kDefaultSeed);
  int zeros = 0;
  for (int i = 0; i < 10000; ++i) {
    MeasureResult m = measure(st, "X", rng);
    EXPECT_TRUE(m.value == 0 || m.value == 3);
    EXPECT_NEAR(m.prob, 0.5, kTol);
    EXPECT_NEAR(m.post.norm_squared(), 1, kTol);
    zeros += m.value == 0;
  }
  EXPECT_NEAR(zeros / 10000.0, 0.5, 0.02);
}

TEST(Measure, BornCompleteness) {
  Rng rng(8);
  RegisterLayout lay({{"A", 3}, {"B", 3}});
  for (int i = 0; i < 50; ++i) {
    SparseState st = RandomState(lay, 10, rng);
    double total = 0;
    for (auto [v, p] : outcome_distribution(st, "B")) total += p;
    EXPECT_NEAR(total, 1, kTol);
  }
}

TEST(ProjectPure, Examples) {
  Rng rng(2);
  SparseState st = RandomState(One("X", 3), 4, rng);
  EXPECT_NEAR(project_pure(st, {"X"}, st).accept_prob, 1, kTol);

  const double r2 = 1 / std::sqrt(2.0);
  SparseState plus = Make(One("X", 1), {{0, r2}, {1, r2}});
  EXPECT_NEAR(project_pure(plus, {"X"}, SparseState::basis(One("X", 1), 0)).accept_prob, 0.5, kTol);

  F2Subspace A = sample_subspace(8, 4, rng);
  F2Vec s = F2Vec::random(8, rng);
  ProjectResult pr = project_pure(coset_state(A, s, true), {"A"}, coset_state(A, s, false));
  EXPECT_NEAR(pr.accept_prob, 0.9375, kTol);
}

TEST(SubspacePvm, Examples) {
  Rng rng(12);
  F2Subspace A = sample_subspace(6, 3, rng);
  F2Vec s = F2Vec::random(6, rng);
  EXPECT_NEAR(subspace_pvm(coset_state(A, s, false), "A", A, s).accept_prob, 1, kTol);
  for (const auto& a : A.enumerate()) {
    SparseState basis = SparseState::basis(One("A", 6), a.to_uint());
    EXPECT_NEAR(subspace_pvm(basis, "A", A, F2Vec(6)).accept_prob, 1.0 / 8, kTol);
  }
}

TEST(SubspacePvm, MatchesProjectPureOnEntangledStates) {
  Rng rng(21);
  RegisterLayout lay({{"A", 4}, {"E", 2}});
  std::vector<F2Vec> all;
  for (uint64_t v = 1; v < 16; ++v) all.push_back(F2Vec::from_uint(v, 4));
  size_t planes = 0;
  std::set<std::vector<std::string>> seen;
  for (size_t i = 0; i < all.size(); ++i) {
    for (size_t j = i + 1; j < all.size(); ++j) {
      F2Subspace A = Span({all[i], all[j]}, 4);
      std::vector<std::string> key;
      for (const auto& b : A.basis()) key.push_back(b.to_string());
      if (!seen.insert(key).second) continue;
      ++planes;
      for (int k = 0; k < 10; ++k) {
        F2Vec s = F2Vec::random(4, rng);
        SparseState st = RandomState(lay, 12, rng);
        ProjectResult a = subspace_pvm(st, "A", A, s);
        ProjectResult b = project_pure(st, {"A"}, coset_state(A, s, false));
        ASSERT_NEAR(a.accept_prob, b.accept_prob, kTol);
        if (b.accept_prob > 1e-6) {
          EXPECT_LE(MaxDiff(a.post, b.post), 1e-9);
        }
      }
    }
  }
  EXPECT_EQ(planes, 35u);
}

TEST(Density, Examples) {
  SparseState x = SparseState::basis(One("X", 2), 0b10);
  DensityMatrix rho = density(x, {"X"});
  EXPECT_NEAR(std::abs(rho(2, 2) - Amp(1)), 0, kTol);
  EXPECT_NEAR(rho.cwiseAbs().sum(), 1, kTol);

  const double r2 = 1 / std::sqrt(2.0);
  SparseState bell = Make(RegisterLayout({{"A", 1}, {"B", 1}}), {{0b00, r2}, {0b11, r2}});
  DensityMatrix half = density(bell, {"A"});
  EXPECT_LE((half - Eigen::MatrixXcd::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff(), kTol);

  Rng rng(31);
  RegisterLayout lay({{"A", 3}, {"B", 3}});
  for (int i = 0; i < 100; ++i) {
    DensityMatrix r = density(RandomState(lay, 9, rng), {"B"});
    EXPECT_NEAR(std::abs(r.trace() - Amp(1)), 0, kTol);
    EXPECT_LE((r - r.adjoint()).cwiseAbs().maxCoeff(), kTol);
  }
}

TEST(TraceDistance, Examples) {
  DensityMatrix zero = DensityMatrix::Zero(2, 2), one = DensityMatrix::Zero(2, 2), plus(2, 2);
  zero(0, 0) = 1;
  one(1, 1) = 1;
  plus.setConstant(0.5);
  EXPECT_NEAR(trace_distance(zero, zero), 0, kTol);
  EXPECT_NEAR(trace_distance(zero, one), 1, kTol);
  EXPECT_NEAR(trace_distance(zero, plus), 1 / std::sqrt(2.0), kTol);
}

TEST(PureTraceDistance, MatchesDensityFormula) {
  Rng rng(17);
  RegisterLayout lay = One("X", 4);
  for (int i = 0; i < 50; ++i) {
    SparseState a = RandomState(lay, 5, rng), b = RandomState(lay, 5, rng);
    EXPECT_NEAR(pure_trace_distance(a, b), trace_distance(density(a, {"X"}), density(b, {"X"})), 1e-9);
  }
  SparseState a = RandomState(lay, 5, rng);
  EXPECT_EQ(pure_trace_distance(a, a), 0.0);
}

TEST(ZTwirl, Examples) {
  RegisterLayout lay = One("X", 3);
  Rng rng(6);
  SparseState fixed = RandomState(lay, 4, rng);
  DensityMatrix same = ztwirl_mixture([&](const F2Vec&) { return fixed; }, 3, {"X"});
  EXPECT_LE((same - density(fixed, {"X"})).cwiseAbs().maxCoeff(), kTol);

  const double r2 = 1 / std::sqrt(2.0);
  SparseState two = Make(lay, {{0b001, r2}, {0b110, r2}});
  DensityMatrix mix = ztwirl_mixture([&](const F2Vec& s) { return apply_phase(two, "X", s); }, 3, {"X"});
  DensityMatrix expect = DensityMatrix::Zero(8, 8);
  expect(1, 1) = expect(6, 6) = 0.5;
  EXPECT_LE((mix - expect).cwiseAbs().maxCoeff(), kTol);
}

TEST(ZTwirl, EqualsBlockDiagonalMixture) {
  Rng rng(kDefaultSeed);
  RegisterLayout lay({{"X", 4}, {"P", 2}});
  for (int i = 0; i < 100; ++i) {
    SparseState psi = RandomState(lay, 20, rng);
    DensityMatrix twirl = ztwirl_mixture([&](const F2Vec& s) { return apply_phase(psi, "X", s); }, 4, {"X", "P"});
    // Independent oracle: zero out the off-diagonal X blocks of |ψ⟩⟨ψ|.
    Eigen::VectorXcd v = to_dense(psi);
    DensityMatrix full = v * v.adjoint();
    for (int r = 0; r < 64; ++r)
      for (int c = 0; c < 64; ++c)
        if ((r >> 2) != (c >> 2)) full(r, c) = 0;
    EXPECT_LE(trace_distance(twirl, full), kTol);
  }
}

TEST(TwoTermHadamard, ParityConstraintAndUniformity) {
  Rng rng(44);
  F2Vec u = V("0110"), v = V("1100");
  std::map<std::string, int> counts;
  for (int i = 0; i < 8000; ++i) {
    F2Vec d = sample_two_term_hadamard(u, v, true, rng);
    EXPECT_TRUE(d.dot(u ^ v));
    counts[d.to_string()]++;
  }
  EXPECT_EQ(counts.size(), 8u);
  for (const auto& [d, c] : counts) EXPECT_NEAR(c, 1000, 4 * std::sqrt(1000 * 7.0 / 8));
}

TEST(TwoTermHadamard, AgreesWithDenseBornRule) {
  // (|u⟩ − |v⟩)/√2 after H: every d with d·(u⊕v)=1 has probability 2/2^n.
  const double r2 = 1 / std::sqrt(2.0);
  SparseState st = Make(One("X", 3), {{0b011, r2}, {0b101, -r2}});
  auto dist = outcome_distribution(hadamard(st, "X"), "X");
  for (uint64_t d = 0; d < 8; ++d) {
    const bool odd = __builtin_popcountll(d & 0b110) & 1;
    const double p = dist.count(d) ? dist[d] : 0.0;
    EXPECT_NEAR(p, odd ? 0.25 : 0.0, kTol);
  }
}

TEST(Discard, ClassicalRegisterOnly) {
  RegisterLayout lay({{"A", 2}, {"B", 2}});
  SparseState st = Make(lay, {{0b0111, 1}, {0b1011, 1}});
  st.normalize();
  auto [rest, val] = discard_classical_register(st, "B");
  EXPECT_EQ(val, 3u);
  EXPECT_EQ(rest.layout().total_width(), 2u);
  EXPECT_THROW(discard_classical_register(st, "A"), std::invalid_argument);
}

TEST(Unitarity, RandomOperationsPreserveNorm) {
  Rng rng(123);
  RegisterLayout lay({{"A", 4}, {"B", 4}});
  for (int i = 0; i < 50; ++i) {
    SparseState st = RandomState(lay, 6, rng);
    st = hadamard(st, "A");
    st = apply_phase(st, "B", F2Vec::random(4, rng));
    st = apply_classical_isometry(st, {"A"}, {"B"},
                                  [](const std::vector<uint64_t>& x) { return std::vector<uint64_t>{x[0] * 5 % 16}; });
    EXPECT_NEAR(st.norm_squared(), 1, kTol);
  }
}

}  // namespace
}  // namespace cdenlab
