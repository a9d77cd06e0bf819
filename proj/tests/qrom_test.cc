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

#include "cdenlab/qrom.h"

#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "cdenlab/rng.h"
#include "gtest/gtest.h"

namespace cdenlab {
namespace {

constexpr double kTol = 1e-9;

// Starts from a fixed superposition on QIN and, before query t ≥ 2, XORs
// `shift[t-2]` into QIN. Classical permutations only, so the query inputs are
// known in closed form.
class ShiftAlgorithm final : public OracleAlgorithm {
 public:
  ShiftAlgorithm(size_t in_bits, size_t out_bits, std::vector<std::pair<uint64_t, Amp>> init,
                 std::vector<uint64_t> shifts)
      : layout_({{"QIN", in_bits}, {"QOUT", out_bits}}), init_(std::move(init)), shifts_(std::move(shifts)) {}
  size_t num_queries() const override { return shifts_.size() + (init_.empty() ? 0 : 1); }
  SparseState initial_state() const override {
    SparseState st(layout_);
    if (init_.empty()) {
      st.add(0, 1);
      return st;
    }
    for (auto [x, a] : init_) st.add(layout_.set(0, "QIN", x), a);
    st.normalize();
    return st;
  }
  SparseState step(size_t t, const SparseState& st) const override {
    if (t < 2 || t - 2 >= shifts_.size()) return st;
    SparseState out(layout_);
    for (const auto& [l, a] : st.amplitudes()) out.add(layout_.set(l, "QIN", layout_.get(l, "QIN") ^ shifts_[t - 2]), a);
    return out;
  }

 private:
  RegisterLayout layout_;
  std::vector<std::pair<uint64_t, Amp>> init_;
  std::vector<uint64_t> shifts_;
};

TEST(OracleTable, Deterministic) {
  OraclePtr a = oracle_new(5, 16, 16), b = oracle_new(5, 16, 16);
  for (uint64_t x = 0; x < 1000; ++x) EXPECT_EQ(a->query(x), b->query(x));
  EXPECT_THROW(a->query(1 << 16), std::invalid_argument);
}

TEST(OracleTable, DistinctSeedsDisagree) {
  OraclePtr a = oracle_new(1, 20, 8), b = oracle_new(2, 20, 8);
  int differ = 0;
  for (uint64_t x = 0; x < 10000; ++x) differ += a->query(x) != b->query(x);
  const double p = 1 - 1.0 / 256;
  EXPECT_NEAR(differ / 10000.0, p, 3 * std::sqrt(p * (1 - p) / 10000) + 1e-4);
}

TEST(OracleTable, BitBalance) {
  OraclePtr h = oracle_new(kDefaultSeed, 32, 32);
  std::vector<int> ones(32, 0);
  for (uint64_t x = 0; x < 10000; ++x) {
    const uint64_t y = h->query(x * 2654435761u % (uint64_t{1} << 32));
    for (int b = 0; b < 32; ++b) ones[b] += (y >> b) & 1;
  }
  for (int b = 0; b < 32; ++b) EXPECT_NEAR(ones[b] / 10000.0, 0.5, 0.02) << "bit " << b;
}

TEST(Reprogram, EmptyPointMapIsBase) {
  OraclePtr h = oracle_new(3, 12, 12);
  OraclePtr v = reprogram_points(h, {});
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const uint64_t x = rng.bits(12);
    EXPECT_EQ(v->query(x), h->query(x));
  }
}

TEST(Reprogram, PointsAreLocal) {
  OraclePtr h = oracle_new(3, 8, 8);
  OraclePtr v = reprogram_points(h, {{7, 1}, {200, 2}});
  for (uint64_t x = 0; x < 256; ++x) {
    const uint64_t want = x == 7 ? 1 : x == 200 ? 2 : h->query(x);
    EXPECT_EQ(v->query(x), want);
  }
}

TEST(Reprogram, SwapExhaustiveAndInvolution) {
  OraclePtr h = oracle_new(9, 6, 10);
  OraclePtr s = reprogram_swap(h, 5, 40);
  for (uint64_t x = 0; x < 64; ++x) {
    const uint64_t want = x == 5 ? h->query(40) : x == 40 ? h->query(5) : h->query(x);
    EXPECT_EQ(s->query(x), want);
  }
  OraclePtr ss = reprogram_swap(s, 5, 40);
  for (uint64_t x = 0; x < 256 && x < 64; ++x) EXPECT_EQ(ss->query(x), h->query(x));
}

TEST(Reprogram, PrefixExhaustive) {
  OraclePtr h = oracle_new(11, 8, 8);
  OraclePtr p = restrict_prefix(h, 0b101, 3);
  EXPECT_EQ(p->in_bits(), 5u);
  for (uint64_t w = 0; w < 32; ++w) EXPECT_EQ(p->query(w), h->query((0b101 << 5) | w));
}

TEST(Reprogram, SpecRoundTrip) {
  OraclePtr h = oracle_new(77, 8, 8);
  OraclePtr v = restrict_prefix(reprogram_swap(reprogram_points(h, {{3, 9}}), 1, 2), 1, 2);
  OraclePtr r = oracle_from_spec(v->spec());
  for (uint64_t x = 0; x < 64; ++x) EXPECT_EQ(r->query(x), v->query(x));
  EXPECT_EQ(r->spec(), v->spec());
}

TEST(QueryPadded, PadsOnTheRight) {
  OraclePtr h = oracle_new(4, 10, 8);
  EXPECT_EQ(query_padded(*h, 0b101, 3), h->query(0b101 << 7));
  EXPECT_THROW(query_padded(*h, 0, 11), std::invalid_argument);
}

TEST(CoherentQuery, Examples) {
  OraclePtr o = oracle_new(21, 4, 3);
  RegisterLayout lay({{"QIN", 4}, {"QOUT", 3}});
  SparseState x = SparseState::basis(lay, lay.set(0, "QIN", 9));
  SparseState qx = coherent_query(x, "QIN", "QOUT", *o);
  EXPECT_NEAR(std::abs(qx.amplitude(lay.set(lay.set(0, "QIN", 9), "QOUT", o->query(9))) - Amp(1)), 0, kTol);
  SparseState back = coherent_query(qx, "QIN", "QOUT", *o);
  EXPECT_NEAR(std::abs(back.amplitude(lay.set(0, "QIN", 9)) - Amp(1)), 0, kTol);

  SparseState sup(lay);
  sup.add(lay.set(0, "QIN", 2), 1);
  sup.add(lay.set(0, "QIN", 13), 1);
  sup.normalize();
  SparseState q = coherent_query(sup, "QIN", "QOUT", *o);
  const double r2 = 1 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(q.amplitude(lay.set(lay.set(0, "QIN", 2), "QOUT", o->query(2))) - Amp(r2)), 0, kTol);
  EXPECT_NEAR(std::abs(q.amplitude(lay.set(lay.set(0, "QIN", 13), "QOUT", o->query(13))) - Amp(r2)), 0, kTol);
}

TEST(QueryWeight, Examples) {
  OraclePtr o = oracle_new(1, 4, 2);
  const std::set<uint64_t> S = {6};
  ShiftAlgorithm never(4, 2, {{1, 1}}, {});
  EXPECT_NEAR(query_weight(run_with_oracle(never, o).trace, S), 0, kTol);
  ShiftAlgorithm point(4, 2, {{6, 1}}, {});
  EXPECT_NEAR(query_weight(run_with_oracle(point, o).trace, S), 1, kTol);
  ShiftAlgorithm half(4, 2, {{6, 1}, {3, 1}}, {});
  EXPECT_NEAR(query_weight(run_with_oracle(half, o).trace, S), 0.5, kTol);
}

TEST(QueryTrace, SchmidtTermsReconstructQueryRegister) {
  OraclePtr o = oracle_new(1, 3, 2);
  ShiftAlgorithm alg(3, 2, {{1, 1}, {4, Amp(0, 1)}, {7, -2}}, {3});
  RunResult r = run_with_oracle(alg, o);
  ASSERT_EQ(r.trace.queries.size(), 2u);
  for (const auto& q : r.trace.queries) {
    ASSERT_TRUE(q.has_schmidt);
    double total = 0;
    for (const auto& t : q.schmidt) total += t.weight;
    EXPECT_NEAR(total, 1, kTol);
    double wsum = 0;
    for (auto [x, p] : q.input_weights) wsum += p;
    EXPECT_NEAR(wsum, 1, kTol);
  }
}

TEST(Extraction, Examples) {
  OraclePtr o = oracle_new(8, 4, 4);
  Rng rng(2);
  ShiftAlgorithm one(4, 4, {{6, 1}}, {});
  for (int i = 0; i < 20; ++i) {
    auto r = extract_by_random_query(one, o, rng);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->first, 6u);
    EXPECT_EQ(r->second, o->query(6));
  }
  // Query 1 on 6 ∈ S, query 2 on 6⊕5 = 3 ∉ S.
  ShiftAlgorithm two(4, 4, {{6, 1}}, {5});
  RandomQueryExtractor ex(two, o);
  int hits = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) hits += ex.sample(rng)->first == 6;
  EXPECT_NEAR(hits / double(n), 0.5, 3 * std::sqrt(0.25 / n));
  EXPECT_GE(hits / double(n), 0.25);

  ShiftAlgorithm none(4, 4, {}, {});
  EXPECT_FALSE(extract_by_random_query(none, o, rng).has_value());
}

TEST(PrfSplit, Examples) {
  OraclePtr h = oracle_new(kDefaultSeed, 24, 32);
  F2Vec k = F2Vec::from_uint(0x5a, 8);
  PrfReport empty = prf_split_check(h, k, 0, 1);
  EXPECT_EQ(empty.probes, 0u);
  EXPECT_TRUE(empty.bit_freq_h.empty());
  PrfReport rep = prf_split_check(h, k, 10000, 1);
  EXPECT_TRUE(rep.ok);
  for (double f : rep.bit_freq_h) EXPECT_NEAR(f, 0.5, 0.02);
  EXPECT_EQ(prf_split_check(h, k, 500, 3).to_json(), prf_split_check(h, k, 500, 3).to_json());
  EXPECT_THROW(prf_split_check(h, F2Vec(24), 10, 1), std::invalid_argument);
}

}  // namespace
}  // namespace cdenlab
