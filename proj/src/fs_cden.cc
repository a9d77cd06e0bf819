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

#include <cstdio>
#include <stdexcept>

#include "cdenlab/rng.h"

namespace cdenlab {

namespace {

const std::vector<std::string> kSigmaRegs = {kRegS1, kRegS2, kRegS3};
const std::string kRegV = "V";

// Stream labels for experiment sub-streams; shared by the real and simulated
// experiments so paired runs line up.
constexpr uint64_t kStreamSetup = 1;
constexpr uint64_t kStreamAdversary = 2;
constexpr uint64_t kStreamVerifier = 3;

std::vector<uint64_t> transcript_words(const Transcript& t) { return {t.s1, t.s2, t.s3}; }

Transcript transcript_of(const std::vector<uint64_t>& v, size_t offset) {
  return {v[offset], v[offset + 1], v[offset + 2]};
}

}  // namespace

void FsParams::validate() const {
  group.validate();
  if (lambda < 2 || lambda > kMaxLambda || lambda % 2 != 0) {
    throw std::invalid_argument("lambda must be even and in [2, 12]");
  }
}

RegisterLayout FsParams::layout() const {
  return RegisterLayout({{kRegA, lambda},
                         {kRegS1, group.element_bits()},
                         {kRegS2, group.scalar_bits()},
                         {kRegS3, group.scalar_bits()}});
}

uint64_t branch_randomness(const FsParams& fp, const Oracle& h, uint64_t k, uint64_t a) {
  return query_padded(h, concat_bits(k, a, fp.lambda), 2 * fp.lambda) % fp.group.q;
}

uint64_t fs_challenge_input(const FsParams& fp, const Oracle& h, uint64_t a, uint64_t x, uint64_t s1) {
  const size_t eb = fp.group.element_bits();
  const size_t bits = fp.lambda + 2 * eb;
  if (bits > h.in_bits()) throw std::invalid_argument("oracle too narrow for a||x||s1");
  return concat_bits(concat_bits(a, x, eb), s1, eb) << (h.in_bits() - bits);
}

uint64_t fs_challenge(const FsParams& fp, const Oracle& h, uint64_t a, uint64_t x, uint64_t s1) {
  return h.query(fs_challenge_input(fp, h, a, x, s1)) % fp.group.q;
}

Transcript honest_transcript(const FsParams& fp, const Oracle& h, uint64_t x, uint64_t w, uint64_t k, uint64_t a) {
  const uint64_t r = branch_randomness(fp, h, k, a);
  Transcript t;
  t.s1 = p1(fp.group, x, w, r);
  t.s2 = fs_challenge(fp, h, a, x, t.s1);
  t.s3 = p3(fp.group, x, w, r, t.s2);
  return t;
}

Transcript simulated_transcript(const FsParams& fp, const Oracle& h, uint64_t x, const SimKeys& keys, uint64_t a) {
  const uint64_t s2 = branch_randomness(fp, h, keys.k_ch, a);
  const uint64_t s3 = branch_randomness(fp, h, keys.k, a);
  return simulate(fp.group, x, s2, s3);
}

bool fs_predicate(const FsParams& fp, const Oracle& h, uint64_t x, uint64_t a, const Transcript& t) {
  if (t.s1 == 0 || t.s1 >= fp.group.p) return false;
  return t.s2 == fs_challenge(fp, h, a, x, t.s1) && verify(fp.group, x, t);
}

std::pair<ProofState, FsDeletionKey> prove(const FsParams& fp, uint64_t x, uint64_t w, OraclePtr h, Rng& rng) {
  fp.validate();
  if (w == 0 || w >= fp.group.q || mod_pow(fp.group.g, w, fp.group.p) != x) {
    throw std::invalid_argument("prove: witness does not match the statement");
  }
  FsDeletionKey dk;
  dk.A = sample_subspace(fp.lambda, fp.lambda / 2, rng);
  dk.s = F2Vec::random(fp.lambda, rng);
  dk.k = rng.bits(static_cast<unsigned>(fp.lambda));
  dk.w = w;
  SparseState st = coset_state(dk.A, dk.s, false, kRegA);
  for (const auto& r : kSigmaRegs) st = add_register(st, r, fp.layout().width(r));
  st = apply_classical_isometry(st, {kRegA}, kSigmaRegs, [&](const std::vector<uint64_t>& in) {
    return transcript_words(honest_transcript(fp, *h, x, w, dk.k, in[0]));
  });
  return {ProofState{std::move(st), x}, dk};
}

VerifyResult verify(const FsParams& fp, uint64_t x, const ProofState& pf, OraclePtr h, Rng* rng) {
  if (!(pf.state.layout() == fp.layout())) throw std::invalid_argument("verify: proof layout mismatch");
  const auto predicate = [&](const std::vector<uint64_t>& in) {
    return std::vector<uint64_t>{fs_predicate(fp, *h, x, in[0], transcript_of(in, 1)) ? 1u : 0u};
  };
  const std::vector<std::string> in_regs = {kRegA, kRegS1, kRegS2, kRegS3};
  SparseState st = add_register(pf.state, kRegV, 1);
  st = apply_classical_isometry(st, in_regs, {kRegV}, predicate);
  const auto dist = outcome_distribution(st, kRegV);
  VerifyResult res;
  res.accept_prob = dist.count(1) ? dist.at(1) : 0.0;
  uint64_t outcome;
  if (rng != nullptr) {
    outcome = rng->uniform01() < res.accept_prob ? 1 : 0;
  } else {
    outcome = res.accept_prob > 0 ? 1 : 0;
  }
  res.accepted = outcome == 1;
  auto [post, p] = postselect(st, kRegV, outcome);
  (void)p;
  post = apply_classical_isometry(post, in_regs, {kRegV}, predicate);
  res.post = ProofState{discard_classical_register(post, kRegV).first, pf.x};
  return res;
}

ProofState del(const ProofState& pf) { return pf; }

DelVerResult delver_with(const FsParams& fp, const SparseState& cert, const F2Subspace& A, const F2Vec& s,
                         const std::function<Transcript(uint64_t)>& transcript, Rng* rng) {
  if (!(cert.layout() == fp.layout())) throw std::invalid_argument("delver: certificate layout mismatch");
  SparseState st = apply_classical_isometry(cert, {kRegA}, kSigmaRegs, [&](const std::vector<uint64_t>& in) {
    return transcript_words(transcript(in[0]));
  });
  const auto& lay = st.layout();
  const double total = st.norm_squared();
  SparseState a_only(lay.subset({kRegA}));
  for (const auto& [l, amp] : st.amplitudes()) {
    if (lay.get(l, kRegS1) == 0 && lay.get(l, kRegS2) == 0 && lay.get(l, kRegS3) == 0) {
      a_only.add(lay.get(l, kRegA), amp);
    }
  }
  DelVerResult res;
  const double p_zero = total > 0 ? a_only.norm_squared() / total : 0.0;
  if (p_zero > 0) {
    a_only.normalize();
    res.accept_prob = p_zero * subspace_pvm(a_only, kRegA, A, s).accept_prob;
  }
  if (rng != nullptr) {
    res.accepted = rng->uniform01() < res.accept_prob;
  } else {
    res.accepted = res.accept_prob > 1.0 - 1e-9;
  }
  return res;
}

DelVerResult delver(const FsParams& fp, const FsDeletionKey& dk, const ProofState& cert, uint64_t x, OraclePtr h,
                    Rng* rng) {
  return delver_with(
      fp, cert.state, dk.A, dk.s, [&](uint64_t a) { return honest_transcript(fp, *h, x, dk.w, dk.k, a); }, rng);
}

SimKeys sample_sim_keys(const FsParams& fp, Rng& rng) {
  fp.validate();
  SimKeys keys;
  keys.A = sample_subspace(fp.lambda, fp.lambda / 2, rng);
  keys.s = F2Vec::random(fp.lambda, rng);
  keys.k = rng.bits(static_cast<unsigned>(fp.lambda));
  do {
    keys.k_ch = rng.bits(static_cast<unsigned>(fp.lambda));
  } while (keys.k_ch == keys.k);
  return keys;
}

OraclePtr sim_oracle(const FsParams& fp, OraclePtr h, const SimKeys& keys, uint64_t x) {
  std::map<uint64_t, uint64_t> points;
  for (const auto& av : keys.A.enumerate()) {
    if (av.is_zero()) continue;
    const uint64_t a = av.to_uint();
    const Transcript t = simulated_transcript(fp, *h, x, keys, a);
    points[fs_challenge_input(fp, *h, a, x, t.s1)] = query_padded(*h, concat_bits(keys.k_ch, a, fp.lambda), 2 * fp.lambda);
  }
  return reprogram_points(h, std::move(points));
}

ProofState sim_proof(const FsParams& fp, OraclePtr h, const SimKeys& keys, uint64_t x) {
  SparseState st = coset_state(keys.A, keys.s, true, kRegA);
  for (const auto& r : kSigmaRegs) st = add_register(st, r, fp.layout().width(r));
  st = apply_classical_isometry(st, {kRegA}, kSigmaRegs, [&](const std::vector<uint64_t>& in) {
    return transcript_words(simulated_transcript(fp, *h, x, keys, in[0]));
  });
  return {std::move(st), x};
}

// ---------------------------------------------------------------------------
// Adversaries

FsAdversary honest_deleter() {
  return {"honest-deleter", [](const FsParams& fp, const ProofState& pf, OraclePtr h, Rng& rng) {
            auto v = verify(fp, pf.x, pf, h, &rng);
            return AdversaryOutput{v.post.state, v.accepted ? 1u : 0u, 1};
          }};
}

FsAdversary measure_A() {
  return {"measure-A", [](const FsParams& fp, const ProofState& pf, OraclePtr, Rng& rng) {
            SparseState st = pf.state;
            uint64_t memo = 0;
            size_t bits = 0;
            const RegisterLayout lay = fp.layout();
            for (const auto& r : lay.registers()) {
              auto m = measure(st, r.name, rng);
              st = std::move(m.post);
              memo = (memo << r.width) | m.value;
              bits += r.width;
            }
            return AdversaryOutput{st, memo, bits};
          }};
}

FsAdversary non_deleting() {
  return {"non-deleting", [](const FsParams& fp, const ProofState&, OraclePtr, Rng&) {
            return AdversaryOutput{SparseState::basis(fp.layout(), 0), std::nullopt, 0};
          }};
}

FsAdversary garbage() {
  return {"garbage", [](const FsParams& fp, const ProofState&, OraclePtr, Rng& rng) {
            const auto lay = fp.layout();
            Label l = 0;
            for (const auto& r : lay.registers()) l = lay.set(l, r.name, rng.bits(static_cast<unsigned>(r.width)));
            return AdversaryOutput{SparseState::basis(lay, l), std::nullopt, 0};
          }};
}

FsAdversary adversary_by_name(const std::string& name) {
  for (auto make : {honest_deleter, measure_A, non_deleting, garbage}) {
    FsAdversary a = make();
    if (a.name == name) return a;
  }
  throw std::invalid_argument("unknown adversary '" + name + "'");
}

// ---------------------------------------------------------------------------
// Experiments

nlohmann::json ExperimentRecord::to_json() const {
  nlohmann::json j;
  j["accepted"] = accepted;
  j["accept_prob"] = accept_prob;
  if (residual.has_value()) {
    j["residual"] = F2Vec::from_uint(*residual, residual_bits).to_hex();
  } else {
    j["residual"] = nullptr;
  }
  j["lambda"] = lambda;
  j["seed"] = seed;
  j["oracle_spec"] = oracle_spec;
  return j;
}

namespace {

ExperimentRecord finish(const FsParams& fp, uint64_t seed, OraclePtr h, const AdversaryOutput& out,
                        const DelVerResult& dv) {
  ExperimentRecord rec;
  rec.accepted = dv.accepted;
  rec.accept_prob = dv.accept_prob;
  if (dv.accepted && out.memo.has_value()) {
    rec.residual = out.memo;
    rec.residual_bits = out.memo_bits;
  }
  rec.lambda = fp.lambda;
  rec.seed = seed;
  rec.oracle_spec = h->spec();
  return rec;
}

}  // namespace

ExperimentRecord nizk_real_experiment(const FsParams& fp, uint64_t x, uint64_t w, OraclePtr h,
                                      const FsAdversary& adv, uint64_t seed) {
  const Rng master(seed);
  Rng setup = master.split(kStreamSetup), adv_rng = master.split(kStreamAdversary),
      ver_rng = master.split(kStreamVerifier);
  auto [pf, dk] = prove(fp, x, w, h, setup);
  const AdversaryOutput out = adv.run(fp, pf, h, adv_rng);
  const DelVerResult dv = delver(fp, dk, ProofState{out.cert, x}, x, h, &ver_rng);
  return finish(fp, seed, h, out, dv);
}

ExperimentRecord simulate_experiment(const FsParams& fp, uint64_t x, OraclePtr h, const FsAdversary& adv,
                                     uint64_t seed) {
  const Rng master(seed);
  Rng setup = master.split(kStreamSetup), adv_rng = master.split(kStreamAdversary),
      ver_rng = master.split(kStreamVerifier);
  const SimKeys keys = sample_sim_keys(fp, setup);
  const OraclePtr h_prime = sim_oracle(fp, h, keys, x);
  const ProofState pf = sim_proof(fp, h, keys, x);
  const AdversaryOutput out = adv.run(fp, pf, h_prime, adv_rng);
  const DelVerResult dv = delver_with(
      fp, out.cert, keys.A, keys.s, [&](uint64_t a) { return simulated_transcript(fp, *h, x, keys, a); }, &ver_rng);
  return finish(fp, seed, h, out, dv);
}

}  // namespace cdenlab
