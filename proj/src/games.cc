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

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

#include "cdenlab/rng.h"
#include "cdenlab/sigma.h"

namespace cdenlab {

namespace {

// Stream labels inside one trial. The deniability experiments reuse the
// fs_cden split (1 = setup, 2 = adversary, 3 = verifier).
constexpr uint64_t kSetup = 1;
constexpr uint64_t kAdv = 2;
constexpr uint64_t kVer = 3;
constexpr uint64_t kStatement = 4;
constexpr uint64_t kMessage = 5;

constexpr size_t kMaxGameLambdaX = 16;

uint64_t low_mask(size_t bits) { return bits >= 64 ? ~uint64_t{0} : (uint64_t{1} << bits) - 1; }

bool parity(uint64_t v) { return std::popcount(v) & 1; }

void check_lambda_x(size_t lambda_x, const char* who) {
  if (lambda_x < 1 || lambda_x > kMaxGameLambdaX) {
    throw std::invalid_argument(std::string(who) + ": lambda_x must lie in [1, 16]");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Adaptive classical deletion

const char* to_string(FChoice mode) {
  return mode == FChoice::kPreCommitted ? "pre-committed" : "post-state";
}

AdpDelInstance sample_adp_instance(size_t lambda_x, Rng& rng) {
  AdpDelInstance inst;
  inst.x0 = rng.bits(static_cast<unsigned>(lambda_x));
  do {
    inst.x1 = rng.bits(static_cast<unsigned>(lambda_x));
  } while (inst.x1 == inst.x0);
  inst.c = rng.coin();
  return inst;
}

SparseState adp_state(size_t lambda_x, const AdpDelInstance& inst) {
  const RegisterLayout lay({{kAdpRegX, lambda_x}});
  SparseState st(lay);
  const double amp = 1.0 / std::sqrt(2.0);
  st.add(inst.x0, amp);
  st.add(inst.x1, inst.c ? -amp : amp);
  st.prune();
  return st;
}

bool adp_check(size_t lambda_x, const AdpDelInstance& inst, const AdpDelAnswer& ans) {
  if (!ans.f) throw std::invalid_argument("adp_check: missing function");
  if (ans.f_bits < 1 || ans.f_bits > 64) throw std::invalid_argument("adp_check: f width out of range");
  const uint64_t xm = low_mask(lambda_x), fm = low_mask(ans.f_bits);
  if ((ans.y & ~xm) || (ans.d1 & ~xm)) throw std::invalid_argument("adp_check: y or d1 wider than lambda_x");
  if (ans.d2 & ~fm) throw std::invalid_argument("adp_check: d2 wider than f");
  const uint64_t f0 = ans.f(inst.x0), f1 = ans.f(inst.x1);
  if ((f0 & ~fm) || (f1 & ~fm)) throw std::invalid_argument("adp_check: f output wider than declared");
  if (ans.y != inst.x0 && ans.y != inst.x1) return false;
  return (parity(ans.d1 & (inst.x0 ^ inst.x1)) ^ parity(ans.d2 & (f0 ^ f1))) == inst.c;
}

AdpDelStrategy adp_oracle_cheat() {
  AdpDelStrategy s;
  s.name = "oracle-cheat";
  s.needs_hidden = true;
  auto answer = [](const AdpDelInstance& inst) {
    AdpDelAnswer a;
    a.f = [](uint64_t) { return uint64_t{0}; };
    a.f_bits = 1;
    a.y = inst.x0;
    const uint64_t delta = inst.x0 ^ inst.x1;
    a.d1 = inst.c ? (uint64_t{1} << (63 - std::countl_zero(delta))) : 0;
    return a;
  };
  s.run = [answer](const AdpDelView& v, Rng&) {
    if (!v.hidden) throw std::logic_error("oracle-cheat needs the hidden instance");
    std::vector<AdpDelAnswer> out;
    for (const auto& inst : *v.hidden) out.push_back(answer(inst));
    return out;
  };
  s.exact_index = [answer](size_t lambda_x, const AdpDelInstance& inst) {
    return adp_check(lambda_x, inst, answer(inst)) ? 1.0 : 0.0;
  };
  return s;
}

AdpDelStrategy adp_computational() {
  AdpDelStrategy s;
  s.name = "computational";
  s.run = [](const AdpDelView& v, Rng& rng) {
    std::vector<AdpDelAnswer> out;
    for (const auto& st : v.states) {
      AdpDelAnswer a;
      a.f = [](uint64_t) { return uint64_t{0}; };
      a.f_bits = 1;
      a.y = measure(st, kAdpRegX, rng).value;
      a.d1 = rng.bits(static_cast<unsigned>(v.lambda_x));
      a.d2 = rng.bits(1);
      out.push_back(std::move(a));
    }
    return out;
  };
  // Born weights of the outcome times the fraction of (d¹, d²) that satisfy
  // the parity check, counted exhaustively.
  s.exact_index = [](size_t lambda_x, const AdpDelInstance& inst) {
    double p = 0;
    for (const auto& [y, w] : outcome_distribution(adp_state(lambda_x, inst), kAdpRegX)) {
      uint64_t good = 0;
      for (uint64_t d1 = 0; d1 <= low_mask(lambda_x); ++d1) {
        for (uint64_t d2 = 0; d2 < 2; ++d2) {
          AdpDelAnswer a{[](uint64_t) { return uint64_t{0}; }, 1, y, d1, d2};
          good += adp_check(lambda_x, inst, a);
        }
      }
      p += w * static_cast<double>(good) / std::ldexp(1.0, static_cast<int>(lambda_x) + 1);
    }
    return p;
  };
  return s;
}

AdpDelStrategy adp_hadamard() {
  AdpDelStrategy s;
  s.name = "hadamard";
  auto ident = [](uint64_t x) { return x; };
  s.run = [ident](const AdpDelView& v, Rng& rng) {
    std::vector<AdpDelAnswer> out;
    for (const auto& st : v.states) {
      AdpDelAnswer a;
      a.f = ident;
      a.f_bits = v.lambda_x;
      a.d1 = measure(hadamard(st, kAdpRegX), kAdpRegX, rng).value;
      a.d2 = 0;
      a.y = rng.bits(static_cast<unsigned>(v.lambda_x));
      out.push_back(std::move(a));
    }
    return out;
  };
  s.exact_index = [ident](size_t lambda_x, const AdpDelInstance& inst) {
    double p = 0;
    const SparseState h = hadamard(adp_state(lambda_x, inst), kAdpRegX);
    for (const auto& [d, w] : outcome_distribution(h, kAdpRegX)) {
      uint64_t good = 0;
      for (uint64_t y = 0; y <= low_mask(lambda_x); ++y) {
        good += adp_check(lambda_x, inst, AdpDelAnswer{ident, lambda_x, y, d, 0});
      }
      p += w * static_cast<double>(good) / std::ldexp(1.0, static_cast<int>(lambda_x));
    }
    return p;
  };
  return s;
}

AdpDelStrategy adp_strategy_by_name(const std::string& name) {
  for (auto make : {adp_oracle_cheat, adp_computational, adp_hadamard}) {
    AdpDelStrategy s = make();
    if (s.name == name) return s;
  }
  throw std::invalid_argument("unknown adp-del strategy '" + name + "'");
}

GameStats run_adp_del(const AdpDelStrategy& strategy, size_t lambda_x, size_t reps, uint64_t trials,
                      uint64_t seed) {
  check_lambda_x(lambda_x, "run_adp_del");
  if (reps < 1 || reps > 64) throw std::invalid_argument("run_adp_del: reps must lie in [1, 64]");
  GameStats gs;
  gs.game = "adp-del";
  gs.seed = seed;
  gs.params = {{"strategy", strategy.name},
               {"lambda_x", lambda_x},
               {"reps", reps},
               {"f_choice", to_string(strategy.f_mode)}};
  for (uint64_t t = 0; t < trials; ++t) {
    const Rng trial = Rng::for_trial(seed, t);
    Rng setup = trial.split(kSetup), adv = trial.split(kAdv);
    std::vector<AdpDelInstance> hidden;
    AdpDelView view;
    view.lambda_x = lambda_x;
    for (size_t i = 0; i < reps; ++i) {
      hidden.push_back(sample_adp_instance(lambda_x, setup));
      view.states.push_back(adp_state(lambda_x, hidden.back()));
    }
    if (strategy.needs_hidden) view.hidden = &hidden;
    const auto answers = strategy.run(view, adv);
    if (answers.size() != reps) throw std::invalid_argument("run_adp_del: strategy returned the wrong count");
    bool win = true;
    double exact = 1.0;
    for (size_t i = 0; i < reps; ++i) {
      win = adp_check(lambda_x, hidden[i], answers[i]) && win;
      if (strategy.exact_index) exact *= strategy.exact_index(lambda_x, hidden[i]);
    }
    if (strategy.exact_index) {
      gs.record(win, exact);
    } else {
      gs.record(win);
    }
  }
  gs.finalize();
  return gs;
}

// ---------------------------------------------------------------------------
// Double extraction

namespace {
const std::string kRegB = "B";
const std::string kRegXd = "X";
}  // namespace

SparseState double_ext_state(size_t lambda_x, const DoubleExtInstance& inst, bool updated_variant) {
  const double amp = 1.0 / std::sqrt(2.0);
  if (updated_variant) {
    SparseState st(RegisterLayout({{kRegXd, lambda_x}}));
    st.add(inst.x0, amp);
    st.add(inst.x1, inst.b ? -amp : amp);
    st.prune();
    return st;
  }
  const RegisterLayout lay({{kRegB, 1}, {kRegXd, lambda_x}});
  SparseState st(lay);
  st.add(lay.set(lay.set(0, kRegB, 0), kRegXd, inst.x0), amp);
  st.add(lay.set(lay.set(0, kRegB, 1), kRegXd, inst.x1), inst.b ? -amp : amp);
  return st;
}

namespace {

// The value a computational-basis measurement teaches, and which slot it fills.
struct Learned {
  uint64_t value;
  int slot;  // 0 or 1
};

Learned learn(const DoubleExtView& v, Label label) {
  const auto& lay = v.state.layout();
  const uint64_t x = lay.get(label, kRegXd);
  if (!v.updated_variant) return {x, static_cast<int>(lay.get(label, kRegB))};
  // Without the B register the hashes tell the two values apart.
  return {x, query_padded(*v.h, x, v.lambda_x) == v.hx0 ? 0 : 1};
}

Label measure_all(const SparseState& st, Rng& rng) {
  SparseState cur = st;
  Label label = 0;
  for (const auto& r : st.layout().registers()) {
    auto m = measure(cur, r.name, rng);
    label = st.layout().set(label, r.name, m.value);
    cur = std::move(m.post);
  }
  return label;
}

}  // namespace

DoubleExtStrategy dx_measure_and_guess() {
  DoubleExtStrategy s;
  s.name = "measure-and-guess";
  s.run = [](const DoubleExtView& v, Rng& rng) {
    const Learned l = learn(v, measure_all(v.state, rng));
    const uint64_t guess = rng.bits(static_cast<unsigned>(v.lambda_x));
    return l.slot == 0 ? std::make_pair(l.value, guess) : std::make_pair(guess, l.value);
  };
  s.exact = [](const DoubleExtView& v, const DoubleExtInstance& inst) {
    double p = 0;
    for (const auto& [label, a] : v.state.amplitudes()) {
      const Learned l = learn(v, label);
      const bool right = l.value == (l.slot == 0 ? inst.x0 : inst.x1);
      if (right) p += std::norm(a) * std::ldexp(1.0, -static_cast<int>(v.lambda_x));
    }
    return p;
  };
  return s;
}

DoubleExtStrategy dx_oracle_cheat() {
  DoubleExtStrategy s;
  s.name = "oracle-cheat";
  s.needs_hidden = true;
  s.run = [](const DoubleExtView& v, Rng&) {
    if (!v.hidden) throw std::logic_error("oracle-cheat needs the hidden instance");
    return std::make_pair(v.hidden->x0, v.hidden->x1);
  };
  s.exact = [](const DoubleExtView&, const DoubleExtInstance&) { return 1.0; };
  return s;
}

DoubleExtStrategy dx_measured_twice() {
  DoubleExtStrategy s;
  s.name = "measured-twice";
  s.run = [](const DoubleExtView& v, Rng& rng) {
    const uint64_t x = v.state.layout().get(measure_all(v.state, rng), kRegXd);
    return std::make_pair(x, x);
  };
  s.exact = [](const DoubleExtView& v, const DoubleExtInstance& inst) {
    double p = 0;
    for (const auto& [label, a] : v.state.amplitudes()) {
      const uint64_t x = v.state.layout().get(label, kRegXd);
      if (x == inst.x0 && x == inst.x1) p += std::norm(a);
    }
    return p;
  };
  return s;
}

DoubleExtStrategy dx_strategy_by_name(const std::string& name) {
  for (auto make : {dx_measure_and_guess, dx_oracle_cheat, dx_measured_twice}) {
    DoubleExtStrategy s = make();
    if (s.name == name) return s;
  }
  throw std::invalid_argument("unknown double-ext strategy '" + name + "'");
}

GameStats run_double_extraction(const DoubleExtStrategy& strategy, size_t lambda_x, uint64_t trials, uint64_t seed,
                                bool updated_variant) {
  check_lambda_x(lambda_x, "run_double_extraction");
  GameStats gs;
  gs.game = "double-ext";
  gs.seed = seed;
  gs.params = {{"strategy", strategy.name}, {"lambda_x", lambda_x}, {"updated_variant", updated_variant}};
  for (uint64_t t = 0; t < trials; ++t) {
    const Rng trial = Rng::for_trial(seed, t);
    Rng setup = trial.split(kSetup), adv = trial.split(kAdv);
    DoubleExtInstance inst;
    inst.x0 = setup.bits(static_cast<unsigned>(lambda_x));
    do {
      inst.x1 = setup.bits(static_cast<unsigned>(lambda_x));
    } while (updated_variant && inst.x1 == inst.x0);
    inst.b = setup.coin();
    DoubleExtView view;
    view.lambda_x = lambda_x;
    view.updated_variant = updated_variant;
    view.state = double_ext_state(lambda_x, inst, updated_variant);
    view.h = oracle_new(setup.next_u64(), lambda_x, 32);
    view.hx0 = view.h->query(inst.x0);
    view.hx1 = view.h->query(inst.x1);
    if (strategy.needs_hidden) view.hidden = &inst;
    const auto [g0, g1] = strategy.run(view, adv);
    const bool win = g0 == inst.x0 && g1 == inst.x1;
    if (strategy.exact) {
      gs.record(win, strategy.exact(view, inst));
    } else {
      gs.record(win);
    }
  }
  gs.finalize();
  return gs;
}

// ---------------------------------------------------------------------------
// Verifier soundness

SoundnessVerifier sv_honest() {
  return {"honest", [](const OtParams& op, uint64_t vk, const AuxInput&, uint64_t m, const OtSignature& reg,
                       OraclePtr h) {
            if (reg.parts.size() != op.ell || reg.shares.size() != op.ell) return 0.0;
            return ot_verify(op, vk, m, reg, std::move(h)).accept_prob;
          }};
}

SoundnessVerifier sv_always_accept() {
  return {"always-accept",
          [](const OtParams&, uint64_t, const AuxInput&, uint64_t, const OtSignature&, OraclePtr) { return 1.0; }};
}

SoundnessVerifier sv_by_name(const std::string& name) {
  for (auto make : {sv_honest, sv_always_accept}) {
    SoundnessVerifier v = make();
    if (v.name == name) return v;
  }
  throw std::invalid_argument("unknown verifier '" + name + "'");
}

namespace {

uint64_t fresh_message(size_t bits, Rng& rng) {
  uint64_t m;
  do {
    m = rng.bits(static_cast<unsigned>(bits));
  } while (m == kDummyMessage);
  return m;
}

}  // namespace

SoundnessAdversary sa_replay() {
  SoundnessAdversary a;
  a.name = "replay";
  a.run = [](const SoundnessAdvView& v, Rng& rng) {
    SoundnessClaim c;
    c.m = fresh_message(v.op.share_bits, rng);
    c.reg = *v.sig;
    c.reg.shares[0] ^= c.m ^ kDummyMessage;
    c.reg.reveal.reset();
    return c;
  };
  return a;
}

SoundnessAdversary sa_forger() {
  SoundnessAdversary a;
  a.name = "forger";
  a.needs_sk = true;
  a.run = [](const SoundnessAdvView& v, Rng& rng) {
    if (!v.sk) throw std::logic_error("forger needs the signing key");
    SoundnessClaim c;
    c.m = fresh_message(v.op.share_bits, rng);
    c.reg = ot_sign(v.op, *v.sk, c.m, v.h, rng).first;
    return c;
  };
  return a;
}

SoundnessAdversary sa_by_name(const std::string& name) {
  for (auto make : {sa_replay, sa_forger}) {
    SoundnessAdversary a = make();
    if (a.name == name) return a;
  }
  throw std::invalid_argument("unknown soundness adversary '" + name + "'");
}

GameStats run_soundness_game(const SoundnessVerifier& verifier, const SoundnessAdversary& adversary,
                             const std::string& scheme, const OtParams& op, uint64_t trials, uint64_t seed) {
  if (scheme != "ot") throw std::invalid_argument("run_soundness_game: unsupported scheme '" + scheme + "'");
  op.validate();
  constexpr int kMaxVoided = 64;
  GameStats gs;
  gs.game = "soundness";
  gs.seed = seed;
  gs.params = {{"scheme", scheme},     {"verifier", verifier.name}, {"adversary", adversary.name},
               {"lambda_x", op.lambda_x}, {"ell", op.ell},          {"aux_setup_input", "(1^lambda, vk)"}};
  uint64_t voided = 0;
  for (uint64_t t = 0; t < trials; ++t) {
    const Rng trial = Rng::for_trial(seed, t);
    Rng setup = trial.split(kSetup), ver = trial.split(kVer);
    const DsKeys keys = ds_keygen(setup);
    const OraclePtr h = ot_hash(op, setup.next_u64());
    const AuxInput aux{op.lambda_x, keys.vk};
    const OtSignature sig = ot_sign(op, keys, kDummyMessage, h, setup).first;
    SoundnessAdvView view{op, keys.vk, aux, &sig, h, adversary.needs_sk ? &keys : nullptr};
    SoundnessClaim claim;
    for (int attempt = 0;; ++attempt) {
      if (attempt == kMaxVoided) throw std::runtime_error("run_soundness_game: adversary keeps claiming m_dummy");
      Rng adv = trial.split(kAdv + 100 * static_cast<uint64_t>(attempt));
      claim = adversary.run(view, adv);
      if (claim.m != kDummyMessage) break;
      ++voided;
    }
    const double p = verifier.accept_prob(op, keys.vk, aux, claim.m, claim.reg, h);
    gs.record(ver.uniform01() < p, p);
  }
  gs.params["voided"] = voided;
  gs.finalize();
  return gs;
}

// ---------------------------------------------------------------------------
// Certified deniability

nlohmann::json DeniabilityPair::to_json() const {
  return {{"real", real.to_json()}, {"sim", sim.to_json()}, {"M", M}, {"M_S", M_S}};
}

namespace {

constexpr uint64_t kOracleSalt = 0x48524F4D;

struct DeniabilitySetup {
  FsParams fp;
  OraclePtr h;
  uint64_t x = 0;
  uint64_t w = 0;
  uint64_t m_star = 0;
};

DeniabilitySetup deniability_setup(size_t lambda, uint64_t seed, bool sig) {
  DeniabilitySetup s;
  s.fp.lambda = lambda;
  s.fp.validate();
  const Rng master(seed);
  s.h = oracle_new(mix64(seed ^ kOracleSalt), kDefaultOracleInBits, kDefaultOracleOutBits);
  Rng stmt = master.split(kStatement);
  if (sig) {
    const FsSigKeys k = fs_sig_gen(s.fp, stmt);
    s.x = k.vk;
    s.w = k.sk;
    Rng msg = master.split(kMessage);
    s.m_star = msg.bits(kFsSigMessageBits);
  } else {
    const SchnorrKeys k = keygen(s.fp.group, stmt);
    s.x = k.x;
    s.w = k.w;
  }
  return s;
}

ExperimentRecord make_record(const DeniabilitySetup& s, uint64_t seed, const AdversaryOutput& out,
                             const DelVerResult& dv) {
  ExperimentRecord rec;
  rec.accepted = dv.accepted;
  rec.accept_prob = dv.accept_prob;
  if (dv.accepted && out.memo.has_value()) {
    rec.residual = out.memo;
    rec.residual_bits = out.memo_bits;
  }
  rec.lambda = s.fp.lambda;
  rec.seed = seed;
  rec.oracle_spec = s.h->spec();
  return rec;
}

// H′ for the signature simulator: the NIZK reprogramming of H(m*‖·), lifted
// to inputs of the full oracle.
OraclePtr sig_sim_oracle(const DeniabilitySetup& s, const SimKeys& keys) {
  const OraclePtr hm = fs_sig_oracle(s.h, s.m_star);
  const size_t rest = s.h->in_bits() - kFsSigMessageBits;
  std::map<uint64_t, uint64_t> points;
  for (const auto& av : keys.A.enumerate()) {
    if (av.is_zero()) continue;
    const uint64_t a = av.to_uint();
    const Transcript t = simulated_transcript(s.fp, *hm, s.x, keys, a);
    const uint64_t key = fs_challenge_input(s.fp, *hm, a, s.x, t.s1);
    points[(s.m_star << rest) | key] = query_padded(*hm, concat_bits(keys.k_ch, a, s.fp.lambda), 2 * s.fp.lambda);
  }
  return reprogram_points(s.h, std::move(points));
}

}  // namespace

DeniabilityPair run_deniability_pair(const std::string& scheme, const FsAdversary& adversary, size_t lambda,
                                     uint64_t seed) {
  DeniabilityPair out;
  if (scheme == "fs-nizk") {
    const DeniabilitySetup s = deniability_setup(lambda, seed, false);
    out.real = nizk_real_experiment(s.fp, s.x, s.w, s.h, adversary, seed);
    out.sim = simulate_experiment(s.fp, s.x, s.h, adversary, seed);
    return out;
  }
  if (scheme != "fs-sig") throw std::invalid_argument("run_deniability_pair: unknown scheme '" + scheme + "'");
  const DeniabilitySetup s = deniability_setup(lambda, seed, true);
  const Rng master(seed);
  {
    Rng setup = master.split(kSetup), adv = master.split(kAdv), ver = master.split(kVer);
    const FsSigKeys keys{s.x, s.w};
    auto [sig, dk] = fs_sig_sign(s.fp, keys, s.m_star, s.h, setup);
    const AdversaryOutput a = adversary.run(s.fp, sig, fs_sig_oracle(s.h, s.m_star), adv);
    const DelVerResult dv = fs_sig_delver(s.fp, dk, ProofState{a.cert, s.x}, s.x, s.m_star, s.h, &ver);
    out.real = make_record(s, seed, a, dv);
  }
  {
    // The simulator never calls the signing oracle, so M_S stays empty.
    Rng setup = master.split(kSetup), adv = master.split(kAdv), ver = master.split(kVer);
    const SimKeys keys = sample_sim_keys(s.fp, setup);
    const OraclePtr hm = fs_sig_oracle(s.h, s.m_star);
    const OraclePtr h_prime = sig_sim_oracle(s, keys);
    const ProofState pf = sim_proof(s.fp, hm, keys, s.x);
    const AdversaryOutput a = adversary.run(s.fp, pf, fs_sig_oracle(h_prime, s.m_star), adv);
    const DelVerResult dv = delver_with(
        s.fp, a.cert, keys.A, keys.s, [&](uint64_t av) { return simulated_transcript(s.fp, *hm, s.x, keys, av); },
        &ver);
    out.sim = make_record(s, seed, a, dv);
  }
  return out;
}

nlohmann::json MemoComparison::to_json() const {
  return {{"runs", runs},
          {"real_accepts", real_accepts},
          {"sim_accepts", sim_accepts},
          {"tv_accepted", tv_accepted},
          {"tv_with_reject", tv_with_reject}};
}

MemoComparison compare_residuals(const std::string& scheme, const FsAdversary& adversary, size_t lambda,
                                 uint64_t runs, uint64_t seed) {
  MemoComparison mc;
  mc.runs = runs;
  std::map<std::string, double> real_hist, sim_hist;
  auto key = [](const ExperimentRecord& r) {
    if (!r.accepted) return std::string("reject");
    return r.residual ? F2Vec::from_uint(*r.residual, r.residual_bits).to_hex() : std::string("empty");
  };
  for (uint64_t i = 0; i < runs; ++i) {
    const DeniabilityPair p = run_deniability_pair(scheme, adversary, lambda, Rng::for_trial(seed, i).seed());
    real_hist[key(p.real)] += 1;
    sim_hist[key(p.sim)] += 1;
    mc.real_accepts += p.real.accepted;
    mc.sim_accepts += p.sim.accepted;
  }
  std::map<std::string, std::pair<double, double>> joint;
  for (const auto& [k, v] : real_hist) joint[k].first = v;
  for (const auto& [k, v] : sim_hist) joint[k].second = v;
  double tv_all = 0, tv_acc = 0;
  for (const auto& [k, v] : joint) {
    tv_all += std::abs(v.first - v.second) / static_cast<double>(runs);
    if (k != "reject" && mc.real_accepts && mc.sim_accepts) {
      tv_acc += std::abs(v.first / static_cast<double>(mc.real_accepts) -
                         v.second / static_cast<double>(mc.sim_accepts));
    }
  }
  mc.tv_with_reject = tv_all / 2;
  mc.tv_accepted = (mc.real_accepts && mc.sim_accepts) ? tv_acc / 2 : (mc.real_accepts == mc.sim_accepts ? 0 : 1);
  return mc;
}

// ---------------------------------------------------------------------------
// Evidence collection

bool fs_evidence_check(const FsParams& fp, const Oracle& h, uint64_t x, uint64_t memo) {
  const RegisterLayout lay = fp.layout();
  const Label l = static_cast<Label>(memo);
  const uint64_t a = lay.get(l, kRegA);
  const Transcript t{lay.get(l, kRegS1), lay.get(l, kRegS2), lay.get(l, kRegS3)};
  return t.s2 == fs_challenge(fp, h, a, x, t.s1) && verify(fp.group, x, t);
}

nlohmann::json EvidenceReport::to_json() const {
  nlohmann::json j;
  j["strawman"] = strawman.to_json();
  j["strawman_sim_rate"] = strawman_sim_rate;
  j["strawman_advantage"] = strawman_advantage;
  j["fs_honest"] = fs_honest.to_json();
  j["fs_honest_advantage"] = fs_honest_advantage;
  j["fs_measure"] = fs_measure.to_json();
  j["fs_measure_accept_rate"] = fs_measure_accept_rate;
  j["fs_measure_evidence_rate"] = fs_measure_evidence_rate;
  j["fs_measure_sim_evidence_rate"] = fs_measure_sim_evidence_rate;
  j["inv_A"] = inv_A;
  return j;
}

EvidenceReport evidence_collection_demo(uint64_t trials, uint64_t seed, size_t lambda) {
  EvidenceReport rep;
  FsParams fp;
  fp.lambda = lambda;
  fp.validate();
  rep.inv_A = std::ldexp(1.0, -static_cast<int>(lambda / 2));

  // Strawman: verify, archive σ, delete the token honestly.
  rep.strawman.game = "evidence-strawman";
  rep.strawman.seed = seed;
  uint64_t sim_hits = 0;
  for (uint64_t t = 0; t < trials; ++t) {
    const Rng trial = Rng::for_trial(seed, t);
    Rng setup = trial.split(kSetup), adv = trial.split(kAdv), simr = trial.split(kStatement);
    const DsKeys keys = ds_keygen(setup);
    const uint64_t m = setup.bits(kStrawMsgBits);
    auto [sig, dk] = straw_sign(keys, m, setup);
    const bool verified = straw_verify(keys.vk, m, sig);
    const uint64_t id = sig.id, sigma = sig.sigma;
    const bool accepted = straw_delver(dk, straw_del(sig, adv));
    const bool evidence = verified && straw_evidence_check(keys.vk, id, m, sigma);
    rep.strawman.record(accepted && evidence);
    // Without a signature the best a simulator can archive is a guess.
    sim_hits += straw_evidence_check(keys.vk, simr.bits(kStrawIdBits), m, simr.bits(kDsSigBits));
  }
  rep.strawman.finalize();
  rep.strawman_sim_rate = trials ? static_cast<double>(sim_hits) / static_cast<double>(trials) : 0;
  rep.strawman_advantage = rep.strawman.estimate - rep.strawman_sim_rate;

  // FS-CDen: honest deleter keeps no transcript, so there is nothing to check.
  rep.fs_honest.game = "evidence-fs-honest";
  rep.fs_honest.seed = seed;
  const FsAdversary honest = honest_deleter();
  uint64_t honest_accepts = 0;
  for (uint64_t t = 0; t < trials; ++t) {
    const DeniabilitySetup s = deniability_setup(lambda, Rng::for_trial(seed, t).seed(), false);
    const ExperimentRecord r = nizk_real_experiment(s.fp, s.x, s.w, s.h, honest, Rng::for_trial(seed, t).seed());
    honest_accepts += r.accepted;
    rep.fs_honest.record(false, 0.0);
  }
  rep.fs_honest.params["deletion_accepts"] = honest_accepts;
  rep.fs_honest.finalize();
  rep.fs_honest_advantage = rep.fs_honest.estimate;

  // FS-CDen: measure everything once, archive the transcript, return the rest.
  rep.fs_measure.game = "evidence-fs-measure";
  rep.fs_measure.seed = seed;
  const FsAdversary meas = measure_A();
  uint64_t accepts = 0, evid = 0, sim_evid = 0;
  for (uint64_t t = 0; t < trials; ++t) {
    const uint64_t ts = Rng::for_trial(seed, t).seed();
    const DeniabilitySetup s = deniability_setup(lambda, ts, false);
    const Rng master(ts);
    {
      Rng setup = master.split(kSetup), adv = master.split(kAdv), ver = master.split(kVer);
      auto [pf, dk] = prove(s.fp, s.x, s.w, s.h, setup);
      const AdversaryOutput a = meas.run(s.fp, pf, s.h, adv);
      const DelVerResult dv = delver(s.fp, dk, ProofState{a.cert, s.x}, s.x, s.h, &ver);
      const bool ev = fs_evidence_check(s.fp, *s.h, s.x, *a.memo);
      accepts += dv.accepted;
      evid += ev;
      rep.fs_measure.record(dv.accepted && ev, ev ? dv.accept_prob : 0.0);
    }
    {
      Rng setup = master.split(kSetup), adv = master.split(kAdv);
      const SimKeys keys = sample_sim_keys(s.fp, setup);
      const ProofState pf = sim_proof(s.fp, s.h, keys, s.x);
      const AdversaryOutput a = meas.run(s.fp, pf, sim_oracle(s.fp, s.h, keys, s.x), adv);
      sim_evid += fs_evidence_check(s.fp, *s.h, s.x, *a.memo);
    }
  }
  rep.fs_measure.finalize();
  const double n = trials ? static_cast<double>(trials) : 1.0;
  rep.fs_measure_accept_rate = static_cast<double>(accepts) / n;
  rep.fs_measure_evidence_rate = static_cast<double>(evid) / n;
  rep.fs_measure_sim_evidence_rate = static_cast<double>(sim_evid) / n;
  return rep;
}

// ---------------------------------------------------------------------------
// Direct product hardness

namespace {

const std::string kDphReg = "A";

double fraction_nonzero(size_t lambda, const std::function<bool(const F2Vec&)>& member) {
  uint64_t good = 0;
  for (uint64_t v = 1; v <= low_mask(lambda); ++v) good += member(F2Vec::from_uint(v, lambda));
  return static_cast<double>(good) / std::ldexp(1.0, static_cast<int>(lambda));
}

double born_nonzero_member(const SparseState& st, size_t lambda, const std::function<bool(const F2Vec&)>& member) {
  double p = 0;
  for (const auto& [v, w] : outcome_distribution(st, kDphReg)) {
    if (v != 0 && member(F2Vec::from_uint(v, lambda))) p += w;
  }
  return p;
}

}  // namespace

DphStrategy dph_computational() {
  DphStrategy s;
  s.name = "computational";
  s.run = [](const DphView& v, Rng& rng) {
    F2Vec v1 = measure(v.state, kDphReg, rng).outcome;
    return std::make_pair(std::move(v1), F2Vec::random(v.lambda, rng));
  };
  s.exact = [](const DphView& v, const F2Subspace&) {
    return born_nonzero_member(v.state, v.lambda, v.in_A) * fraction_nonzero(v.lambda, v.in_A_perp);
  };
  return s;
}

DphStrategy dph_hadamard() {
  DphStrategy s;
  s.name = "hadamard";
  s.run = [](const DphView& v, Rng& rng) {
    F2Vec v2 = measure(hadamard(v.state, kDphReg), kDphReg, rng).outcome;
    return std::make_pair(F2Vec::random(v.lambda, rng), std::move(v2));
  };
  s.exact = [](const DphView& v, const F2Subspace&) {
    return fraction_nonzero(v.lambda, v.in_A) *
           born_nonzero_member(hadamard(v.state, kDphReg), v.lambda, v.in_A_perp);
  };
  return s;
}

DphStrategy dph_oracle_cheat() {
  DphStrategy s;
  s.name = "oracle-cheat";
  s.needs_hidden = true;
  s.run = [](const DphView& v, Rng&) {
    if (!v.hidden) throw std::logic_error("oracle-cheat needs the hidden subspace");
    return std::make_pair(v.hidden->basis().front(), v.hidden->dual().basis().front());
  };
  s.exact = [](const DphView&, const F2Subspace&) { return 1.0; };
  return s;
}

DphStrategy dph_strategy_by_name(const std::string& name) {
  for (auto make : {dph_computational, dph_hadamard, dph_oracle_cheat}) {
    DphStrategy s = make();
    if (s.name == name) return s;
  }
  throw std::invalid_argument("unknown dph strategy '" + name + "'");
}

GameStats dph_game(const DphStrategy& strategy, size_t lambda, uint64_t trials, uint64_t seed) {
  if (lambda < 2 || lambda > kMaxLambda || lambda % 2) {
    throw std::invalid_argument("dph_game: lambda must be even and lie in [2, 12]");
  }
  GameStats gs;
  gs.game = "dph";
  gs.seed = seed;
  gs.params = {{"strategy", strategy.name}, {"lambda", lambda}};
  for (uint64_t t = 0; t < trials; ++t) {
    const Rng trial = Rng::for_trial(seed, t);
    Rng setup = trial.split(kSetup), adv = trial.split(kAdv);
    const F2Subspace A = sample_subspace(lambda, lambda / 2, setup);
    const F2Subspace Aperp = A.dual();
    DphView view;
    view.lambda = lambda;
    view.state = coset_state(A, F2Vec(lambda), false, kDphReg);
    view.in_A = [&A](const F2Vec& v) { return v.size() == A.ambient_dim() && A.contains(v); };
    view.in_A_perp = [&Aperp](const F2Vec& v) { return v.size() == Aperp.ambient_dim() && Aperp.contains(v); };
    if (strategy.needs_hidden) view.hidden = &A;
    const auto [v1, v2] = strategy.run(view, adv);
    const bool win = !v1.is_zero() && !v2.is_zero() && view.in_A(v1) && view.in_A_perp(v2);
    if (strategy.exact) {
      gs.record(win, strategy.exact(view, A));
    } else {
      gs.record(win);
    }
  }
  gs.finalize();
  return gs;
}

// ---------------------------------------------------------------------------
// Many-time deletion scenarios

GameStats run_sigcd_scenario(size_t k1, size_t k2, const OtParams& op, uint64_t trials, uint64_t seed) {
  op.validate();
  const size_t n = k1 + k2;
  if (n == 0 || n > 4) throw std::invalid_argument("run_sigcd_scenario: need 1 <= k1 + k2 <= 4");
  GameStats gs;
  gs.game = "sigcd";
  gs.seed = seed;
  gs.params = {{"k1", k1}, {"k2", k2}, {"lambda_x", op.lambda_x}, {"ell", op.ell}, {"verifier", "honest"}};
  for (uint64_t t = 0; t < trials; ++t) {
    const Rng trial = Rng::for_trial(seed, t);
    Rng setup = trial.split(kSetup), adv = trial.split(kAdv), ver = trial.split(kVer);
    const MultKeys keys = mult_gen(setup);
    const OraclePtr h = ot_hash(op, setup.next_u64());
    std::vector<uint64_t> msgs;
    while (msgs.size() < n) {
      const uint64_t m = fresh_message(op.share_bits, adv);
      if (std::find(msgs.begin(), msgs.end(), m) == msgs.end()) msgs.push_back(m);
    }
    std::vector<MultSignature> sigs;
    for (uint64_t m : msgs) sigs.push_back(mult_sign(op, keys, m, h, setup));
    std::vector<uint64_t> M = msgs;

    bool ok = true;
    for (size_t i = 0; i < k1 && ok; ++i) {
      if (mult_delver(op, keys, mult_del(op, sigs[i], adv))) {
        M.erase(std::find(M.begin(), M.end(), msgs[i]));
      } else {
        ok = false;
      }
    }
    uint64_t target = k1 ? msgs[0] : 0;
    while (!k1 && (target == kDummyMessage || std::find(msgs.begin(), msgs.end(), target) != msgs.end())) {
      target = adv.bits(static_cast<unsigned>(op.share_bits));
    }
    double exact = ok ? 1.0 : 0.0;
    bool all_in_M = true;
    for (size_t j = k1; j < n && ok; ++j) {
      MultSignature forged = sigs[j];
      forged.ot.shares[0] ^= msgs[j] ^ target;
      const double p = mult_verify(op, keys.global.vk, target, forged, h);
      exact *= p;
      if (!(ver.uniform01() < p)) ok = false;
      all_in_M = all_in_M && std::find(M.begin(), M.end(), target) != M.end();
    }
    if (all_in_M) exact = 0;
    gs.record(ok && !all_in_M, exact);
  }
  gs.finalize();
  return gs;
}

}  // namespace cdenlab
