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

#include "cdenlab/sig_cden.h"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "cdenlab/rng.h"

namespace cdenlab {

namespace {

constexpr uint64_t kDsHashSeed = 0x4453484153480001ULL;
constexpr uint64_t kScalarMask = (uint64_t{1} << kDsScalarBits) - 1;

const GroupParams& ds_group() {
  static const GroupParams gp = GroupParams::signature();
  return gp;
}

uint64_t ds_challenge(uint64_t s1, uint64_t msg) {
  return ds_hash()->query(concat_bits(s1, msg, kDsMessageBits)) % ds_group().q;
}

}  // namespace

OraclePtr ds_hash() {
  static const OraclePtr h = oracle_new(kDsHashSeed, 64, 64);
  return h;
}

DsKeys ds_keygen(Rng& rng) {
  const SchnorrKeys k = keygen(ds_group(), rng);
  return {k.x, k.w, rng.next_u64()};
}

uint64_t ds_sign(const DsKeys& keys, uint64_t msg) {
  if (msg >> kDsMessageBits) throw std::invalid_argument("ds_sign: message wider than 32 bits");
  const GroupParams& gp = ds_group();
  // Deterministic nonce from a secret-keyed oracle.
  const uint64_t r = OracleTable(keys.nonce_seed, 64, 64).query(msg) % gp.q;
  const uint64_t s1 = p1(gp, keys.vk, keys.sk, r);
  const uint64_t e = ds_challenge(s1, msg);
  const uint64_t z = p3(gp, keys.vk, keys.sk, r, e);
  return (e << kDsScalarBits) | z;
}

bool ds_verify(uint64_t vk, uint64_t msg, uint64_t sig) {
  const GroupParams& gp = ds_group();
  if ((msg >> kDsMessageBits) || (sig >> kDsSigBits) || vk == 0 || vk >= gp.p) return false;
  const uint64_t e = sig >> kDsScalarBits, z = sig & kScalarMask;
  if (e >= gp.q || z >= gp.q) return false;
  const Transcript t = simulate(gp, vk, e, z);  // s1 = g^z·vk^{−e}
  return ds_challenge(t.s1, msg) == e;
}

// ---------------------------------------------------------------------------
// Fiat-Shamir signatures

FsSigKeys fs_sig_gen(const FsParams& fp, Rng& rng) {
  const SchnorrKeys k = keygen(fp.group, rng);
  return {k.x, k.w};
}

OraclePtr fs_sig_oracle(OraclePtr h, uint64_t m) { return restrict_prefix(std::move(h), m, kFsSigMessageBits); }

std::pair<ProofState, FsDeletionKey> fs_sig_sign(const FsParams& fp, const FsSigKeys& keys, uint64_t m, OraclePtr h,
                                                 Rng& rng) {
  return prove(fp, keys.vk, keys.sk, fs_sig_oracle(std::move(h), m), rng);
}

VerifyResult fs_sig_verify(const FsParams& fp, uint64_t vk, uint64_t m, const ProofState& sig, OraclePtr h, Rng* rng) {
  return verify(fp, vk, sig, fs_sig_oracle(std::move(h), m), rng);
}

ProofState fs_sig_del(const ProofState& sig) { return del(sig); }

DelVerResult fs_sig_delver(const FsParams& fp, const FsDeletionKey& dk, const ProofState& cert, uint64_t vk,
                           uint64_t m, OraclePtr h, Rng* rng) {
  return delver(fp, dk, cert, vk, fs_sig_oracle(std::move(h), m), rng);
}

// ---------------------------------------------------------------------------
// One-time scheme

void OtParams::validate() const {
  if (lambda_x < 1 || lambda_x > 16) throw std::invalid_argument("lambda_x must lie in [1, 16]");
  if (share_bits < 1 || share_bits > 16) throw std::invalid_argument("share_bits must lie in [1, 16]");
  if (ell < 1 || ell > 64) throw std::invalid_argument("ell must lie in [1, 64]");
}

size_t OtParams::index_bits() const {
  return ell <= 1 ? 1 : static_cast<size_t>(64 - std::countl_zero(static_cast<uint64_t>(ell - 1)));
}

size_t OtParams::hash_in_bits() const { return lambda_x + share_bits + index_bits(); }

OraclePtr ot_hash(const OtParams& op, uint64_t seed) { return oracle_new(seed, op.hash_in_bits(), OtParams::kHashOutBits); }

nlohmann::json OtDeletionKey::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (size_t i = 0; i < a1.size(); i++) {
    j.push_back({{"a1", a1[i].to_hex()}, {"a2", a2[i].to_hex()}, {"c", c[i] ? 1 : 0}});
  }
  return j;
}

nlohmann::json OtCertificate::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (size_t i = 0; i < d1.size(); i++) j.push_back({{"d1", d1[i].to_hex()}, {"d2", d2[i].to_hex()}});
  return j;
}

uint64_t ot_branch_message(const OtParams& op, const Oracle& h, uint64_t x, uint64_t share, size_t i) {
  const uint64_t in = concat_bits(concat_bits(x, share, op.share_bits), i, op.index_bits());
  return query_padded(h, in, op.hash_in_bits());
}

std::pair<OtSignature, OtDeletionKey> ot_sign(const OtParams& op, const DsKeys& keys, uint64_t m, OraclePtr h,
                                              Rng& rng) {
  op.validate();
  if (m >> op.share_bits) throw std::invalid_argument("ot_sign: message wider than share_bits");
  OtSignature sig;
  OtDeletionKey dk;
  uint64_t last = m;
  for (size_t i = 0; i + 1 < op.ell; i++) {
    sig.shares.push_back(rng.bits(static_cast<unsigned>(op.share_bits)));
    last ^= sig.shares.back();
  }
  sig.shares.push_back(last);
  OtReveal reveal;
  const RegisterLayout lay({{kRegX, op.lambda_x}, {kRegS, kDsSigBits}});
  for (size_t i = 0; i < op.ell; i++) {
    const uint64_t x0 = rng.bits(static_cast<unsigned>(op.lambda_x));
    uint64_t x1;
    do {
      x1 = rng.bits(static_cast<unsigned>(op.lambda_x));
    } while (x1 == x0);
    const bool c = rng.coin();
    const uint64_t s0 = ds_sign(keys, ot_branch_message(op, *h, x0, sig.shares[i], i));
    const uint64_t s1 = ds_sign(keys, ot_branch_message(op, *h, x1, sig.shares[i], i));
    SparseState part(lay);
    const double amp = 1.0 / std::sqrt(2.0);
    part.set(lay.set(lay.set(0, kRegX, x0), kRegS, s0), amp);
    part.set(lay.set(lay.set(0, kRegX, x1), kRegS, s1), c ? -amp : amp);
    sig.parts.push_back(std::move(part));
    dk.a1.push_back(F2Vec::from_uint(x0 ^ x1, op.lambda_x));
    dk.a2.push_back(F2Vec::from_uint(s0 ^ s1, kDsSigBits));
    dk.c.push_back(c);
    reveal.x0.push_back(x0);
    reveal.x1.push_back(x1);
  }
  if (m == kDummyMessage) {
    reveal.dk = dk;
    sig.reveal = std::move(reveal);
  }
  return {std::move(sig), std::move(dk)};
}

OtVerifyResult ot_verify(const OtParams& op, uint64_t vk, uint64_t m, const OtSignature& sig, OraclePtr h) {
  if (sig.shares.size() != op.ell || sig.parts.size() != op.ell) {
    throw std::invalid_argument("ot_verify: share count does not match ell");
  }
  OtVerifyResult res;
  res.post = sig;
  uint64_t acc = 0;
  for (uint64_t s : sig.shares) acc ^= s;
  if (acc != m) return res;
  res.accept_prob = 1.0;
  for (size_t i = 0; i < op.ell; i++) {
    const SparseState& part = sig.parts[i];
    const auto& lay = part.layout();
    // The predicate is computed into a fresh bit and uncomputed again, which
    // on acceptance leaves exactly the accepting terms.
    SparseState kept(lay);
    for (const auto& [l, a] : part.amplitudes()) {
      if (ds_verify(vk, ot_branch_message(op, *h, lay.get(l, kRegX), sig.shares[i], i), lay.get(l, kRegS))) {
        kept.set(l, a);
      }
    }
    const double total = part.norm_squared();
    const double p = total > 0 ? kept.norm_squared() / total : 0.0;
    res.accept_prob *= p;
    if (p > 0) {
      kept.normalize();
      res.post.parts[i] = std::move(kept);
    }
  }
  return res;
}

OtCertificate ot_del(const OtParams& op, const OtSignature& sig, Rng& rng) {
  OtCertificate cert;
  for (const auto& part : sig.parts) {
    const F2Vec d = sample_hadamard_all(part, rng);
    cert.d1.push_back(d.slice(0, op.lambda_x));
    cert.d2.push_back(d.slice(op.lambda_x, d.size() - op.lambda_x));
  }
  return cert;
}

bool ot_delver(const OtDeletionKey& dk, const OtCertificate& cert) {
  if (cert.d1.size() != dk.a1.size() || cert.d2.size() != dk.a2.size()) {
    throw std::invalid_argument("ot_delver: index count mismatch");
  }
  for (size_t i = 0; i < dk.a1.size(); i++) {
    if ((cert.d1[i].dot(dk.a1[i]) ^ cert.d2[i].dot(dk.a2[i])) != dk.c[i]) return false;
  }
  return true;
}

OtSignature collapse_computational(const OtSignature& sig, Rng& rng) {
  OtSignature out = sig;
  for (auto& part : out.parts) {
    part = measure(part, kRegX, rng).post;
    part = measure(part, kRegS, rng).post;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Many-time scheme

MultKeys mult_gen(Rng& rng) {
  MultKeys k;
  k.global = ds_keygen(rng);
  k.sk_enc = rng.next_u64();
  k.sk_mac = rng.next_u64();
  return k;
}

Ciphertext ske_enc(uint64_t key, const std::vector<uint64_t>& words, Rng& rng) {
  Ciphertext ct;
  ct.nonce = rng.next_u64();
  const OracleTable stream(key, 64, 64);
  for (size_t j = 0; j < words.size(); j++) ct.body.push_back(words[j] ^ stream.query(ct.nonce ^ mix64(j + 1)));
  return ct;
}

std::vector<uint64_t> ske_dec(uint64_t key, const Ciphertext& ct) {
  const OracleTable stream(key, 64, 64);
  std::vector<uint64_t> words;
  for (size_t j = 0; j < ct.body.size(); j++) words.push_back(ct.body[j] ^ stream.query(ct.nonce ^ mix64(j + 1)));
  return words;
}

uint64_t mac_sign(uint64_t key, const Ciphertext& ct) {
  const OracleTable f(key ^ 0x4D41434B4559ULL, 64, 64);
  uint64_t h = f.query(ct.nonce);
  for (uint64_t w : ct.body) h = f.query(h ^ w);
  return f.query(h ^ ct.body.size());
}

bool mac_verify(uint64_t key, const Ciphertext& ct, uint64_t tag) { return mac_sign(key, ct) == tag; }

std::vector<uint64_t> serialize_dk(const OtDeletionKey& dk) {
  std::vector<uint64_t> w{dk.a1.size()};
  for (size_t i = 0; i < dk.a1.size(); i++) {
    w.push_back(dk.a1[i].to_uint());
    w.push_back(dk.a2[i].to_uint());
    w.push_back(dk.c[i] ? 1 : 0);
  }
  return w;
}

OtDeletionKey parse_dk(const OtParams& op, const std::vector<uint64_t>& words) {
  if (words.empty() || words[0] != op.ell || words.size() != 1 + 3 * op.ell) {
    throw std::invalid_argument("parse_dk: malformed deletion key");
  }
  OtDeletionKey dk;
  for (size_t i = 0; i < op.ell; i++) {
    const uint64_t a1 = words[1 + 3 * i], a2 = words[2 + 3 * i], c = words[3 + 3 * i];
    if ((a1 >> op.lambda_x) || (a2 >> kDsSigBits) || c > 1) throw std::invalid_argument("parse_dk: field out of range");
    dk.a1.push_back(F2Vec::from_uint(a1, op.lambda_x));
    dk.a2.push_back(F2Vec::from_uint(a2, kDsSigBits));
    dk.c.push_back(c == 1);
  }
  return dk;
}

MultSignature mult_sign(const OtParams& op, const MultKeys& keys, uint64_t m, OraclePtr h, Rng& rng) {
  const DsKeys ot_keys = ds_keygen(rng);
  auto [ot, dk] = ot_sign(op, ot_keys, m, std::move(h), rng);
  MultSignature sig;
  sig.ot = std::move(ot);
  sig.vk_ot = ot_keys.vk;
  sig.sig_vk = ds_sign(keys.global, ot_keys.vk);
  sig.ct = ske_enc(keys.sk_enc, serialize_dk(dk), rng);
  sig.tag = mac_sign(keys.sk_mac, sig.ct);
  return sig;
}

double mult_verify(const OtParams& op, uint64_t vk, uint64_t m, const MultSignature& sig, OraclePtr h) {
  if (!ds_verify(vk, sig.vk_ot, sig.sig_vk)) return 0.0;
  return ot_verify(op, sig.vk_ot, m, sig.ot, std::move(h)).accept_prob;
}

MultCertificate mult_del(const OtParams& op, const MultSignature& sig, Rng& rng) {
  return {ot_del(op, sig.ot, rng), sig.ct, sig.tag};
}

bool mult_delver(const OtParams& op, const MultKeys& keys, const MultCertificate& cert) {
  if (!mac_verify(keys.sk_mac, cert.ct, cert.tag)) return false;
  try {
    return ot_delver(parse_dk(op, ske_dec(keys.sk_enc, cert.ct)), cert.cert);
  } catch (const std::invalid_argument&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Strawman

std::pair<StrawSignature, StrawDeletionKey> straw_sign(const DsKeys& keys, uint64_t m, Rng& rng) {
  if (m >> kStrawMsgBits) throw std::invalid_argument("straw_sign: message too wide");
  StrawSignature sig;
  sig.id = rng.bits(kStrawIdBits);
  sig.m = m;
  sig.sigma = ds_sign(keys, concat_bits(sig.id, m, kStrawMsgBits));
  const uint64_t t0 = rng.bits(kStrawTokenBits);
  uint64_t t1;
  do {
    t1 = rng.bits(kStrawTokenBits);
  } while (t1 == t0);
  const bool c = rng.coin();
  SparseState token(RegisterLayout({{"T", kStrawTokenBits}}));
  const double amp = 1.0 / std::sqrt(2.0);
  token.set(t0, amp);
  token.set(t1, c ? -amp : amp);
  sig.token = std::move(token);
  return {sig, StrawDeletionKey{F2Vec::from_uint(t0 ^ t1, kStrawTokenBits), c}};
}

bool straw_evidence_check(uint64_t vk, uint64_t id, uint64_t m, uint64_t sigma) {
  return ds_verify(vk, concat_bits(id, m, kStrawMsgBits), sigma);
}

bool straw_verify(uint64_t vk, uint64_t m, const StrawSignature& sig) {
  if (!sig.token.has_value() || sig.token->support_size() == 0) return false;
  return sig.m == m && straw_evidence_check(vk, sig.id, m, sig.sigma);
}

F2Vec straw_del(const StrawSignature& sig, Rng& rng) {
  if (!sig.token.has_value()) throw std::invalid_argument("straw_del: no token");
  return sample_hadamard_all(*sig.token, rng);
}

bool straw_delver(const StrawDeletionKey& dk, const F2Vec& cert) { return cert.dot(dk.delta) == dk.c; }

}  // namespace cdenlab
