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

#include "cdenlab/sigma.h"

#include <bit>
#include <stdexcept>

#include "cdenlab/rng.h"

namespace cdenlab {

namespace {

size_t ceil_log2(uint64_t v) { return v <= 1 ? 0 : 64 - std::countl_zero(v - 1); }

}  // namespace

GroupParams GroupParams::toy() { return {23, 11, 2}; }
GroupParams GroupParams::signature() { return {2147483783ULL, 1073741891ULL, 4}; }

void GroupParams::validate() const {
  if (p < 3 || q < 2 || (p - 1) % q != 0) throw std::invalid_argument("group: q must divide p-1");
  if (g <= 1 || g >= p || mod_pow(g, q, p) != 1) throw std::invalid_argument("group: g must have order q");
}

size_t GroupParams::element_bits() const { return ceil_log2(p); }
size_t GroupParams::scalar_bits() const { return ceil_log2(q); }

nlohmann::json GroupParams::to_json() const { return {{"p", p}, {"q", q}, {"g", g}}; }

GroupParams GroupParams::from_json(const nlohmann::json& j) {
  GroupParams gp{j.at("p").get<uint64_t>(), j.at("q").get<uint64_t>(), j.at("g").get<uint64_t>()};
  gp.validate();
  return gp;
}

uint64_t mod_mul(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t mod_pow(uint64_t base, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mod_mul(r, base, m);
    base = mod_mul(base, base, m);
    e >>= 1;
  }
  return r;
}

uint64_t mod_inv(uint64_t a, uint64_t m) {
  if (a % m == 0) throw std::invalid_argument("mod_inv: zero has no inverse");
  return mod_pow(a, m - 2, m);
}

nlohmann::json Transcript::to_json() const { return {{"s1", s1}, {"s2", s2}, {"s3", s3}}; }

SchnorrKeys keygen(const GroupParams& gp, Rng& rng) {
  return keys_from_witness(gp, 1 + rng.uniform_below(gp.q - 1));
}

SchnorrKeys keys_from_witness(const GroupParams& gp, uint64_t w) {
  if (w == 0 || w >= gp.q) throw std::invalid_argument("witness outside [1, q)");
  return {mod_pow(gp.g, w, gp.p), w};
}

uint64_t p1(const GroupParams& gp, uint64_t /*x*/, uint64_t /*w*/, uint64_t r) {
  if (r >= gp.q) throw std::invalid_argument("p1: r outside Z_q");
  return mod_pow(gp.g, r, gp.p);
}

uint64_t p3(const GroupParams& gp, uint64_t /*x*/, uint64_t w, uint64_t r, uint64_t s2) {
  if (r >= gp.q || s2 >= gp.q || w >= gp.q) throw std::invalid_argument("p3: argument outside Z_q");
  return (r + mod_mul(s2, w, gp.q)) % gp.q;
}

bool verify(const GroupParams& gp, uint64_t x, const Transcript& t) {
  if (t.s1 == 0 || t.s1 >= gp.p || t.s2 >= gp.q || t.s3 >= gp.q || x == 0 || x >= gp.p) return false;
  return mod_pow(gp.g, t.s3, gp.p) == mod_mul(t.s1, mod_pow(x, t.s2, gp.p), gp.p);
}

Transcript simulate(const GroupParams& gp, uint64_t x, uint64_t s2, uint64_t s3) {
  if (s2 >= gp.q || s3 >= gp.q) throw std::invalid_argument("simulate: argument outside Z_q");
  // x^{-s2} = x^{q - s2} since x lies in the order-q subgroup.
  const uint64_t s1 = mod_mul(mod_pow(gp.g, s3, gp.p), mod_pow(x, (gp.q - s2) % gp.q, gp.p), gp.p);
  return {s1, s2, s3};
}

uint64_t extract(const GroupParams& gp, uint64_t x, const Transcript& a, const Transcript& b) {
  if (a.s1 != b.s1) throw std::invalid_argument("extract: first messages differ");
  if (a.s2 == b.s2) throw std::invalid_argument("extract: equal challenges");
  if (!verify(gp, x, a) || !verify(gp, x, b)) throw std::invalid_argument("extract: transcript does not verify");
  const uint64_t num = (a.s3 + gp.q - b.s3) % gp.q;
  const uint64_t den = (a.s2 + gp.q - b.s2) % gp.q;
  return mod_mul(num, mod_inv(den, gp.q), gp.q);
}

}  // namespace cdenlab
