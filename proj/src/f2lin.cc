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

#include "cdenlab/f2lin.h"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "cdenlab/rng.h"

namespace cdenlab {

namespace {

size_t num_words(size_t n) { return (n + 63) / 64; }

}  // namespace

F2Vec::F2Vec(size_t n) : n_(n), words_(num_words(n), 0) {}

F2Vec F2Vec::from_string(std::string_view bits) {
  F2Vec v(bits.size());
  for (size_t i = 0; i < bits.size(); i++) {
    if (bits[i] == '1') {
      v.set(i, true);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("F2Vec::from_string: expected only '0' and '1'");
    }
  }
  return v;
}

F2Vec F2Vec::from_uint(uint64_t v, size_t n) {
  if (n > 64) throw std::invalid_argument("F2Vec::from_uint: n > 64");
  F2Vec r(n);
  for (size_t i = 0; i < n; i++) {
    r.set(i, (v >> (n - 1 - i)) & 1);
  }
  return r;
}

F2Vec F2Vec::random(size_t n, Rng& rng) {
  F2Vec r(n);
  for (size_t w = 0; w < r.words_.size(); w++) r.words_[w] = rng.next_u64();
  if (n % 64 != 0 && !r.words_.empty()) {
    r.words_.back() &= (uint64_t{1} << (n % 64)) - 1;
  }
  return r;
}

bool F2Vec::get(size_t i) const {
  if (i >= n_) throw std::out_of_range("F2Vec::get");
  return (words_[i / 64] >> (i % 64)) & 1;
}

void F2Vec::set(size_t i, bool b) {
  if (i >= n_) throw std::out_of_range("F2Vec::set");
  const uint64_t m = uint64_t{1} << (i % 64);
  if (b) {
    words_[i / 64] |= m;
  } else {
    words_[i / 64] &= ~m;
  }
}

void F2Vec::flip(size_t i) {
  if (i >= n_) throw std::out_of_range("F2Vec::flip");
  words_[i / 64] ^= uint64_t{1} << (i % 64);
}

bool F2Vec::is_zero() const {
  return std::all_of(words_.begin(), words_.end(), [](uint64_t w) { return w == 0; });
}

size_t F2Vec::weight() const {
  size_t c = 0;
  for (uint64_t w : words_) c += std::popcount(w);
  return c;
}

void F2Vec::check_same_size(const F2Vec& other) const {
  if (n_ != other.n_) throw std::invalid_argument("F2Vec: length mismatch");
}

bool F2Vec::dot(const F2Vec& other) const {
  check_same_size(other);
  uint64_t acc = 0;
  for (size_t w = 0; w < words_.size(); w++) acc ^= words_[w] & other.words_[w];
  return std::popcount(acc) & 1;
}

F2Vec& F2Vec::operator^=(const F2Vec& other) {
  check_same_size(other);
  for (size_t w = 0; w < words_.size(); w++) words_[w] ^= other.words_[w];
  return *this;
}

F2Vec F2Vec::concat(const F2Vec& tail) const {
  F2Vec r(n_ + tail.n_);
  for (size_t i = 0; i < n_; i++) r.set(i, get(i));
  for (size_t i = 0; i < tail.n_; i++) r.set(n_ + i, tail.get(i));
  return r;
}

F2Vec F2Vec::slice(size_t pos, size_t len) const {
  if (pos + len > n_) throw std::out_of_range("F2Vec::slice");
  F2Vec r(len);
  for (size_t i = 0; i < len; i++) r.set(i, get(pos + i));
  return r;
}

uint64_t F2Vec::to_uint() const {
  if (n_ > 64) throw std::invalid_argument("F2Vec::to_uint: more than 64 bits");
  uint64_t v = 0;
  for (size_t i = 0; i < n_; i++) v = (v << 1) | uint64_t{get(i)};
  return v;
}

std::string F2Vec::to_string() const {
  std::string s(n_, '0');
  for (size_t i = 0; i < n_; i++) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

std::string F2Vec::to_hex() const {
  static const char kDigits[] = "0123456789abcdef";
  // Pad on the left so the hex digits are exactly the packed integer.
  const size_t digits = (n_ + 3) / 4;
  const size_t pad = digits * 4 - n_;
  std::string s(digits, '0');
  for (size_t d = 0; d < digits; d++) {
    unsigned nib = 0;
    for (size_t k = 0; k < 4; k++) {
      const size_t pos = d * 4 + k;  // position in the padded string
      nib <<= 1;
      if (pos >= pad && get(pos - pad)) nib |= 1;
    }
    s[d] = kDigits[nib];
  }
  return s;
}

std::strong_ordering operator<=>(const F2Vec& a, const F2Vec& b) {
  if (a.n_ != b.n_) return a.n_ <=> b.n_;
  for (size_t w = 0; w < a.words_.size(); w++) {
    const uint64_t x = a.words_[w] ^ b.words_[w];
    if (x != 0) {
      // Lowest set bit = first differing coordinate; '1' sorts after '0'.
      const uint64_t bit = x & (~x + 1);
      return (a.words_[w] & bit) ? std::strong_ordering::greater : std::strong_ordering::less;
    }
  }
  return std::strong_ordering::equal;
}

F2Subspace::F2Subspace(size_t ambient_dim) : n_(ambient_dim) {}

F2Subspace F2Subspace::span(std::span<const F2Vec> rows, size_t n) {
  for (const auto& r : rows) {
    if (r.size() != n) throw std::invalid_argument("F2Subspace::span: row length mismatch");
  }
  if (rows.empty()) return F2Subspace(n);
  return rref(rows);
}

F2Subspace F2Subspace::full(size_t n) {
  std::vector<F2Vec> rows;
  for (size_t i = 0; i < n; i++) {
    F2Vec e(n);
    e.set(i, true);
    rows.push_back(e);
  }
  return span(rows, n);
}

F2Subspace rref(std::span<const F2Vec> rows) {
  if (rows.empty()) throw std::invalid_argument("rref: no rows");
  const size_t n = rows[0].size();
  std::vector<F2Vec> m;
  for (const auto& r : rows) {
    if (r.size() != n) throw std::invalid_argument("rref: row length mismatch");
    m.push_back(r);
  }
  F2Subspace out(n);
  size_t rank = 0;
  for (size_t col = 0; col < n && rank < m.size(); col++) {
    size_t piv = rank;
    while (piv < m.size() && !m[piv].get(col)) piv++;
    if (piv == m.size()) continue;
    std::swap(m[rank], m[piv]);
    for (size_t r = 0; r < m.size(); r++) {
      if (r != rank && m[r].get(col)) m[r] ^= m[rank];
    }
    out.pivots_.push_back(col);
    rank++;
  }
  m.resize(rank);
  out.basis_ = std::move(m);
  return out;
}

bool F2Subspace::contains(const F2Vec& v) const {
  if (v.size() != n_) throw std::invalid_argument("F2Subspace::contains: length mismatch");
  F2Vec r = v;
  for (size_t i = 0; i < basis_.size(); i++) {
    if (r.get(pivots_[i])) r ^= basis_[i];
  }
  return r.is_zero();
}

bool F2Subspace::contains_uint(uint64_t v) const { return contains(F2Vec::from_uint(v, n_)); }

F2Subspace F2Subspace::dual() const {
  // One dual vector per free column f: e_f plus, for each pivot row with a 1
  // in column f, the pivot coordinate.
  std::vector<F2Vec> rows;
  size_t next_pivot = 0;
  for (size_t f = 0; f < n_; f++) {
    if (next_pivot < pivots_.size() && pivots_[next_pivot] == f) {
      next_pivot++;
      continue;
    }
    F2Vec v(n_);
    v.set(f, true);
    for (size_t i = 0; i < basis_.size(); i++) {
      if (basis_[i].get(f)) v.set(pivots_[i], true);
    }
    rows.push_back(v);
  }
  return span(rows, n_);
}

std::vector<F2Vec> F2Subspace::enumerate() const {
  const size_t d = basis_.size();
  if (d > kMaxEnumerateDim) throw std::invalid_argument("F2Subspace::enumerate: dimension too large");
  std::vector<F2Vec> out;
  out.reserve(size_t{1} << d);
  for (uint64_t c = 0; c < (uint64_t{1} << d); c++) {
    F2Vec v(n_);
    // Coefficient of basis row i is bit (d-1-i) of c.
    for (size_t i = 0; i < d; i++) {
      if ((c >> (d - 1 - i)) & 1) v ^= basis_[i];
    }
    out.push_back(std::move(v));
  }
  return out;
}

nlohmann::json F2Subspace::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& b : basis_) j.push_back(b.to_string());
  return j;
}

F2Subspace F2Subspace::from_json(const nlohmann::json& j, size_t n) {
  std::vector<F2Vec> rows;
  for (const auto& s : j) rows.push_back(F2Vec::from_string(s.get<std::string>()));
  return span(rows, n);
}

F2Subspace sample_subspace(size_t n, size_t d, Rng& rng) {
  if (d > n) throw std::invalid_argument("sample_subspace: d > n");
  if (d == 0) return F2Subspace(n);
  while (true) {
    std::vector<F2Vec> rows;
    for (size_t i = 0; i < d; i++) rows.push_back(F2Vec::random(n, rng));
    F2Subspace s = rref(rows);
    if (s.dim() == d) return s;
  }
}

}  // namespace cdenlab
