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

// Exact linear algebra over GF(2).
//
// Textual encodings put coordinate 0 in the leftmost character. Integer
// packings (to_uint / from_uint) put coordinate 0 in the most significant of
// the n bits, so integer order on packed values equals lexicographic order on
// the strings.

#ifndef CDENLAB_F2LIN_H_
#define CDENLAB_F2LIN_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace cdenlab {

class Rng;

class F2Vec {
 public:
  F2Vec() = default;
  /// Zero vector of length n.
  explicit F2Vec(size_t n);

  /// Parses a 0/1 string; throws std::invalid_argument on other characters.
  static F2Vec from_string(std::string_view bits);
  /// Low n bits of v, coordinate 0 = bit n-1. Requires n <= 64.
  static F2Vec from_uint(uint64_t v, size_t n);
  static F2Vec random(size_t n, Rng& rng);

  size_t size() const { return n_; }
  bool get(size_t i) const;
  void set(size_t i, bool b);
  void flip(size_t i);
  bool is_zero() const;
  size_t weight() const;

  /// Inner product mod 2. Lengths must match.
  bool dot(const F2Vec& other) const;
  F2Vec& operator^=(const F2Vec& other);
  friend F2Vec operator^(F2Vec a, const F2Vec& b) { return a ^= b; }

  /// this ‖ tail.
  F2Vec concat(const F2Vec& tail) const;
  F2Vec slice(size_t pos, size_t len) const;

  /// Requires size() <= 64.
  uint64_t to_uint() const;
  std::string to_string() const;
  /// Lowercase hex of the packed value, left-padded to ceil(n/4) digits.
  std::string to_hex() const;

  friend bool operator==(const F2Vec& a, const F2Vec& b) = default;
  /// Lexicographic on the textual encoding; shorter vectors sort first.
  friend std::strong_ordering operator<=>(const F2Vec& a, const F2Vec& b);

 private:
  void check_same_size(const F2Vec& other) const;

  size_t n_ = 0;
  std::vector<uint64_t> words_;  // coordinate i at words_[i / 64] bit (i % 64)
};

/// A subspace of GF(2)^n held as a canonical reduced row-echelon basis.
class F2Subspace {
 public:
  /// The zero subspace of GF(2)^n.
  explicit F2Subspace(size_t ambient_dim = 0);

  /// Span of `rows`; every row must have length n.
  static F2Subspace span(std::span<const F2Vec> rows, size_t n);
  static F2Subspace full(size_t n);

  size_t ambient_dim() const { return n_; }
  size_t dim() const { return basis_.size(); }
  size_t cardinality_log2() const { return basis_.size(); }
  const std::vector<F2Vec>& basis() const { return basis_; }
  const std::vector<size_t>& pivots() const { return pivots_; }

  bool contains(const F2Vec& v) const;
  /// Membership for a packed vector (see file comment); n <= 64.
  bool contains_uint(uint64_t v) const;
  F2Subspace dual() const;
  /// All 2^dim elements in lexicographic-coefficient order; first is 0.
  std::vector<F2Vec> enumerate() const;

  nlohmann::json to_json() const;
  static F2Subspace from_json(const nlohmann::json& j, size_t n);

  friend bool operator==(const F2Subspace&, const F2Subspace&) = default;

 private:
  friend F2Subspace rref(std::span<const F2Vec> rows);

  size_t n_;
  std::vector<F2Vec> basis_;
  std::vector<size_t> pivots_;
};

/// Canonical RREF of the span of `rows`. Rows must be non-empty and share a
/// length; use F2Subspace::span for the empty case.
F2Subspace rref(std::span<const F2Vec> rows);

/// Uniform random d-dimensional subspace of GF(2)^n (rejection on full rank).
F2Subspace sample_subspace(size_t n, size_t d, Rng& rng);

/// Largest dimension enumerate() accepts.
inline constexpr size_t kMaxEnumerateDim = 20;

}  // namespace cdenlab

#endif  // CDENLAB_F2LIN_H_
