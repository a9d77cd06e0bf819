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

#ifndef CDENLAB_RNG_H_
#define CDENLAB_RNG_H_

#include <cstdint>
#include <random>

namespace cdenlab {

/// Default master seed for every experiment and lemma suite.
inline constexpr uint64_t kDefaultSeed = 0xC0DE;

/// SplitMix64 finalizer. Used for seed derivation and oracle mixing.
uint64_t mix64(uint64_t x);

/// Seeded random stream.
///
/// Everything above the raw 64-bit engine output is implemented here rather
/// than with <random> distributions, whose algorithms are unspecified by the
/// standard; this keeps outcomes bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  /// Independent stream for trial `index` of a run with `master` seed.
  static Rng for_trial(uint64_t master, uint64_t index);

  /// Child stream keyed by `label`; does not advance this stream.
  Rng split(uint64_t label) const;

  uint64_t seed() const { return seed_; }

  uint64_t next_u64();
  /// Uniform in [0, 1) with 53 bits of precision.
  double uniform01();
  /// Uniform in [0, bound). bound must be positive.
  uint64_t uniform_below(uint64_t bound);
  /// Uniform integer with the low `bits` bits random (bits <= 64).
  uint64_t bits(unsigned bits);
  bool coin();
  /// Standard normal via Box-Muller.
  double gaussian();

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace cdenlab

#endif  // CDENLAB_RNG_H_
