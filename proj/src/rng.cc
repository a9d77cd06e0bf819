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

#include "cdenlab/rng.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cdenlab {

uint64_t mix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng::Rng(uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

Rng Rng::for_trial(uint64_t master, uint64_t index) {
  return Rng(mix64(master ^ mix64(index + 0x7472696C)));
}

Rng Rng::split(uint64_t label) const {
  return Rng(mix64(seed_ + 0x5BD1E995ULL * (label + 1)));
}

uint64_t Rng::next_u64() { return engine_(); }

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

uint64_t Rng::uniform_below(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: zero bound");
  // Rejection on the largest multiple of bound.
  const uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
  uint64_t v;
  do {
    v = next_u64();
  } while (v > limit);
  return v % bound;
}

uint64_t Rng::bits(unsigned n) {
  if (n > 64) throw std::invalid_argument("Rng::bits: more than 64 bits");
  if (n == 0) return 0;
  uint64_t v = next_u64();
  return n == 64 ? v : (v & ((uint64_t{1} << n) - 1));
}

bool Rng::coin() { return (next_u64() >> 63) != 0; }

double Rng::gaussian() {
  double u1 = uniform01();
  while (u1 <= 0.0) u1 = uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace cdenlab
