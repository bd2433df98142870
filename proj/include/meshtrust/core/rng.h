// Copyright 2026 The meshtrust Authors
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

#ifndef MESHTRUST_CORE_RNG_H_
#define MESHTRUST_CORE_RNG_H_

#include <cstdint>
#include <random>

namespace meshtrust {

// splitmix64 step; used for sub-seed derivation and keystreams.
constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives an independent stream seed from (seed, stream tag).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL);
  splitmix64(s);
  return splitmix64(s);
}

// Deterministic RNG. Wraps the (standardized) mt19937_64 engine but never
// uses std::*_distribution, whose output is implementation-defined; all
// derived draws below are fixed algorithms so identical seeds give
// identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  // Uniform integer in [0, bound). Modulo bias is negligible for the bounds
  // used here and keeps the draw a single engine step.
  std::uint64_t uniform_int(std::uint64_t bound) {
    return bound == 0 ? 0 : engine_() % bound;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace meshtrust

#endif  // MESHTRUST_CORE_RNG_H_
