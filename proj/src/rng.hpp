// Copyright 2026 The shortmol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>

namespace shortmol {

// SplitMix64 mixing step (Vigna). Used both to expand seeds and to derive
// independent substream seeds from (master, a, b) tags, so that simulation
// results do not depend on thread scheduling.
inline std::uint64_t splitmix64_step(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
  return splitmix64_step(splitmix64_step(splitmix64_step(master) ^ a) ^ b);
}

// xoshiro256++ (Blackman & Vigna, public domain reference implementation).
// All variate transforms are hand-rolled on top of next() so that streams are
// reproducible across standard libraries; std::* distributions are
// implementation-defined and would break the byte-identical-output contract.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& w : s_) {
      x += 0x9E3779B97F4A7C15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
      w = z ^ (z >> 31);
    }
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe argument for log().
  double next_unit_open() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

  // Exponential(1).
  double next_exponential() { return -std::log(next_unit_open()); }

  // Uniform integer in [0, n), unbiased (rejection sampling). Requires n >= 1.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
};

inline Rng substream(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
  return Rng(stream_seed(master, a, b));
}

// Substream tags. Trials get one tag per trial index; each sequenced read
// inside a trial gets its own (trial, read) stream.
inline constexpr std::uint64_t kStreamCodeSample = 1;
inline constexpr std::uint64_t kStreamCodebook = 2;
inline constexpr std::uint64_t kStreamGridPoint = 3;
inline constexpr std::uint64_t kStreamTrialBase = 0x100000000ULL;

}  // namespace shortmol
