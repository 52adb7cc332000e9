// Copyright 2026 The mqka Authors
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

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace mqka {

// Seedable randomness with platform-stable output. The standard
// distributions are implementation-defined, so everything here is derived
// from raw mt19937_64 words.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  bool bit() {
    if (spare_bits_ == 0) {
      bit_pool_ = engine_();
      spare_bits_ = 64;
    }
    bool b = bit_pool_ & 1u;
    bit_pool_ >>= 1;
    --spare_bits_;
    return b;
  }

  // Uniform in [0, bound). Rejection sampling keeps it unbiased.
  std::uint64_t uniform(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[uniform(i)]);
    }
  }

  // Independent child stream; used to give each trial of a batch its own engine.
  Rng fork(std::uint64_t stream) { return Rng(mix(next() ^ mix(stream))); }

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t bit_pool_ = 0;
  int spare_bits_ = 0;
};

// Deterministic per-trial seed derived from a batch seed.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return Rng::mix(Rng::mix(seed) ^ (trial + 1) * 0xd1b54a32d192ed03ULL);
}

}  // namespace mqka
