// Copyright 2026 The Spotbench Authors
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

// SplitMix64 as a counter-based generator: draw i (0-based) of seed s is
// Mix(s + (i + 1) * 0x9E3779B97F4A7C15) with the standard SplitMix64
// finalizer. Doubles take the top 53 bits; bounded integers use rejection.

#ifndef SPOTBENCH_RNG_H_
#define SPOTBENCH_RNG_H_

#include <cmath>
#include <cstdint>

namespace spotbench {

inline constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t SplitMix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  // Random access into the stream.
  static std::uint64_t At(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(seed + (index + 1) * kSplitMixGamma);
  }

  std::uint64_t NextU64() { return At(seed_, counter_++); }

  // Uniform in [0, 1).
  double Uniform() { return static_cast<double>(NextU64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n), n > 0.
  std::uint64_t Below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = NextU64();
    while (v >= limit) v = NextU64();
    return v % n;
  }

  // Standard normal via Box-Muller, one value per call.
  double Normal() {
    double u1 = Uniform();
    while (u1 <= 0.0) u1 = Uniform();
    const double u2 = Uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace spotbench

#endif  // SPOTBENCH_RNG_H_
