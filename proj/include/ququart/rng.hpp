// Copyright 2026 The ququart Authors
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

#include <cstdint>
#include <limits>

namespace ququart {

/// SplitMix64 stream. Small state, so one generator per shot or per scan point
/// is cheap; `split` derives independent child streams, which makes parallel
/// and sequential evaluation produce identical draws.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  /// Child stream for `index`; does not advance this generator.
  SplitMix64 split(std::uint64_t index) const;

 private:
  std::uint64_t state_;
};

/// Seed of child `index` of `master`. Deterministic across platforms.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Number of successes in `n` Bernoulli(p) trials drawn from `rng`.
int binomial(SplitMix64& rng, int n, double p);

}  // namespace ququart
