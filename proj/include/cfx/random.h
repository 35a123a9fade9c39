// Copyright 2026 The Authors.
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

#ifndef CFX_RANDOM_H_
#define CFX_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace cfx {

// Seeded pseudorandom stream with a platform-independent draw sequence.
//
// The engine is std::mt19937_64, whose output is fixed by the standard. The
// derived draws below are computed from raw engine output by hand.
class RngStream {
 public:
  explicit RngStream(uint64_t seed) : seed_(seed), engine_(seed) {}

  uint64_t seed() const { return seed_; }

  uint64_t NextU64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double Uniform01();
  // Uniform on [lo, hi).
  double Uniform(double lo, double hi);
  // Uniform on {0, ..., n-1}; n must be positive. Unbiased (rejection).
  uint64_t UniformIndex(uint64_t n);
  bool Bernoulli(double p) { return Uniform01() < p; }
  // Box-Muller; one draw per call, the paired value is discarded.
  double Normal(double mean, double stddev);

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
};

// splitmix64 finalizer.
uint64_t MixBits(uint64_t x);

// Stable seed derived from (base, label, value, repetition). Changing any
// component changes the seed; no component depends on iteration order.
uint64_t DeriveSeed(uint64_t base, std::string_view label, double value,
                    uint64_t repetition);

}  // namespace cfx

#endif  // CFX_RANDOM_H_
