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

#include "cfx/random.h"

#include <bit>
#include <cassert>
#include <cmath>
#include <numbers>

namespace cfx {

double RngStream::Uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::Uniform(double lo, double hi) {
  return lo + (hi - lo) * Uniform01();
}

uint64_t RngStream::UniformIndex(uint64_t n) {
  assert(n > 0);
  // Largest multiple of n representable; draws above it are rejected.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double RngStream::Normal(double mean, double stddev) {
  double u1;
  do {
    u1 = Uniform01();
  } while (u1 == 0.0);
  const double u2 = Uniform01();
  const double z =
      std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  return mean + stddev * z;
}

uint64_t MixBits(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t DeriveSeed(uint64_t base, std::string_view label, double value,
                    uint64_t repetition) {
  // FNV-1a over the label, then mixed with the numeric components.
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  h = MixBits(h ^ MixBits(base));
  h = MixBits(h ^ std::bit_cast<uint64_t>(value == 0.0 ? 0.0 : value));
  h = MixBits(h ^ repetition);
  return h;
}

}  // namespace cfx
