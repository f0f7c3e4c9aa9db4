// Copyright 2026 The FIMA Authors
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

#ifndef FIMA_RNG_H_
#define FIMA_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace fima {

// Hashes a seed together with a list of stream keys into a 64-bit engine
// seed. Distinct key tuples give statistically independent streams, which
// lets parallel workers own non-overlapping substreams that do not depend on
// how work is partitioned.
uint64_t MixStreamKey(uint64_t seed, std::initializer_list<uint64_t> keys);

// Seeded random source. Satisfies UniformRandomBitGenerator so it can be
// handed to <random> distributions directly.
class Rng {
 public:
  using result_type = std::mt19937_64::result_type;

  explicit Rng(uint64_t seed) : engine_(seed), seed_(seed) {}

  // Independent substream keyed by (seed, keys...).
  static Rng ForStream(uint64_t seed, std::initializer_list<uint64_t> keys) {
    return Rng(MixStreamKey(seed, keys));
  }

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  // Uniform on the open interval (0, 1); never returns 0 or 1.
  double Uniform01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Fresh 64-bit key for deriving child streams from this one.
  uint64_t NextKey() { return engine_(); }

  uint64_t seed() const { return seed_; }

 private:
  std::mt19937_64 engine_;
  uint64_t seed_;
};

}  // namespace fima

#endif  // FIMA_RNG_H_
