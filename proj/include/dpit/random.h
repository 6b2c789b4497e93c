//
// Copyright 2026 The dpit Authors
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
//

#ifndef DPIT_RANDOM_H_
#define DPIT_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace dpit {

// Seeded random source. Every sampling routine in the library takes an
// explicit Rng; there is no global state, so workers each own one.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Uniform on the open interval (0, 1), built from the top 53 bits of one
  // engine output so results do not depend on the standard library's
  // distribution implementations.
  double Uniform();

  bool Bernoulli(double p) { return Uniform() < p; }

  // Fair coin.
  bool Coin() { return (engine_() >> 63) != 0; }

  // Uniform integer in [0, bound).
  int64_t UniformInt(int64_t bound);

  int64_t Poisson(double mean);

  int64_t Binomial(int64_t trials, double p);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer.
uint64_t MixBits(uint64_t x);

// Derives a child seed from `root` and an index path, e.g. (n, m, trial, arm).
// Distinct paths give statistically independent streams.
uint64_t DeriveSeed(uint64_t root, std::initializer_list<uint64_t> path);

}  // namespace dpit

#endif  // DPIT_RANDOM_H_
