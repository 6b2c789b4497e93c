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

#include "dpit/random.h"

#include <cmath>

namespace dpit {

double Rng::Uniform() {
  // (k + 0.5) / 2^53 never hits 0 or 1.
  const uint64_t k = engine_() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

int64_t Rng::UniformInt(int64_t bound) {
  std::uniform_int_distribution<int64_t> dist(0, bound - 1);
  return dist(engine_);
}

int64_t Rng::Poisson(double mean) {
  if (mean <= 0.0) return 0;
  std::poisson_distribution<int64_t> dist(mean);
  return dist(engine_);
}

int64_t Rng::Binomial(int64_t trials, double p) {
  if (trials <= 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  std::binomial_distribution<int64_t> dist(trials, p);
  return dist(engine_);
}

uint64_t MixBits(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t DeriveSeed(uint64_t root, std::initializer_list<uint64_t> path) {
  uint64_t state = MixBits(root);
  for (uint64_t index : path) {
    state = MixBits(state ^ MixBits(index + 0x632be59bd9b4e019ULL));
  }
  return state;
}

}  // namespace dpit
