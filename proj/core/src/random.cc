// Copyright 2026 The advlab Authors.
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

#include "advlab/random.h"

#include <stdexcept>

namespace advlab {
namespace {

std::mt19937_64 SeedEngine(uint64_t seed, uint64_t stream) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(stream),
                    static_cast<uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

uint64_t MixBits(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomSource::RandomSource(uint64_t seed, uint64_t stream)
    : seed_(seed), stream_(stream), engine_(SeedEngine(seed, stream)) {}

double RandomSource::Uniform01() {
  // 53 high bits -> exactly representable dyadic rational in [0, 1).
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

uint64_t RandomSource::UniformInt(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("UniformInt: bound must be > 0");
  // Lemire's nearly-divisionless rejection method.
  __extension__ using U128 = unsigned __int128;
  U128 product = static_cast<U128>(engine_()) * bound;
  auto low = static_cast<uint64_t>(product);
  if (low < bound) {
    const uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<U128>(engine_()) * bound;
      low = static_cast<uint64_t>(product);
    }
  }
  return static_cast<uint64_t>(product >> 64);
}

bool RandomSource::Bernoulli(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return Uniform01() < p;
}

uint64_t RandomSource::Binomial(uint64_t n, double p) {
  if (n == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  std::binomial_distribution<uint64_t> dist(n, p);
  return dist(engine_);
}

RandomSource RandomSource::Fork(uint64_t child) const {
  return RandomSource(seed_, MixBits(stream_ ^ MixBits(child + 1)));
}

}  // namespace advlab
