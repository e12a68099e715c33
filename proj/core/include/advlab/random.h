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

#ifndef ADVLAB_RANDOM_H_
#define ADVLAB_RANDOM_H_

#include <cstdint>
#include <random>

namespace advlab {

// A reproducible random stream identified by (seed, stream).
//
// Every Monte Carlo trial gets its own stream, `RandomSource(seed, trial)`,
// so results do not depend on how trials are scheduled across threads.
// Instances are cheap to move but must not be shared between threads.
class RandomSource {
 public:
  RandomSource(uint64_t seed, uint64_t stream);

  uint64_t seed() const { return seed_; }
  uint64_t stream() const { return stream_; }

  uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1).
  double Uniform01();

  // Uniform on {0, ..., bound - 1}. `bound` must be positive.
  uint64_t UniformInt(uint64_t bound);

  bool Bernoulli(double p);
  uint64_t Binomial(uint64_t n, double p);

  // Derives an independent child stream. The parent is not advanced.
  RandomSource Fork(uint64_t child) const;

  std::mt19937_64& engine() { return engine_; }

 private:
  uint64_t seed_;
  uint64_t stream_;
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to derive stream ids.
uint64_t MixBits(uint64_t x);

}  // namespace advlab

#endif  // ADVLAB_RANDOM_H_
