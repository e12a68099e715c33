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

// The subsampling filter and the with/without-replacement coupling.

#ifndef ADVLAB_SUBSAMPLING_H_
#define ADVLAB_SUBSAMPLING_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "advlab/distribution.h"
#include "advlab/random.h"

namespace advlab {

// n draws from U(s) with replacement. Throws on an empty s.
SampleMultiset Subsample(const SampleMultiset& s, uint64_t n,
                         RandomSource& rng);

// Ordered variant: n draws with replacement from the given sequence.
template <typename T>
std::vector<T> SubsampleSequence(std::span<const T> s, uint64_t n,
                                 RandomSource& rng) {
  std::vector<T> out;
  out.reserve(n);
  for (uint64_t i = 0; i < n; ++i) out.push_back(s[rng.UniformInt(s.size())]);
  return out;
}

struct CoupledDraw {
  // Marginally d^m.
  std::vector<Element> clean;
  // Marginally the m-point subsample of a d^M sample.
  std::vector<Element> filtered;
  // Some index of the M-point sample was drawn twice.
  bool collided = false;

  // Compares the two as multisets.
  bool Differ() const;
};

// One run of the index-based coupling: draw i uniform in [M]; the first
// visit to i fixes y_i ~ d, which both outputs share; a repeat visit reuses
// y_i in `filtered` while `clean` takes a fresh draw.
CoupledDraw CoupledPair(const DiscreteDistribution& d, uint64_t m, uint64_t M,
                        RandomSource& rng);

// C(m, 2) / M.
double CouplingBound(uint64_t m, uint64_t M);

// Exact TV between d^m and the m-point subsample of d^M, both as
// distributions over ordered m-tuples. Requires |X|^m <= 1e6 and m <= 10.
double ExactSubsampleTv(const DiscreteDistribution& d, uint64_t m, uint64_t M);

// The tuple distribution of the m-point subsample of d^M, indexed like
// ForEachTuple. Same limits as ExactSubsampleTv.
std::vector<double> SubsampleTupleDistribution(const DiscreteDistribution& d,
                                               uint64_t m, uint64_t M);

struct TvBoundReport {
  uint64_t m = 0;
  uint64_t M = 0;
  double bound = 0.0;
  uint64_t trials = 0;
  uint64_t differ = 0;
  uint64_t collisions = 0;
  double empirical_neq_rate = 0.0;
  double collision_rate = 0.0;
  // Binomial standard error of empirical_neq_rate.
  double standard_error = 0.0;
  std::optional<double> exact_tv;
  uint64_t seed = 0;
};

// Monte Carlo coupling run; adds the exact TV when `exact` is set.
TvBoundReport TvBoundCheck(const DiscreteDistribution& d, uint64_t m,
                           uint64_t M, uint64_t trials, uint64_t seed,
                           bool exact);

}  // namespace advlab

#endif  // ADVLAB_SUBSAMPLING_H_
