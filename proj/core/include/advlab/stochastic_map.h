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

#ifndef ADVLAB_STOCHASTIC_MAP_H_
#define ADVLAB_STOCHASTIC_MAP_H_

#include <span>
#include <vector>

#include "advlab/distribution.h"
#include "advlab/random.h"

namespace advlab {

// A stochastic function on a finite domain: row x is the output
// distribution for input x.
class StochasticMap {
 public:
  explicit StochasticMap(std::vector<DiscreteDistribution> rows);

  static StochasticMap Identity(Domain domain);
  // Keeps x with probability 1 - eta, otherwise draws from U(t).
  static StochasticMap ResampleFrom(const SampleMultiset& t, double eta);
  static StochasticMap Random(Domain domain, RandomSource& rng);

  const Domain& domain() const { return domain_; }
  const DiscreteDistribution& row(Element x) const { return rows_.at(x); }

  Element Apply(Element x, RandomSource& rng) const;

  // The exact output distribution f o d.
  DiscreteDistribution Push(const DiscreteDistribution& d) const;

 private:
  Domain domain_;
  std::vector<DiscreteDistribution> rows_;
};

// Applies f independently to every point.
SampleMultiset ApplyStochastic(const StochasticMap& f, const SampleMultiset& s,
                               RandomSource& rng);
std::vector<Element> ApplyStochastic(const StochasticMap& f,
                                     std::span<const Element> s,
                                     RandomSource& rng);

}  // namespace advlab

#endif  // ADVLAB_STOCHASTIC_MAP_H_
