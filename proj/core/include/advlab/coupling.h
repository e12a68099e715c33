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

#ifndef ADVLAB_COUPLING_H_
#define ADVLAB_COUPLING_H_

#include <cstddef>
#include <vector>

#include "advlab/distribution.h"

namespace advlab {

// A joint distribution over pairs (x, x'). joint[x][x'] is P[(x, x')].
class Coupling {
 public:
  // Validates non-negativity and total mass 1 within kProbabilityTolerance.
  Coupling(Domain domain, std::vector<std::vector<double>> joint);

  const Domain& domain() const { return domain_; }
  double operator()(Element x, Element y) const { return joint_[x][y]; }

  DiscreteDistribution FirstMarginal() const;
  DiscreteDistribution SecondMarginal() const;

  // P[x != x'].
  double DisagreementProbability() const;

 private:
  Domain domain_;
  std::vector<std::vector<double>> joint_;
};

// The maximal coupling: P[x = x'] = sum_x min(d1(x), d2(x)), so the
// disagreement probability equals TvDistance(d1, d2).
Coupling OptimalCoupling(const DiscreteDistribution& d1,
                         const DiscreteDistribution& d2);

// The independent coupling d1 x d2.
Coupling ProductCoupling(const DiscreteDistribution& d1,
                         const DiscreteDistribution& d2);

}  // namespace advlab

#endif  // ADVLAB_COUPLING_H_
