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

#ifndef ADVLAB_STATISTICAL_QUERY_H_
#define ADVLAB_STATISTICAL_QUERY_H_

#include <span>
#include <vector>

#include "advlab/distribution.h"

namespace advlab {

// A statistical query (phi, tau) with phi: X -> [-1, 1] stored densely.
class StatisticalQuery {
 public:
  StatisticalQuery(std::vector<double> phi, double tau);

  // phi = 1 on `x` and 0 elsewhere.
  static StatisticalQuery Indicator(Domain domain, Element x, double tau);
  static StatisticalQuery Constant(Domain domain, double value, double tau);

  std::span<const double> phi() const { return phi_; }
  double operator()(Element x) const { return phi_.at(x); }
  double tau() const { return tau_; }
  Domain domain() const { return Domain(phi_.size()); }

  // Empirical mean over the sample; throws on an empty sample.
  double Eval(const SampleMultiset& s) const;
  // Expectation under d.
  double Eval(const DiscreteDistribution& d) const;

  // Extreme points of phi; ties go to the lowest element id.
  Element Argmax() const;
  Element Argmin() const;
  double MaxValue() const { return phi_[Argmax()]; }
  double MinValue() const { return phi_[Argmin()]; }

  friend bool operator==(const StatisticalQuery&,
                         const StatisticalQuery&) = default;

 private:
  std::vector<double> phi_;
  double tau_;
};

// sum_i w_i * phi_i. Requires ||w||_1 <= 1 (within tolerance) so the result
// is again a valid query.
StatisticalQuery CombineQueries(std::span<const StatisticalQuery> queries,
                                std::span<const double> weights, double tau);

}  // namespace advlab

#endif  // ADVLAB_STATISTICAL_QUERY_H_
