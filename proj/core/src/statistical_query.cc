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

#include "advlab/statistical_query.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace advlab {

StatisticalQuery::StatisticalQuery(std::vector<double> phi, double tau)
    : phi_(std::move(phi)), tau_(tau) {
  if (phi_.empty()) throw std::invalid_argument("StatisticalQuery: empty phi");
  if (!(tau > 0.0 && tau <= 2.0)) {
    throw std::invalid_argument("StatisticalQuery: tau must lie in (0, 2]");
  }
  for (double& v : phi_) {
    if (!std::isfinite(v) || std::abs(v) > 1.0 + kProbabilityTolerance) {
      throw std::invalid_argument("StatisticalQuery: |phi(x)| must be <= 1");
    }
    v = std::clamp(v, -1.0, 1.0);
  }
}

StatisticalQuery StatisticalQuery::Indicator(Domain domain, Element x,
                                             double tau) {
  if (!domain.Contains(x)) throw std::out_of_range("Indicator: bad element");
  std::vector<double> phi(domain.size(), 0.0);
  phi[x] = 1.0;
  return StatisticalQuery(std::move(phi), tau);
}

StatisticalQuery StatisticalQuery::Constant(Domain domain, double value,
                                            double tau) {
  return StatisticalQuery(std::vector<double>(domain.size(), value), tau);
}

double StatisticalQuery::Eval(const SampleMultiset& s) const {
  RequireSameDomain(domain(), s.domain(), "StatisticalQuery::Eval");
  if (s.empty()) throw std::invalid_argument("StatisticalQuery::Eval: empty sample");
  double total = 0.0;
  for (const auto& [x, c] : s.counts()) total += static_cast<double>(c) * phi_[x];
  return total / static_cast<double>(s.size());
}

double StatisticalQuery::Eval(const DiscreteDistribution& d) const {
  RequireSameDomain(domain(), d.domain(), "StatisticalQuery::Eval");
  double total = 0.0;
  for (std::size_t x = 0; x < phi_.size(); ++x) total += d.weights()[x] * phi_[x];
  return total;
}

Element StatisticalQuery::Argmax() const {
  return static_cast<Element>(std::max_element(phi_.begin(), phi_.end()) -
                              phi_.begin());
}

Element StatisticalQuery::Argmin() const {
  return static_cast<Element>(std::min_element(phi_.begin(), phi_.end()) -
                              phi_.begin());
}

StatisticalQuery CombineQueries(std::span<const StatisticalQuery> queries,
                                std::span<const double> weights, double tau) {
  if (queries.empty() || queries.size() != weights.size()) {
    throw std::invalid_argument("CombineQueries: size mismatch");
  }
  double l1 = 0.0;
  for (double w : weights) l1 += std::abs(w);
  if (l1 > 1.0 + 1e-9) throw std::invalid_argument("CombineQueries: ||w||_1 > 1");
  const std::size_t size = queries.front().phi().size();
  std::vector<double> psi(size, 0.0);
  for (std::size_t i = 0; i < queries.size(); ++i) {
    if (queries[i].phi().size() != size) {
      throw DomainMismatch("CombineQueries: domain mismatch");
    }
    for (std::size_t x = 0; x < size; ++x) psi[x] += weights[i] * queries[i](x);
  }
  for (double& v : psi) v = std::clamp(v, -1.0, 1.0);
  return StatisticalQuery(std::move(psi), tau);
}

}  // namespace advlab
