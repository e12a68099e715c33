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

#include "advlab/coupling.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace advlab {

Coupling::Coupling(Domain domain, std::vector<std::vector<double>> joint)
    : domain_(domain), joint_(std::move(joint)) {
  if (joint_.size() != domain_.size()) {
    throw std::invalid_argument("Coupling: wrong row count");
  }
  double total = 0.0;
  for (auto& row : joint_) {
    if (row.size() != domain_.size()) {
      throw std::invalid_argument("Coupling: wrong column count");
    }
    for (double& p : row) {
      if (!std::isfinite(p) || p < -kProbabilityTolerance) {
        throw std::invalid_argument("Coupling: negative entry");
      }
      p = std::max(p, 0.0);
      total += p;
    }
  }
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    throw std::invalid_argument("Coupling: total mass is not 1");
  }
}

DiscreteDistribution Coupling::FirstMarginal() const {
  std::vector<double> w(domain_.size(), 0.0);
  for (std::size_t x = 0; x < w.size(); ++x) {
    for (double p : joint_[x]) w[x] += p;
  }
  return DiscreteDistribution(domain_, std::move(w));
}

DiscreteDistribution Coupling::SecondMarginal() const {
  std::vector<double> w(domain_.size(), 0.0);
  for (const auto& row : joint_) {
    for (std::size_t y = 0; y < w.size(); ++y) w[y] += row[y];
  }
  return DiscreteDistribution(domain_, std::move(w));
}

double Coupling::DisagreementProbability() const {
  double agree = 0.0;
  for (std::size_t x = 0; x < joint_.size(); ++x) agree += joint_[x][x];
  return std::clamp(1.0 - agree, 0.0, 1.0);
}

Coupling OptimalCoupling(const DiscreteDistribution& d1,
                         const DiscreteDistribution& d2) {
  RequireSameDomain(d1.domain(), d2.domain(), "OptimalCoupling");
  const std::size_t size = d1.domain().size();
  std::vector<std::vector<double>> joint(size, std::vector<double>(size, 0.0));
  std::vector<double> excess1(size), excess2(size);
  double overlap = 0.0;
  for (std::size_t x = 0; x < size; ++x) {
    const double common = std::min(d1.weights()[x], d2.weights()[x]);
    joint[x][x] = common;
    overlap += common;
    excess1[x] = d1.weights()[x] - common;
    excess2[x] = d2.weights()[x] - common;
  }
  const double residual = 1.0 - overlap;
  if (residual > 0.0) {
    // Residual masses have disjoint supports, so the product puts nothing
    // on the diagonal.
    for (std::size_t x = 0; x < size; ++x) {
      if (excess1[x] <= 0.0) continue;
      for (std::size_t y = 0; y < size; ++y) {
        joint[x][y] += excess1[x] * excess2[y] / residual;
      }
    }
  }
  return Coupling(d1.domain(), std::move(joint));
}

Coupling ProductCoupling(const DiscreteDistribution& d1,
                         const DiscreteDistribution& d2) {
  RequireSameDomain(d1.domain(), d2.domain(), "ProductCoupling");
  const std::size_t size = d1.domain().size();
  std::vector<std::vector<double>> joint(size, std::vector<double>(size));
  for (std::size_t x = 0; x < size; ++x) {
    for (std::size_t y = 0; y < size; ++y) {
      joint[x][y] = d1.weights()[x] * d2.weights()[y];
    }
  }
  return Coupling(d1.domain(), std::move(joint));
}

}  // namespace advlab
