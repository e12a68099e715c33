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

#include "advlab/stochastic_map.h"

#include <stdexcept>
#include <utility>

namespace advlab {

StochasticMap::StochasticMap(std::vector<DiscreteDistribution> rows)
    : domain_(rows.empty() ? throw std::invalid_argument("StochasticMap: no rows")
                           : rows.front().domain()),
      rows_(std::move(rows)) {
  if (rows_.size() != domain_.size()) {
    throw std::invalid_argument("StochasticMap: need one row per element");
  }
  for (const auto& r : rows_) RequireSameDomain(domain_, r.domain(), "StochasticMap");
}

StochasticMap StochasticMap::Identity(Domain domain) {
  std::vector<DiscreteDistribution> rows;
  for (std::size_t x = 0; x < domain.size(); ++x) {
    rows.push_back(DiscreteDistribution::PointMass(domain, static_cast<Element>(x)));
  }
  return StochasticMap(std::move(rows));
}

StochasticMap StochasticMap::ResampleFrom(const SampleMultiset& t, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("ResampleFrom: eta outside [0, 1]");
  }
  const DiscreteDistribution target = UniformOf(t);
  std::vector<DiscreteDistribution> rows;
  for (std::size_t x = 0; x < t.domain().size(); ++x) {
    rows.push_back(Mixture(
        1.0 - eta, DiscreteDistribution::PointMass(t.domain(), static_cast<Element>(x)),
        target));
  }
  return StochasticMap(std::move(rows));
}

StochasticMap StochasticMap::Random(Domain domain, RandomSource& rng) {
  std::vector<DiscreteDistribution> rows;
  for (std::size_t x = 0; x < domain.size(); ++x) {
    rows.push_back(RandomDistribution(domain, rng, 0.3));
  }
  return StochasticMap(std::move(rows));
}

Element StochasticMap::Apply(Element x, RandomSource& rng) const {
  return rows_.at(x).Sample(rng);
}

DiscreteDistribution StochasticMap::Push(const DiscreteDistribution& d) const {
  RequireSameDomain(domain_, d.domain(), "StochasticMap::Push");
  std::vector<double> w(domain_.size(), 0.0);
  for (std::size_t x = 0; x < w.size(); ++x) {
    if (d.weights()[x] == 0.0) continue;
    const auto row = rows_[x].weights();
    for (std::size_t y = 0; y < w.size(); ++y) w[y] += d.weights()[x] * row[y];
  }
  return DiscreteDistribution::FromUnnormalized(domain_, std::move(w));
}

SampleMultiset ApplyStochastic(const StochasticMap& f, const SampleMultiset& s,
                               RandomSource& rng) {
  RequireSameDomain(f.domain(), s.domain(), "ApplyStochastic");
  SampleMultiset out(s.domain());
  for (const auto& [x, c] : s.counts()) {
    for (uint64_t i = 0; i < c; ++i) out.Add(f.Apply(x, rng));
  }
  return out;
}

std::vector<Element> ApplyStochastic(const StochasticMap& f,
                                     std::span<const Element> s,
                                     RandomSource& rng) {
  std::vector<Element> out;
  out.reserve(s.size());
  for (Element x : s) out.push_back(f.Apply(x, rng));
  return out;
}

}  // namespace advlab
