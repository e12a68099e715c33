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

#include "advlab/distribution.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace advlab {

Domain::Domain(std::size_t size) : size_(size) {
  if (size == 0) throw std::invalid_argument("Domain: size must be positive");
}

void RequireSameDomain(const Domain& a, const Domain& b, const char* what) {
  if (!(a == b)) {
    throw DomainMismatch(std::string(what) + ": domain mismatch (" +
                         std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
  }
}

DiscreteDistribution::DiscreteDistribution(Domain domain,
                                           std::vector<double> weights)
    : domain_(domain), weights_(std::move(weights)) {
  if (weights_.size() != domain_.size()) {
    throw std::invalid_argument("DiscreteDistribution: expected " +
                                std::to_string(domain_.size()) +
                                " weights, got " +
                                std::to_string(weights_.size()));
  }
  double sum = 0.0;
  for (double& w : weights_) {
    if (!std::isfinite(w) || w < -kProbabilityTolerance) {
      throw std::invalid_argument(
          "DiscreteDistribution: weights must be finite and non-negative");
    }
    if (w < 0.0) w = 0.0;
    sum += w;
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "DiscreteDistribution: weights sum to " << sum << ", not 1";
    throw std::invalid_argument(msg.str());
  }
  cdf_.resize(weights_.size());
  double running = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    running += weights_[i];
    cdf_[i] = running;
  }
}

DiscreteDistribution DiscreteDistribution::PointMass(Domain domain,
                                                     Element x) {
  if (!domain.Contains(x)) {
    throw std::out_of_range("PointMass: element outside domain");
  }
  std::vector<double> w(domain.size(), 0.0);
  w[x] = 1.0;
  return DiscreteDistribution(domain, std::move(w));
}

DiscreteDistribution DiscreteDistribution::Uniform(Domain domain) {
  return DiscreteDistribution(
      domain, std::vector<double>(domain.size(),
                                  1.0 / static_cast<double>(domain.size())));
}

DiscreteDistribution DiscreteDistribution::FromUnnormalized(
    Domain domain, std::vector<double> weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("FromUnnormalized: negative weight");
    }
    sum += w;
  }
  if (!(sum > 0.0)) throw std::invalid_argument("FromUnnormalized: zero mass");
  for (double& w : weights) w /= sum;
  return DiscreteDistribution(domain, std::move(weights));
}

DiscreteDistribution DiscreteDistribution::Bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("Bernoulli: p outside [0,1]");
  }
  return DiscreteDistribution(Domain(2), {1.0 - p, p});
}

std::vector<Element> DiscreteDistribution::Support() const {
  std::vector<Element> support;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] > 0.0) support.push_back(static_cast<Element>(i));
  }
  return support;
}

Element DiscreteDistribution::Sample(RandomSource& rng) const {
  const double u = rng.Uniform01() * cdf_.back();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  std::size_t index = static_cast<std::size_t>(it - cdf_.begin());
  if (index >= weights_.size()) index = weights_.size() - 1;
  // upper_bound can land on a zero-weight slot only through rounding at the
  // top of the cdf; walk back to the last supported element.
  while (weights_[index] == 0.0 && index > 0) --index;
  return static_cast<Element>(index);
}

bool DiscreteDistribution::ApproxEquals(const DiscreteDistribution& other,
                                        double tolerance) const {
  if (!(domain_ == other.domain_)) return false;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (std::abs(weights_[i] - other.weights_[i]) > tolerance) return false;
  }
  return true;
}

SampleMultiset SampleMultiset::FromElements(Domain domain,
                                            std::span<const Element> elements) {
  SampleMultiset s(domain);
  for (Element x : elements) s.Add(x);
  return s;
}

SampleMultiset SampleMultiset::FromCounts(Domain domain,
                                          std::span<const uint64_t> counts) {
  if (counts.size() != domain.size()) {
    throw std::invalid_argument("FromCounts: size mismatch");
  }
  SampleMultiset s(domain);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) s.Add(static_cast<Element>(i), counts[i]);
  }
  return s;
}

void SampleMultiset::Add(Element x, uint64_t count) {
  if (!domain_.Contains(x)) {
    throw std::out_of_range("SampleMultiset::Add: element " +
                            std::to_string(x) + " outside domain");
  }
  if (count == 0) return;
  counts_[x] += count;
  size_ += count;
}

void SampleMultiset::Remove(Element x, uint64_t count) {
  if (count == 0) return;
  auto it = counts_.find(x);
  if (it == counts_.end() || it->second < count) {
    throw std::invalid_argument("SampleMultiset::Remove: not enough copies");
  }
  it->second -= count;
  if (it->second == 0) counts_.erase(it);
  size_ -= count;
}

uint64_t SampleMultiset::Multiplicity(Element x) const {
  auto it = counts_.find(x);
  return it == counts_.end() ? 0 : it->second;
}

std::vector<Element> SampleMultiset::ToSequence() const {
  std::vector<Element> out;
  out.reserve(size_);
  for (const auto& [x, c] : counts_) out.insert(out.end(), c, x);
  return out;
}

std::vector<uint64_t> SampleMultiset::DenseCounts() const {
  std::vector<uint64_t> dense(domain_.size(), 0);
  for (const auto& [x, c] : counts_) dense[x] = c;
  return dense;
}

std::string SampleMultiset::DebugString() const {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& [x, c] : counts_) {
    if (!first) out << ", ";
    first = false;
    out << x << "x" << c;
  }
  out << "}";
  return out.str();
}

double TvDistance(const DiscreteDistribution& d1,
                  const DiscreteDistribution& d2) {
  RequireSameDomain(d1.domain(), d2.domain(), "TvDistance");
  double total = 0.0;
  const auto w1 = d1.weights();
  const auto w2 = d2.weights();
  for (std::size_t i = 0; i < w1.size(); ++i) total += std::abs(w1[i] - w2[i]);
  return std::clamp(0.5 * total, 0.0, 1.0);
}

DiscreteDistribution UniformOf(const SampleMultiset& s) {
  if (s.empty()) throw std::invalid_argument("UniformOf: empty multiset");
  std::vector<double> w(s.domain().size(), 0.0);
  const double n = static_cast<double>(s.size());
  for (const auto& [x, c] : s.counts()) w[x] = static_cast<double>(c) / n;
  return DiscreteDistribution(s.domain(), std::move(w));
}

std::vector<Element> SampleIidSequence(const DiscreteDistribution& d,
                                       uint64_t n, RandomSource& rng) {
  std::vector<Element> out(n);
  for (auto& x : out) x = d.Sample(rng);
  return out;
}

SampleMultiset SampleIid(const DiscreteDistribution& d, uint64_t n,
                         RandomSource& rng) {
  std::vector<uint64_t> counts(d.domain().size(), 0);
  for (uint64_t i = 0; i < n; ++i) ++counts[d.Sample(rng)];
  return SampleMultiset::FromCounts(d.domain(), counts);
}

DiscreteDistribution RandomDistribution(Domain domain, RandomSource& rng,
                                        double zero_probability) {
  std::vector<double> w(domain.size(), 0.0);
  bool any = false;
  for (double& x : w) {
    if (rng.Bernoulli(zero_probability)) continue;
    x = 1.0 - rng.Uniform01();
    any = true;
  }
  if (!any) w[rng.UniformInt(domain.size())] = 1.0;
  return DiscreteDistribution::FromUnnormalized(domain, std::move(w));
}

DiscreteDistribution Mixture(double theta, const DiscreteDistribution& d1,
                             const DiscreteDistribution& d2) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("Mixture: theta outside [0,1]");
  }
  RequireSameDomain(d1.domain(), d2.domain(), "Mixture");
  std::vector<double> w(d1.domain().size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = theta * d1.weights()[i] + (1.0 - theta) * d2.weights()[i];
  }
  return DiscreteDistribution(d1.domain(), std::move(w));
}

}  // namespace advlab
