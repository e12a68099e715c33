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

// Finite-domain distributions and sample multisets.

#ifndef ADVLAB_DISTRIBUTION_H_
#define ADVLAB_DISTRIBUTION_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "advlab/random.h"

namespace advlab {

// Absolute tolerance for every probability equality check.
inline constexpr double kProbabilityTolerance = 1e-12;

// Dense index into a finite domain.
using Element = uint32_t;

class DomainMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A finite domain {0, ..., size - 1}. Domains are plain values: two handles
// with the same size denote the same domain.
class Domain {
 public:
  explicit Domain(std::size_t size);

  std::size_t size() const { return size_; }
  bool Contains(Element x) const { return x < size_; }

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  std::size_t size_;
};

void RequireSameDomain(const Domain& a, const Domain& b, const char* what);

// An explicit probability table over a finite domain. Immutable.
class DiscreteDistribution {
 public:
  // Weights must be non-negative and sum to 1 within kProbabilityTolerance.
  // Entries in [-kProbabilityTolerance, 0) are clamped to zero.
  DiscreteDistribution(Domain domain, std::vector<double> weights);

  static DiscreteDistribution PointMass(Domain domain, Element x);
  static DiscreteDistribution Uniform(Domain domain);
  // Normalizes non-negative weights with a positive sum.
  static DiscreteDistribution FromUnnormalized(Domain domain,
                                               std::vector<double> weights);
  // Bernoulli(p) over {0, 1}: weight p on element 1.
  static DiscreteDistribution Bernoulli(double p);

  const Domain& domain() const { return domain_; }
  std::span<const double> weights() const { return weights_; }
  double operator[](Element x) const { return weights_.at(x); }

  std::vector<Element> Support() const;

  Element Sample(RandomSource& rng) const;

  bool ApproxEquals(const DiscreteDistribution& other,
                    double tolerance = kProbabilityTolerance) const;

 private:
  Domain domain_;
  std::vector<double> weights_;
  std::vector<double> cdf_;
};

// A multiset of domain elements, stored as sorted (element, multiplicity).
class SampleMultiset {
 public:
  explicit SampleMultiset(Domain domain) : domain_(domain) {}

  static SampleMultiset FromElements(Domain domain,
                                     std::span<const Element> elements);
  static SampleMultiset FromCounts(Domain domain,
                                   std::span<const uint64_t> counts);

  void Add(Element x, uint64_t count = 1);
  // Throws if fewer than `count` copies are present.
  void Remove(Element x, uint64_t count = 1);

  uint64_t Multiplicity(Element x) const;
  uint64_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  const Domain& domain() const { return domain_; }
  const std::map<Element, uint64_t>& counts() const { return counts_; }

  // Elements in ascending id order, each repeated by its multiplicity.
  std::vector<Element> ToSequence() const;
  std::vector<uint64_t> DenseCounts() const;

  std::string DebugString() const;

  friend bool operator==(const SampleMultiset& a, const SampleMultiset& b) {
    return a.domain_ == b.domain_ && a.counts_ == b.counts_;
  }

 private:
  Domain domain_;
  std::map<Element, uint64_t> counts_;
  uint64_t size_ = 0;
};

// (1/2) * sum_x |d1(x) - d2(x)|.
double TvDistance(const DiscreteDistribution& d1,
                  const DiscreteDistribution& d2);

// U(S): weight of x is multiplicity(x) / |S|. Throws on an empty multiset.
DiscreteDistribution UniformOf(const SampleMultiset& s);

// n independent draws from d.
SampleMultiset SampleIid(const DiscreteDistribution& d, uint64_t n,
                         RandomSource& rng);
std::vector<Element> SampleIidSequence(const DiscreteDistribution& d,
                                       uint64_t n, RandomSource& rng);

// Random weights: each entry is zero with probability zero_probability,
// otherwise Uniform(0, 1], then normalized. At least one entry is positive.
DiscreteDistribution RandomDistribution(Domain domain, RandomSource& rng,
                                        double zero_probability = 0.0);

// theta * d1 + (1 - theta) * d2.
DiscreteDistribution Mixture(double theta, const DiscreteDistribution& d1,
                             const DiscreteDistribution& d2);

}  // namespace advlab

#endif  // ADVLAB_DISTRIBUTION_H_
