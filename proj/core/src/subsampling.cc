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

#include "advlab/subsampling.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

#include "advlab/combinatorics.h"
#include "advlab/parallel.h"

namespace advlab {
namespace {

// Calls fn(labels, blocks) for every set partition of {0..m-1}, written as a
// restricted growth string.
void ForEachSetPartition(
    std::size_t m,
    const std::function<void(std::span<const std::size_t>, std::size_t)>& fn) {
  std::vector<std::size_t> labels(m, 0);
  std::function<void(std::size_t, std::size_t)> recurse =
      [&](std::size_t pos, std::size_t blocks) {
        if (pos == m) {
          fn(labels, blocks);
          return;
        }
        for (std::size_t b = 0; b <= blocks; ++b) {
          labels[pos] = b;
          recurse(pos + 1, std::max(blocks, b + 1));
        }
      };
  recurse(0, 0);
}

void CheckExactLimits(const DiscreteDistribution& d, uint64_t m, uint64_t M) {
  if (m == 0 || M < m) throw std::invalid_argument("exact subsample TV: need M >= m >= 1");
  if (m > 10 || TupleCount(d.domain().size(), m) > 1e6) {
    throw std::invalid_argument("exact subsample TV: too many tuples");
  }
}

}  // namespace

SampleMultiset Subsample(const SampleMultiset& s, uint64_t n,
                         RandomSource& rng) {
  if (s.empty()) throw std::invalid_argument("Subsample: empty sample");
  const std::vector<Element> points = s.ToSequence();
  std::vector<uint64_t> counts(s.domain().size(), 0);
  for (uint64_t i = 0; i < n; ++i) ++counts[points[rng.UniformInt(points.size())]];
  return SampleMultiset::FromCounts(s.domain(), counts);
}

bool CoupledDraw::Differ() const {
  if (!collided) return false;
  std::vector<Element> a = clean;
  std::vector<Element> b = filtered;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a != b;
}

CoupledDraw CoupledPair(const DiscreteDistribution& d, uint64_t m, uint64_t M,
                        RandomSource& rng) {
  if (m == 0 || M < m) throw std::invalid_argument("CoupledPair: need M >= m >= 1");
  CoupledDraw out;
  out.clean.reserve(m);
  out.filtered.reserve(m);
  // Only the touched entries of y matter; m is small, so a flat list is
  // cheaper than a table of size M.
  std::vector<std::pair<uint64_t, Element>> assigned;
  assigned.reserve(m);
  for (uint64_t j = 0; j < m; ++j) {
    const uint64_t i = rng.UniformInt(M);
    auto it = std::find_if(assigned.begin(), assigned.end(),
                           [i](const auto& e) { return e.first == i; });
    if (it == assigned.end()) {
      const Element x = d.Sample(rng);
      assigned.emplace_back(i, x);
      out.clean.push_back(x);
      out.filtered.push_back(x);
    } else {
      out.collided = true;
      out.filtered.push_back(it->second);
      out.clean.push_back(d.Sample(rng));
    }
  }
  return out;
}

double CouplingBound(uint64_t m, uint64_t M) {
  return BinomialCoefficient(m, 2) / static_cast<double>(M);
}

std::vector<double> SubsampleTupleDistribution(const DiscreteDistribution& d,
                                               uint64_t m, uint64_t M) {
  CheckExactLimits(d, m, M);
  const std::size_t size = d.domain().size();
  std::vector<double> out(static_cast<std::size_t>(TupleCount(size, m)), 0.0);
  const double log_mm = static_cast<double>(m) * std::log(static_cast<double>(M));
  ForEachSetPartition(m, [&](std::span<const std::size_t> labels,
                             std::size_t blocks) {
    // P[index pattern] = M (M-1) ... (M-blocks+1) / M^m.
    double log_p = -log_mm;
    for (std::size_t b = 0; b < blocks; ++b) {
      log_p += std::log(static_cast<double>(M - b));
    }
    const double pattern = std::exp(log_p);
    ForEachTuple(size, blocks, [&](std::span<const uint32_t> values) {
      double p = pattern;
      for (uint32_t v : values) p *= d[v];
      if (p == 0.0) return;
      std::size_t index = 0;
      for (std::size_t pos = 0; pos < m; ++pos) index = index * size + values[labels[pos]];
      out[index] += p;
    });
  });
  return out;
}

double ExactSubsampleTv(const DiscreteDistribution& d, uint64_t m, uint64_t M) {
  const std::vector<double> filtered = SubsampleTupleDistribution(d, m, M);
  const std::size_t size = d.domain().size();
  double total = 0.0;
  std::size_t index = 0;
  ForEachTuple(size, m, [&](std::span<const uint32_t> tuple) {
    double p = 1.0;
    for (uint32_t x : tuple) p *= d[x];
    total += std::abs(p - filtered[index++]);
  });
  return 0.5 * total;
}

TvBoundReport TvBoundCheck(const DiscreteDistribution& d, uint64_t m,
                           uint64_t M, uint64_t trials, uint64_t seed,
                           bool exact) {
  if (trials == 0) throw std::invalid_argument("TvBoundCheck: no trials");
  std::vector<char> differ(trials, 0);
  std::vector<char> collided(trials, 0);
  ParallelFor(trials, [&](std::size_t t) {
    RandomSource rng(seed, t);
    const CoupledDraw draw = CoupledPair(d, m, M, rng);
    differ[t] = draw.Differ() ? 1 : 0;
    collided[t] = draw.collided ? 1 : 0;
  });
  TvBoundReport r;
  r.m = m;
  r.M = M;
  r.bound = CouplingBound(m, M);
  r.trials = trials;
  r.seed = seed;
  for (uint64_t t = 0; t < trials; ++t) {
    r.differ += static_cast<uint64_t>(differ[t]);
    r.collisions += static_cast<uint64_t>(collided[t]);
  }
  const double n = static_cast<double>(trials);
  r.empirical_neq_rate = static_cast<double>(r.differ) / n;
  r.collision_rate = static_cast<double>(r.collisions) / n;
  r.standard_error =
      std::sqrt(r.empirical_neq_rate * (1.0 - r.empirical_neq_rate) / n);
  if (exact) r.exact_tv = ExactSubsampleTv(d, m, M);
  return r;
}

}  // namespace advlab
