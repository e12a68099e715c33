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

#include "advlab/combinatorics.h"

#include <cmath>
#include <algorithm>
#include <stdexcept>

namespace advlab {
namespace {

void MultisetRecurse(std::vector<uint64_t>& counts, std::size_t slot,
                     uint64_t remaining,
                     const std::function<void(std::span<const uint64_t>)>& fn) {
  if (slot + 1 == counts.size()) {
    counts[slot] = remaining;
    fn(counts);
    return;
  }
  for (uint64_t c = remaining + 1; c-- > 0;) {
    counts[slot] = c;
    MultisetRecurse(counts, slot + 1, remaining - c, fn);
  }
}

}  // namespace

void ForEachMultiset(std::size_t domain_size, uint64_t size,
                     const std::function<void(std::span<const uint64_t>)>& fn) {
  if (domain_size == 0) throw std::invalid_argument("ForEachMultiset: empty domain");
  std::vector<uint64_t> counts(domain_size, 0);
  MultisetRecurse(counts, 0, size, fn);
}

void ForEachTuple(std::size_t domain_size, std::size_t length,
                  const std::function<void(std::span<const uint32_t>)>& fn) {
  if (domain_size == 0) throw std::invalid_argument("ForEachTuple: empty domain");
  std::vector<uint32_t> tuple(length, 0);
  while (true) {
    fn(tuple);
    std::size_t i = length;
    while (i > 0) {
      --i;
      if (++tuple[i] < domain_size) break;
      tuple[i] = 0;
      if (i == 0) return;
    }
    if (length == 0) return;
  }
}

double MultisetCount(std::size_t domain_size, uint64_t size) {
  return BinomialCoefficient(size + domain_size - 1, domain_size - 1);
}

double TupleCount(std::size_t domain_size, std::size_t length) {
  return std::pow(static_cast<double>(domain_size),
                  static_cast<double>(length));
}

double MultinomialProbability(std::span<const uint64_t> counts,
                              std::span<const double> weights) {
  if (counts.size() != weights.size()) {
    throw std::invalid_argument("MultinomialProbability: size mismatch");
  }
  uint64_t n = 0;
  double log_p = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    if (weights[i] <= 0.0) return 0.0;
    n += counts[i];
    log_p += static_cast<double>(counts[i]) * std::log(weights[i]) -
             std::lgamma(static_cast<double>(counts[i]) + 1.0);
  }
  log_p += std::lgamma(static_cast<double>(n) + 1.0);
  return std::exp(log_p);
}

double BinomialCoefficient(uint64_t n, uint64_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double result = 1.0;
  for (uint64_t i = 1; i <= k; ++i) {
    result = result * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  // Exact integers below 2^53 survive the division chain up to rounding.
  return result < 9.0e15 ? std::round(result) : result;
}

}  // namespace advlab
