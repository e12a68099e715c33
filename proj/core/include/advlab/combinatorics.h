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

// Enumeration helpers for the exact (micro-instance) code paths.

#ifndef ADVLAB_COMBINATORICS_H_
#define ADVLAB_COMBINATORICS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace advlab {

// Calls fn(counts) for every vector of `domain_size` non-negative counts
// summing to `size`, in lexicographic order of counts (largest first in
// slot 0).
void ForEachMultiset(std::size_t domain_size, uint64_t size,
                     const std::function<void(std::span<const uint64_t>)>& fn);

// Calls fn(tuple) for every element of {0..domain_size-1}^length in
// lexicographic order.
void ForEachTuple(std::size_t domain_size, std::size_t length,
                  const std::function<void(std::span<const uint32_t>)>& fn);

// Number of multisets of the given size over the domain: C(size+d-1, d-1).
double MultisetCount(std::size_t domain_size, uint64_t size);

// domain_size^length as a double (saturates to +inf).
double TupleCount(std::size_t domain_size, std::size_t length);

// Probability that n iid draws from `weights` produce exactly `counts`.
double MultinomialProbability(std::span<const uint64_t> counts,
                              std::span<const double> weights);

double BinomialCoefficient(uint64_t n, uint64_t k);

}  // namespace advlab

#endif  // ADVLAB_COMBINATORICS_H_
