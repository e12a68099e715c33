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

// Brute-force reference computations used only by tests. They avoid the
// library code paths they are compared against.

#ifndef ADVLAB_TESTS_ORACLES_H_
#define ADVLAB_TESTS_ORACLES_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "advlab/distribution.h"
#include "advlab/linear_program.h"
#include "advlab/noise_model.h"
#include "advlab/statistical_query.h"

namespace advlab::oracle {

// Index of a tuple in base-|X| order, first coordinate most significant.
uint64_t TupleIndex(std::span<const uint32_t> tuple, std::size_t domain_size);

// P[(x_1..x_m)] for x ~ d^m.
std::vector<double> ProductTuples(const DiscreteDistribution& d, uint64_t m);

// Draw Y ~ d^M, then m indices uniformly from [M] with replacement; the law
// of (Y_{i_1}, ..., Y_{i_m}). Enumerates |X|^M * M^m outcomes.
std::vector<double> SubsetTuples(const DiscreteDistribution& d, uint64_t m,
                                 uint64_t M);

double HalfL1(std::span<const double> p, std::span<const double> q);

// Smallest eta on a grid of step h such that dhat - (1 - eta) d >= 0.
double AdditiveCostByGrid(const DiscreteDistribution& d,
                          const DiscreteDistribution& dhat, double h);

// Every count vector over the domain with the given total.
std::vector<std::vector<uint64_t>> AllCountVectors(std::size_t domain_size,
                                                   uint64_t total);

// All samples reachable from `counts` under the model's integer budget,
// as dense count vectors. Supports additive, subtractive and nasty.
std::vector<std::vector<uint64_t>> AllCorruptions(const NoiseModel& model,
                                                  std::span<const uint64_t> counts);

double EmpiricalMean(const StatisticalQuery& psi, std::span<const uint64_t> counts);

// Maximizes c.x subject to rows a.x <= b over x >= 0 in two variables by
// enumerating pairwise intersections. Returns nullopt-like {false, 0}.
struct Lp2dResult {
  bool feasible = false;
  double value = 0.0;
};
Lp2dResult Maximize2d(std::span<const double> c,
                      const std::vector<std::vector<double>>& a,
                      std::span<const double> b);

// Acceptance probability of a deterministic decision rule on n iid draws
// from q, by enumerating all |X|^n tuples.
double IidAcceptance(const std::function<bool(std::span<const uint32_t>)>& decide,
                     std::span<const double> q, std::size_t n);

// Truth-table algorithm on |X| = 2, n = 2: bit (2 x1 + x2) of `table`.
bool TruthTable2x2(uint64_t table, uint32_t x1, uint32_t x2);

// For |X| = 2, n = 2: max and min over appended multisets of size <= C of
// the A_sub acceptance, averaged over S ~ Bernoulli(p)^M.
struct AdaptivePair {
  double max = 0.0;
  double min = 0.0;
};
AdaptivePair AdaptiveAdditive2x2(uint64_t table, double p, uint64_t M, double eta);

// sup and inf over E = Bernoulli(e) on a grid of `steps` + 1 values of the
// acceptance of the 2x2 table algorithm under (1 - eta) Bern(p) + eta E.
AdaptivePair ObliviousAdditive2x2(uint64_t table, double p, double eta, uint64_t steps);

// tv(f o d1, f o d2) against tv(d1, d2) in exact rational arithmetic over
// the stored double weights; rows[x][y] is the probability of y given x.
struct ExactContraction {
  bool holds = false;
  double pushed = 0.0;
  double original = 0.0;
};
ExactContraction ExactTvContraction(const std::vector<std::vector<double>>& rows,
                                    std::span<const double> d1, std::span<const double> d2);

}  // namespace advlab::oracle

#endif  // ADVLAB_TESTS_ORACLES_H_
