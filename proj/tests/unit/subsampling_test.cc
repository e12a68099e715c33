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

#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <set>

#include "oracles.h"

namespace advlab {
namespace {

TEST(Subsample, SingletonAndDeterminism) {
  const Domain dom(3);
  SampleMultiset one(dom);
  one.Add(2);
  RandomSource rng(61, 0);
  const auto out = Subsample(one, 7, rng);
  EXPECT_EQ(out.Multiplicity(2), 7u);
  EXPECT_EQ(out.size(), 7u);
  SampleMultiset s(dom);
  s.Add(0, 3);
  s.Add(1, 4);
  RandomSource a(62, 1), b(62, 1);
  EXPECT_EQ(Subsample(s, 20, a), Subsample(s, 20, b));
  EXPECT_THROW(Subsample(SampleMultiset(dom), 3, a), std::invalid_argument);
}

TEST(Subsample, OccupancyExpectation) {
  const uint64_t n = 20;
  std::vector<uint32_t> distinct(n);
  for (uint32_t i = 0; i < n; ++i) distinct[i] = i;
  RandomSource rng(63, 0);
  const int trials = 20000;
  double total = 0.0, sq = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto out = SubsampleSequence<uint32_t>(distinct, n, rng);
    const double k = static_cast<double>(std::set<uint32_t>(out.begin(), out.end()).size());
    total += k;
    sq += k * k;
  }
  const double mean = total / trials;
  const double sd = std::sqrt(sq / trials - mean * mean);
  const double expected = n * (1 - std::pow(1 - 1.0 / n, static_cast<double>(n)));
  EXPECT_NEAR(mean, expected, 3 * sd / std::sqrt(trials * 1.0));
}

TEST(Coupling, SingleDrawNeverCollides) {
  const auto d = DiscreteDistribution::Uniform(Domain(5));
  RandomSource rng(64, 0);
  for (int i = 0; i < 1000; ++i) {
    const auto c = CoupledPair(d, 1, 10, rng);
    EXPECT_FALSE(c.collided);
    EXPECT_EQ(c.clean, c.filtered);
  }
}

TEST(Coupling, CollisionProbabilityOneOverM) {
  // Exhaustive over the 16 index pairs of two draws from [4].
  int collisions = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) collisions += (i == j);
  }
  EXPECT_EQ(collisions, 4);
  const auto d = DiscreteDistribution::Bernoulli(0.5);
  const int trials = 100000;
  int hits = 0;
  for (int t = 0; t < trials; ++t) {
    RandomSource rng(65, t);
    const auto c = CoupledPair(d, 2, 4, rng);
    hits += c.collided;
    if (!c.collided) {
      EXPECT_FALSE(c.Differ());
    }
  }
  const double sigma = std::sqrt(0.25 * 0.75 / trials);
  EXPECT_NEAR(static_cast<double>(hits) / trials, 0.25, 3 * sigma);
}

TEST(Coupling, BoundFormula) {
  EXPECT_DOUBLE_EQ(CouplingBound(5, 1000), 0.01);
  EXPECT_DOUBLE_EQ(CouplingBound(2, 4), 0.25);
  EXPECT_DOUBLE_EQ(CouplingBound(1, 4), 0.0);
}

TEST(Coupling, DifferRateBelowBound) {
  const auto r = TvBoundCheck(DiscreteDistribution::Uniform(Domain(50)), 5, 1000, 100000, 66,
                              false);
  EXPECT_LE(r.differ, r.collisions);
  EXPECT_LE(r.empirical_neq_rate, r.bound + 3 * std::sqrt(r.bound * (1 - r.bound) / r.trials));
}

TEST(ExactTv, MatchesEnumerationOracle) {
  RandomSource rng(67, 0);
  for (uint64_t size : {2, 3}) {
    for (uint64_t m : {1, 2, 3}) {
      for (uint64_t M : {m, m + 1, m + 3}) {
        const auto d = RandomDistribution(Domain(size), rng);
        const auto ref = oracle::SubsetTuples(d, m, M);
        const auto got = SubsampleTupleDistribution(d, m, M);
        ASSERT_EQ(got.size(), ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(got[i], ref[i], 1e-12);
        const double tv = oracle::HalfL1(oracle::ProductTuples(d, m), ref);
        EXPECT_NEAR(ExactSubsampleTv(d, m, M), tv, 1e-12);
        EXPECT_LE(tv, CouplingBound(m, M) + 1e-12);
      }
    }
  }
}

TEST(ExactTv, PairsBelowOneOverM) {
  for (double p : {0.1, 0.5, 0.9}) {
    for (uint64_t M : {2, 3, 5, 10}) {
      const double tv = ExactSubsampleTv(DiscreteDistribution::Bernoulli(p), 2, M);
      EXPECT_LE(tv, 1.0 / M + 1e-12);
    }
  }
  EXPECT_LE(ExactSubsampleTv(DiscreteDistribution::Bernoulli(0.5), 2, 3), 1.0 / 3);
}

TEST(ExactTv, BelowCollisionFrequency) {
  const auto r = TvBoundCheck(DiscreteDistribution::Bernoulli(0.4), 3, 5, 50000, 68, true);
  ASSERT_TRUE(r.exact_tv.has_value());
  const double sigma = std::sqrt(r.collision_rate * (1 - r.collision_rate) / r.trials);
  EXPECT_LE(*r.exact_tv, r.collision_rate + 3 * sigma);
}

double ChiSquarePValue(const std::vector<uint64_t>& observed, const std::vector<double>& p,
                       uint64_t trials) {
  double stat = 0.0;
  int cells = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) {
      EXPECT_EQ(observed[i], 0u);
      continue;
    }
    const double e = p[i] * static_cast<double>(trials);
    stat += (observed[i] - e) * (observed[i] - e) / e;
    ++cells;
  }
  boost::math::chi_squared dist(cells - 1);
  return boost::math::cdf(boost::math::complement(dist, stat));
}

TEST(Coupling, MarginalsPassChiSquare) {
  const auto d = DiscreteDistribution(Domain(3), {0.5, 0.3, 0.2});
  const uint64_t m = 3, M = 4, trials = 100000;
  std::vector<uint64_t> clean(27, 0), filtered(27, 0);
  for (uint64_t t = 0; t < trials; ++t) {
    RandomSource rng(69, t);
    const auto c = CoupledPair(d, m, M, rng);
    ++clean[oracle::TupleIndex(c.clean, 3)];
    ++filtered[oracle::TupleIndex(c.filtered, 3)];
  }
  EXPECT_GT(ChiSquarePValue(clean, oracle::ProductTuples(d, m), trials), 1e-3);
  EXPECT_GT(ChiSquarePValue(filtered, oracle::SubsetTuples(d, m, M), trials), 1e-3);
}

}  // namespace
}  // namespace advlab
