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

#include "advlab/adversaries.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.h"

namespace advlab {
namespace {

SampleMultiset FromDense(const std::vector<uint64_t>& c) {
  return SampleMultiset::FromCounts(Domain(c.size()), c);
}

TEST(SingleQueryAttack, AdditiveExamples) {
  const Domain dom(2);
  const StatisticalQuery indicator_b = StatisticalQuery::Indicator(dom, 1, 0.1);
  SampleMultiset nine(dom);
  nine.Add(0, 9);
  const auto out = AdditiveSingleQueryAttack(nine, 0.1, indicator_b, Direction::kMax);
  EXPECT_EQ(out.Multiplicity(1), 1u);
  EXPECT_DOUBLE_EQ(indicator_b.Eval(out), 0.1);

  SampleMultiset ten(dom);
  ten.Add(0, 10);
  const auto out2 = AdditiveSingleQueryAttack(ten, 0.2, indicator_b, Direction::kMax);
  EXPECT_EQ(out2.Multiplicity(1), 2u);
  EXPECT_NEAR(indicator_b.Eval(out2), 2.0 / 12, 1e-15);
}

TEST(SingleQueryAttack, OptimalAgainstEnumeration) {
  RandomSource rng(41, 0);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t size = 2 + rng.UniformInt(2);
    std::vector<double> values(size);
    for (auto& v : values) v = std::round((rng.Uniform01() * 2 - 1) * 4) / 4;
    const StatisticalQuery psi(values, 0.1);
    std::vector<uint64_t> counts(size, 0);
    const uint64_t n = 3 + rng.UniformInt(8);
    for (uint64_t i = 0; i < n; ++i) ++counts[rng.UniformInt(size)];
    const auto s = FromDense(counts);
    const double eta = 0.1 + 0.3 * rng.Uniform01();
    for (auto model : {NoiseModel::Additive(eta), NoiseModel::Subtractive(eta),
                       NoiseModel::Nasty(eta)}) {
      double best_max = -2, best_min = 2;
      for (const auto& c : oracle::AllCorruptions(model, counts)) {
        if (std::all_of(c.begin(), c.end(), [](uint64_t x) { return x == 0; })) continue;
        best_max = std::max(best_max, oracle::EmpiricalMean(psi, c));
        best_min = std::min(best_min, oracle::EmpiricalMean(psi, c));
      }
      RandomSource unused(0, 0);
      const auto hi = SingleQueryAttack(psi, Direction::kMax)(s, model, unused);
      const auto lo = SingleQueryAttack(psi, Direction::kMin)(s, model, unused);
      EXPECT_TRUE(model.AdaptiveFeasible(s, hi)) << model.DebugString();
      EXPECT_TRUE(model.AdaptiveFeasible(s, lo)) << model.DebugString();
      EXPECT_NEAR(psi.Eval(hi), best_max, 1e-12) << model.DebugString() << " " << s.DebugString();
      EXPECT_NEAR(psi.Eval(lo), best_min, 1e-12) << model.DebugString() << " " << s.DebugString();
    }
  }
}

TEST(Strategies, AlwaysFeasible) {
  RandomSource rng(42, 0);
  const std::vector<NoiseModel> models{
      NoiseModel::Additive(0.2), NoiseModel::Subtractive(0.2), NoiseModel::Nasty(0.2),
      NoiseModel::NastyClassification(0.2, 2)};
  for (int trial = 0; trial < 200; ++trial) {
    const Domain dom(4);
    const auto s = SampleIid(RandomDistribution(dom, rng), 1 + rng.UniformInt(30), rng);
    const StatisticalQuery psi({0.5, -1.0, 1.0, 0.0}, 0.1);
    const Element target = static_cast<Element>(rng.UniformInt(4));
    for (const auto& model : models) {
      for (const auto& attack :
           {IdentityAttack(), PointMassAttack(target), RandomFeasibleAttack(),
            SingleQueryAttack(psi, Direction::kMax), SingleQueryAttack(psi, Direction::kMin)}) {
        const auto out = attack(s, model, rng);
        EXPECT_TRUE(model.AdaptiveFeasible(s, out)) << model.DebugString();
      }
    }
  }
}

TEST(Strategies, MaliciousFillsEmptySlots) {
  const auto model = NoiseModel::MaliciousEncoded(0.3);
  SampleMultiset s(Domain(3));
  s.Add(0, 5);
  s.Add(2, 3);  // id 2 is the empty symbol
  RandomSource rng(43, 0);
  const auto out = PointMassAttack(1)(s, model, rng);
  EXPECT_EQ(out.Multiplicity(2), 0u);
  EXPECT_EQ(out.Multiplicity(1), 3u);
  EXPECT_TRUE(model.AdaptiveFeasible(s, out));
}

TEST(Strategies, NamedAttacks) {
  EXPECT_NO_THROW(NamedAttack("identity"));
  EXPECT_NO_THROW(NamedAttack("nasty_swap", 1));
  EXPECT_THROW(NamedAttack("cluster_majority"), std::invalid_argument);
  EXPECT_THROW(NamedAttack("bogus"), std::invalid_argument);
}

TEST(ObliviousPointMass, WithinBudget) {
  RandomSource rng(44, 0);
  for (int i = 0; i < 200; ++i) {
    const auto d = RandomDistribution(Domain(4), rng, 0.3);
    const double eta = 0.05 + 0.4 * rng.Uniform01();
    const Element t = static_cast<Element>(rng.UniformInt(4));
    for (auto model : {NoiseModel::Additive(eta), NoiseModel::Nasty(eta),
                       NoiseModel::Subtractive(eta), NoiseModel::NastyClassification(eta, 2)}) {
      const auto dhat = ObliviousPointMass(d, model, t);
      EXPECT_LE(model.Cost(d, dhat), eta + 1e-9) << model.DebugString();
      EXPECT_GE(dhat[t], d[t] - 1e-12);
    }
  }
}

TEST(StrongAdaptive, MeanPerturbationAndTail) {
  const uint64_t n = 400;
  const double c = 0.5;
  const auto strong = StrongAdaptiveWrap(IdentityAttack(), n, c);
  EXPECT_NEAR(strong.resample_probability(), c / std::sqrt(static_cast<double>(n)), 1e-15);
  const auto d = DiscreteDistribution::Uniform(Domain(16));
  const int trials = 4000;
  std::vector<double> tv(trials);
  for (int i = 0; i < trials; ++i) {
    RandomSource rng(45, i);
    const auto s = SampleIid(d, n, rng);
    const auto out = strong.Run(s, NoiseModel::Nasty(0.1), rng);
    tv[i] = TvDistance(UniformOf(out.first_stage), UniformOf(out.second_stage));
  }
  double mean = 0, sq = 0;
  for (double v : tv) {
    mean += v;
    sq += v * v;
  }
  mean /= trials;
  const double sd = std::sqrt(std::max(0.0, sq / trials - mean * mean));
  EXPECT_LE(mean, c / std::sqrt(static_cast<double>(n)) + 3 * sd / std::sqrt(trials * 1.0));
  // The resample count is binomial, so Hoeffding bounds the tail above p.
  const double p = strong.resample_probability();
  for (double extra : {0.5, 1.0, 2.0}) {
    const double t = p + extra / std::sqrt(static_cast<double>(n));
    const double rate =
        static_cast<double>(std::count_if(tv.begin(), tv.end(), [&](double v) { return v >= t; })) /
        trials;
    const double bound = std::exp(-2.0 * n * (t - p) * (t - p));
    EXPECT_LE(rate, bound + 3 * std::sqrt(bound * (1 - bound) / trials) + 1e-12) << "t=" << t;
  }
}

TEST(StrongAdaptive, Validation) {
  EXPECT_THROW(StrongAdaptiveWrap(IdentityAttack(), 10, 0.0), std::invalid_argument);
}

}  // namespace
}  // namespace advlab
