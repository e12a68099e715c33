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

#include "advlab/noise_model.h"

#include <gtest/gtest.h>

#include <cmath>

#include "advlab/adversaries.h"
#include "advlab/combinatorics.h"
#include "oracles.h"

namespace advlab {
namespace {

const Domain kAB(2);

TEST(NoiseKind, NamesRoundTrip) {
  for (auto k : {NoiseKind::kAdditive, NoiseKind::kSubtractive, NoiseKind::kNasty,
                 NoiseKind::kNastyClassification, NoiseKind::kMaliciousEncoded}) {
    EXPECT_EQ(ParseNoiseKind(NoiseKindName(k)), k);
  }
  EXPECT_THROW(ParseNoiseKind("gaussian"), std::invalid_argument);
  EXPECT_THROW(NoiseModel::Additive(1.0), std::invalid_argument);
  EXPECT_THROW(NoiseModel::NastyClassification(0.1, 0), std::invalid_argument);
}

TEST(Cost, AdditivePointMassExample) {
  const auto d = DiscreteDistribution::PointMass(kAB, 0);
  const DiscreteDistribution dhat(kAB, {0.9, 0.1});
  EXPECT_NEAR(AdditiveCost(d, dhat), 0.1, 1e-12);
  EXPECT_NEAR(oracle::AdditiveCostByGrid(d, dhat, 1e-4), 0.1, 1e-4);
}

TEST(Cost, AdditiveMatchesGridOracle) {
  RandomSource rng(31, 0);
  for (int i = 0; i < 100; ++i) {
    const Domain dom(2 + rng.UniformInt(4));
    const auto d = RandomDistribution(dom, rng, 0.2);
    const auto dhat = Mixture(1 - 0.5 * rng.Uniform01(), d, RandomDistribution(dom, rng, 0.3));
    EXPECT_NEAR(AdditiveCost(d, dhat), oracle::AdditiveCostByGrid(d, dhat, 1e-4), 1.01e-4);
  }
}

TEST(Cost, ZeroOnIdenticalInputs) {
  RandomSource rng(32, 0);
  const auto d = RandomDistribution(Domain(4), rng);
  for (auto model : {NoiseModel::Additive(0.1), NoiseModel::Subtractive(0.1),
                     NoiseModel::Nasty(0.1), NoiseModel::NastyClassification(0.1, 2)}) {
    EXPECT_EQ(model.Cost(d, d), 0.0) << model.DebugString();
  }
  // The encoded clean distribution carries mass on the empty symbol.
  const auto enc = EncodeMalicious(DiscreteDistribution::Uniform(Domain(3)), 0.2);
  EXPECT_EQ(MaliciousCost(enc, enc), kInfiniteCost);
}

TEST(Cost, ClassificationNeedsEqualMarginals) {
  // Domain {x0, x1} x {y0, y1}.
  const DiscreteDistribution d(Domain(4), {0.25, 0.25, 0.25, 0.25});
  const DiscreteDistribution relabel(Domain(4), {0.5, 0.0, 0.0, 0.5});
  const DiscreteDistribution moved(Domain(4), {0.5, 0.25, 0.0, 0.25});
  EXPECT_NEAR(NastyClassificationCost(d, relabel, 2), 0.5, 1e-12);
  EXPECT_EQ(NastyClassificationCost(d, moved, 2), kInfiniteCost);
}

TEST(Cost, SubtractiveIsSwappedAdditive) {
  RandomSource rng(33, 0);
  for (int i = 0; i < 1000; ++i) {
    const Domain dom(1 + rng.UniformInt(6));
    const auto a = RandomDistribution(dom, rng, 0.2);
    const auto b = RandomDistribution(dom, rng, 0.2);
    EXPECT_EQ(SubtractiveCost(a, b), AdditiveCost(b, a));
  }
}

TEST(Cost, AdditiveLocalityByGridSearch) {
  // For Dhat = (1 - eta) D + eta F, look for Ehat on a grid with
  // tv(Dhat, Ehat) <= tv(D, E) and cost(E, Ehat) <= cost(D, Dhat).
  RandomSource rng(34, 0);
  for (int i = 0; i < 40; ++i) {
    const std::size_t size = 2 + rng.UniformInt(4);
    const Domain dom(size);
    const auto d = RandomDistribution(dom, rng);
    const auto e = RandomDistribution(dom, rng);
    const auto grid = oracle::AllCountVectors(size, 10);
    const auto& f_counts = grid[rng.UniformInt(grid.size())];
    std::vector<double> f_w(f_counts.begin(), f_counts.end());
    const auto f = DiscreteDistribution::FromUnnormalized(dom, f_w);
    const double eta = 0.05 + 0.3 * rng.Uniform01();
    const auto dhat = Mixture(1 - eta, d, f);
    const double budget = AdditiveCost(d, dhat);
    bool found = false;
    for (int step = 0; step <= 20 && !found; ++step) {
      const double eta2 = budget * step / 20.0;
      for (const auto& g_counts : grid) {
        std::vector<double> g_w(g_counts.begin(), g_counts.end());
        const auto ehat = Mixture(1 - eta2, e, DiscreteDistribution::FromUnnormalized(dom, g_w));
        if (TvDistance(dhat, ehat) <= TvDistance(d, e) + 1e-12 &&
            AdditiveCost(e, ehat) <= budget + 1e-12) {
          found = true;
          break;
        }
      }
    }
    EXPECT_TRUE(found) << "instance " << i;
  }
}

TEST(Cost, MaliciousFeasibleSetIsAdditiveMixtures) {
  // X = {0, 1}, encoded domain {0, 1, empty}; grid over the encoded simplex.
  const double eta = 0.25;
  const DiscreteDistribution d(kAB, {0.6, 0.4});
  const auto enc = EncodeMalicious(d, eta);
  for (const auto& c : oracle::AllCountVectors(3, 40)) {
    const DiscreteDistribution dhat(Domain(3), {c[0] / 40.0, c[1] / 40.0, c[2] / 40.0});
    const bool finite = std::isfinite(MaliciousCost(enc, dhat));
    // (dhat - (1 - eta) d) / eta must be a distribution on X.
    const double e0 = (dhat[0] - (1 - eta) * d[0]) / eta;
    const double e1 = (dhat[1] - (1 - eta) * d[1]) / eta;
    const bool mixture = dhat[2] == 0.0 && e0 >= -1e-12 && e1 >= -1e-12;
    EXPECT_EQ(finite, mixture) << c[0] << "," << c[1] << "," << c[2];
  }
}

TEST(AdaptiveFeasible, Examples) {
  SampleMultiset s(Domain(3));
  s.Add(0, 100);
  for (auto model : {NoiseModel::Additive(0.1), NoiseModel::Subtractive(0.1),
                     NoiseModel::Nasty(0.1)}) {
    EXPECT_TRUE(model.AdaptiveFeasible(s, s));
  }
  auto plus11 = s;
  plus11.Add(1, 6);
  plus11.Add(2, 5);
  EXPECT_TRUE(NoiseModel::Additive(0.1).AdaptiveFeasible(s, plus11));
  EXPECT_EQ(NoiseModel::Additive(0.1).AdditiveBudget(100), 11u);
  auto plus12 = plus11;
  plus12.Add(2);
  EXPECT_FALSE(NoiseModel::Additive(0.1).AdaptiveFeasible(s, plus12));

  SampleMultiset ten(Domain(3));
  ten.Add(0, 10);
  SampleMultiset two_changed(Domain(3));
  two_changed.Add(0, 8);
  two_changed.Add(1, 2);
  EXPECT_FALSE(NoiseModel::Nasty(0.1).AdaptiveFeasible(ten, two_changed));
  EXPECT_FALSE(NoiseModel::Nasty(0.1).AdaptiveFeasible(ten, SampleMultiset(Domain(3))));
  EXPECT_THROW(NoiseModel::Nasty(0.1).AdaptiveFeasible(SampleMultiset(Domain(3)), ten),
               std::invalid_argument);
}

TEST(Budgets, FloorsWithSlack) {
  EXPECT_EQ(NoiseModel::Additive(1.0 / 3).AdditiveBudget(2), 1u);
  EXPECT_EQ(NoiseModel::Additive(0.5).AdditiveBudget(7), 7u);
  EXPECT_EQ(NoiseModel::Nasty(0.3).ReplacementBudget(10), 3u);
  EXPECT_EQ(NoiseModel::Nasty(0.1).ReplacementBudget(9), 0u);
}

TEST(MixtureClosure, TrivialTuple) {
  RandomSource rng(35, 0);
  const auto d = RandomDistribution(Domain(3), rng);
  for (auto model : {NoiseModel::Additive(0.2), NoiseModel::Nasty(0.2)}) {
    EXPECT_EQ(model.Cost(Mixture(0.3, d, d), Mixture(0.3, d, d)), 0.0);
  }
}

TEST(MixtureClosure, NoViolationsForNastyAndAdditive) {
  for (auto model : {NoiseModel::Nasty(0.2), NoiseModel::Additive(0.2)}) {
    RandomSource rng(36, 0);
    const auto rep = VerifyClosedUnderMixtures(model, 6, 100000, rng);
    EXPECT_EQ(rep.violations, 0u) << model.DebugString();
    EXPECT_GT(rep.finite_trials, 50000u);
  }
}

TEST(Lift, IdentityGivesD) {
  const DiscreteDistribution d(Domain(3), {0.2, 0.3, 0.5});
  const auto r = LiftAdaptiveToOblivious(NoiseModel::Nasty(0.2), d, 3, IdentityAttack(), 1);
  EXPECT_TRUE(r.exact);
  EXPECT_TRUE(r.dhat.ApproxEquals(d, 1e-12));
  EXPECT_NEAR(r.cost, 0.0, 1e-12);
}

TEST(Lift, AppendFixedPointMatchesEnumeration) {
  const double eta = 1.0 / 3;
  const DiscreteDistribution d(kAB, {0.7, 0.3});
  AdaptiveStrategy append_b = [](const SampleMultiset& s, const NoiseModel&, RandomSource&) {
    auto out = s;
    out.Add(1);
    return out;
  };
  const auto r = LiftAdaptiveToOblivious(NoiseModel::Additive(eta), d, 2, append_b, 1);
  // Hand enumeration of the 4 ordered samples: U(S + b) puts 2/3 of its
  // mass on S and 1/3 on b.
  double p1 = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      p1 += d[a] * d[b] * (a + b + 1) / 3.0;
    }
  }
  EXPECT_NEAR(r.dhat[1], p1, 1e-12);
  EXPECT_TRUE(r.dhat.ApproxEquals(
      Mixture(2.0 / 3, d, DiscreteDistribution::PointMass(kAB, 1)), 1e-12));
  EXPECT_LE(r.cost, eta + 1e-12);
}

TEST(Lift, InfeasibleAttackThrows) {
  AdaptiveStrategy too_many = [](const SampleMultiset& s, const NoiseModel&, RandomSource&) {
    auto out = s;
    out.Add(1, 10);
    return out;
  };
  EXPECT_THROW(LiftAdaptiveToOblivious(NoiseModel::Additive(0.1),
                                       DiscreteDistribution::Uniform(kAB), 2, too_many, 1),
               std::runtime_error);
}

TEST(Lift, MonteCarloAgreesWithExact) {
  const DiscreteDistribution d(Domain(3), {0.5, 0.3, 0.2});
  const auto model = NoiseModel::Nasty(0.34);
  const auto exact = LiftAdaptiveToOblivious(model, d, 3, PointMassAttack(2), 4);
  const auto mc = LiftAdaptiveToObliviousMonteCarlo(model, d, 3, PointMassAttack(2), 40000, 4);
  EXPECT_FALSE(mc.exact);
  EXPECT_LT(TvDistance(exact.dhat, mc.dhat), 0.02);
}

}  // namespace
}  // namespace advlab
