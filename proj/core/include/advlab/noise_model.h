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

// Cost functions with budgets, feasibility predicates and the brute-force
// closure and lifting checks.

#ifndef ADVLAB_NOISE_MODEL_H_
#define ADVLAB_NOISE_MODEL_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <string_view>

#include "advlab/distribution.h"
#include "advlab/random.h"

namespace advlab {

inline constexpr double kInfiniteCost = std::numeric_limits<double>::infinity();

// Slack used when comparing a cost against its budget.
inline constexpr double kBudgetSlack = 1e-12;

enum class NoiseKind {
  kAdditive,
  kSubtractive,
  kNasty,
  kNastyClassification,
  kMaliciousEncoded,
};

std::string_view NoiseKindName(NoiseKind kind);
NoiseKind ParseNoiseKind(std::string_view name);

// A cost function rho together with a budget eta in [0, 1).
//
// NastyClassification works on a product domain X x Y where element
// x * label_count + y encodes (x, y). MaliciousEncoded works on X u {empty}
// where the empty symbol is the last element id.
class NoiseModel {
 public:
  static NoiseModel Additive(double eta);
  static NoiseModel Subtractive(double eta);
  static NoiseModel Nasty(double eta);
  static NoiseModel NastyClassification(double eta, std::size_t label_count);
  static NoiseModel MaliciousEncoded(double eta);
  static NoiseModel Make(NoiseKind kind, double eta, std::size_t label_count = 0);

  NoiseKind kind() const { return kind_; }
  double eta() const { return eta_; }
  std::size_t label_count() const { return label_count_; }

  // 1, except 1 / (1 - eta) for subtractive noise.
  double locality() const;

  // rho(d, dhat); may be kInfiniteCost.
  double Cost(const DiscreteDistribution& d,
              const DiscreteDistribution& dhat) const;

  bool ObliviousFeasible(const DiscreteDistribution& d,
                         const DiscreteDistribution& dhat) const;

  // rho(U(s), U(shat)) <= eta + kBudgetSlack. Throws on an empty s; an empty
  // shat is never feasible.
  bool AdaptiveFeasible(const SampleMultiset& s,
                        const SampleMultiset& shat) const;

  // floor(n * eta / (1 - eta)): points an additive adversary may append.
  uint64_t AdditiveBudget(uint64_t n) const;
  // floor(eta * n): points a nasty adversary may replace or a subtractive
  // adversary may remove.
  uint64_t ReplacementBudget(uint64_t n) const;
  // The random-budget variant: Binomial(n, eta) changes.
  uint64_t RandomBudget(uint64_t n, RandomSource& rng) const;

  std::string DebugString() const;

  friend bool operator==(const NoiseModel&, const NoiseModel&) = default;

 private:
  NoiseModel(NoiseKind kind, double eta, std::size_t label_count);

  NoiseKind kind_;
  double eta_;
  std::size_t label_count_;
};

// The individual cost functions.
double AdditiveCost(const DiscreteDistribution& d,
                    const DiscreteDistribution& dhat);
double SubtractiveCost(const DiscreteDistribution& d,
                       const DiscreteDistribution& dhat);
double NastyClassificationCost(const DiscreteDistribution& d,
                               const DiscreteDistribution& dhat,
                               std::size_t label_count);
// d_enc and dhat_enc live on the augmented domain; the last id is empty.
double MaliciousCost(const DiscreteDistribution& d_enc,
                     const DiscreteDistribution& dhat_enc);

// X-marginal of a distribution over X x Y.
DiscreteDistribution FeatureMarginal(const DiscreteDistribution& d,
                                     std::size_t label_count);

// (1 - eta) * d + eta * point(empty) on a domain one element larger.
DiscreteDistribution EncodeMalicious(const DiscreteDistribution& d, double eta);

// Maps a clean sample to a corrupted sample.
using AdaptiveStrategy = std::function<SampleMultiset(
    const SampleMultiset&, const NoiseModel&, RandomSource&)>;

struct MixtureClosureReport {
  uint64_t trials = 0;
  uint64_t violations = 0;
  // Largest lhs - rhs seen; +inf when a finite rhs met an infinite lhs.
  double max_violation = 0.0;
  // Trials where both sides were finite.
  uint64_t finite_trials = 0;
};

// Samples tuples (theta, D1, D2, D1hat, D2hat) on a domain of the given size
// (<= 8) and checks
//   rho(theta D1 + (1-theta) D2, theta D1hat + (1-theta) D2hat)
//       <= max(rho(D1, D1hat), rho(D2, D2hat)).
// Corruptions are drawn mostly from the model's finite-cost region.
MixtureClosureReport VerifyClosedUnderMixtures(const NoiseModel& model,
                                               std::size_t domain_size,
                                               uint64_t trials,
                                               RandomSource& rng);

struct LiftResult {
  DiscreteDistribution dhat;
  double cost = 0.0;
  bool within_budget = false;
  bool exact = false;
  uint64_t samples_evaluated = 0;
};

// The distribution of x in: S ~ D^n, Shat = attack(S), x ~ U(Shat).
// Exact mode enumerates all |X|^n ordered samples (at most 1e6) and gives
// sample i the stream RandomSource(seed, i). Monte Carlo mode averages
// U(Shat) over `trials` samples. Throws std::runtime_error if the attack
// returns an infeasible corruption.
LiftResult LiftAdaptiveToOblivious(const NoiseModel& model,
                                   const DiscreteDistribution& d, uint64_t n,
                                   const AdaptiveStrategy& attack,
                                   uint64_t seed);
LiftResult LiftAdaptiveToObliviousMonteCarlo(const NoiseModel& model,
                                             const DiscreteDistribution& d,
                                             uint64_t n,
                                             const AdaptiveStrategy& attack,
                                             uint64_t trials, uint64_t seed);

}  // namespace advlab

#endif  // ADVLAB_NOISE_MODEL_H_
