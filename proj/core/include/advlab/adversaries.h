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

// Oblivious and adaptive corruption strategies.

#ifndef ADVLAB_ADVERSARIES_H_
#define ADVLAB_ADVERSARIES_H_

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "advlab/distribution.h"
#include "advlab/noise_model.h"
#include "advlab/random.h"
#include "advlab/statistical_query.h"

namespace advlab {

// Maps a clean distribution to a corrupted one with cost <= eta.
using ObliviousStrategy = std::function<DiscreteDistribution(
    const DiscreteDistribution&, const NoiseModel&)>;

enum class Direction { kMax, kMin };

// Appends floor(|s| eta / (1 - eta)) copies of the argmax (argmin) of psi.
// Exactly maximizes (minimizes) psi(U(shat)) over additive corruptions.
SampleMultiset AdditiveSingleQueryAttack(const SampleMultiset& s, double eta,
                                         const StatisticalQuery& psi,
                                         Direction direction);

// Replaces the floor(eta |s|) points with the lowest (highest) psi value by
// copies of the argmax (argmin). Exact among replacements of that many
// points. Points already at the extreme value are left alone.
SampleMultiset NastySingleQueryAttack(const SampleMultiset& s, double eta,
                                      const StatisticalQuery& psi,
                                      Direction direction);

// Removes the floor(eta |s|) points with the lowest (highest) psi value.
SampleMultiset SubtractiveSingleQueryAttack(const SampleMultiset& s, double eta,
                                            const StatisticalQuery& psi,
                                            Direction direction);

// Model-dispatching single-query attack. For nasty classification it flips
// the labels of the floor(eta |s|) points with the largest gain; for the
// malicious encoding it replaces every empty-symbol point.
AdaptiveStrategy SingleQueryAttack(StatisticalQuery psi, Direction direction);

// Shat = s.
AdaptiveStrategy IdentityAttack();

// Pushes as much mass as the model allows onto `target`: additive appends,
// nasty replaces, subtractive removes other points, classification relabels
// to target's label, malicious fills the empty slots.
AdaptiveStrategy PointMassAttack(Element target);

// A uniformly random corruption using the model's full integer budget.
AdaptiveStrategy RandomFeasibleAttack();

// Names accepted by experiment configs.
inline constexpr std::string_view kAttackNames[] = {
    "identity", "additive_point_mass", "nasty_swap", "cluster_majority"};

// Resolves identity, additive_point_mass and nasty_swap. cluster_majority
// works on hypercube samples and is provided by MajorityClusterAttack.
AdaptiveStrategy NamedAttack(std::string_view name, Element target = 0);

// An adaptive strategy followed by a random second-stage perturbation:
// K = min(|Shat|, Binomial(n, min(1, c / sqrt(n)))) positions of Shat are
// redrawn iid from U(Shat).
class StrongAdaptiveStrategy {
 public:
  StrongAdaptiveStrategy(AdaptiveStrategy base, uint64_t n, double c);

  SampleMultiset Perturb(const SampleMultiset& shat, RandomSource& rng) const;

  struct Output {
    SampleMultiset first_stage;
    SampleMultiset second_stage;
  };
  Output Run(const SampleMultiset& s, const NoiseModel& model,
             RandomSource& rng) const;

  // Both stages, as a plain adaptive strategy.
  AdaptiveStrategy AsAdaptive() const;

  double resample_probability() const { return p_; }
  uint64_t n() const { return n_; }
  double profile_constant() const { return c_; }

 private:
  AdaptiveStrategy base_;
  uint64_t n_;
  double c_;
  double p_;
};

StrongAdaptiveStrategy StrongAdaptiveWrap(AdaptiveStrategy base, uint64_t n,
                                          double c);

// Oblivious counterparts: (1 - eta) d + eta point(target) for additive, and
// the TV-budget mass shift onto `target` for nasty.
DiscreteDistribution ObliviousPointMass(const DiscreteDistribution& d,
                                        const NoiseModel& model, Element target);

}  // namespace advlab

#endif  // ADVLAB_ADVERSARIES_H_
