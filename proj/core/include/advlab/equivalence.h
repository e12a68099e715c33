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

// Extremal acceptance probabilities under oblivious and adaptive
// corruption, the additive stochastic-function family, estimators and the
// equivalence check between an algorithm and its subsampled wrapper.

#ifndef ADVLAB_EQUIVALENCE_H_
#define ADVLAB_EQUIVALENCE_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "advlab/adversaries.h"
#include "advlab/distribution.h"
#include "advlab/noise_model.h"
#include "advlab/random.h"
#include "advlab/stochastic_map.h"

namespace advlab {

// Pr[A accepts S] for S ~ q^n, for a deterministic A on ordered n-tuples,
// tabulated once over all |X|^n inputs (at most 1e6).
class AcceptanceTable {
 public:
  AcceptanceTable(std::size_t domain_size, std::size_t n,
                  const std::function<bool(std::span<const Element>)>& decide);

  std::size_t domain_size() const { return domain_size_; }
  std::size_t n() const { return n_; }

  double Acceptance(std::span<const double> q) const;
  // q = counts / sum(counts).
  double AcceptanceFromCounts(std::span<const uint64_t> counts) const;

 private:
  std::size_t domain_size_;
  std::size_t n_;
  // Accepted tuples, flattened with stride n.
  std::vector<Element> accepted_;
};

// A decision procedure on ordered samples. Deterministic unless marked
// randomized, in which case Decide draws from the supplied stream.
class BlackBoxAlgorithm {
 public:
  using Decide = std::function<bool(std::span<const Element>, RandomSource&)>;

  BlackBoxAlgorithm(std::string name, std::size_t n, Decide decide,
                    bool randomized = false);

  // A deterministic algorithm on {0..domain_size-1}^n given by the bits of
  // `truth_table`, indexed by the tuple read as a base-|X| number.
  static BlackBoxAlgorithm FromTruthTable(std::size_t domain_size,
                                          std::size_t n, uint64_t truth_table);
  static BlackBoxAlgorithm Constant(bool value, std::size_t n);

  const std::string& name() const { return name_; }
  std::size_t n() const { return n_; }
  bool randomized() const { return randomized_; }

  bool Run(std::span<const Element> sample, RandomSource& rng) const;

  // Pr[accept] on the fixed input s, over the algorithm's own randomness.
  // Exact when the algorithm carries an exact form or is deterministic;
  // otherwise averages `repetitions` runs.
  double AcceptanceOn(const SampleMultiset& s, RandomSource& rng,
                      uint64_t repetitions = 64) const;
  bool HasExactAcceptance() const { return !randomized_ || exact_on_counts_ != nullptr; }
  double ExactAcceptanceOnCounts(std::span<const uint64_t> counts) const;

  // Exact Pr[accept] for S ~ q^n; requires a deterministic algorithm.
  double IidAcceptance(const DiscreteDistribution& q) const;

  // Installs an exact per-input acceptance for a randomized algorithm.
  void SetExactAcceptance(std::function<double(std::span<const uint64_t>)> fn) {
    exact_on_counts_ = std::move(fn);
  }

 private:
  const AcceptanceTable& Table(std::size_t domain_size) const;

  std::string name_;
  std::size_t n_;
  Decide decide_;
  bool randomized_;
  std::function<double(std::span<const uint64_t>)> exact_on_counts_;
  mutable std::shared_ptr<AcceptanceTable> table_;
  std::shared_ptr<std::mutex> table_mutex_;
};

// A_sub = A o Phi_{* -> n}: subsample n points with replacement, run A.
// Its acceptance on a fixed input is exact when A is deterministic and
// |X|^n <= 1e6 for the given domain size.
BlackBoxAlgorithm Subsampled(const BlackBoxAlgorithm& inner,
                             std::size_t domain_size);

// B = 1_Y o A for a search algorithm A with integer outputs.
BlackBoxAlgorithm SearchToDecision(
    std::string name, std::size_t n,
    std::function<int64_t(std::span<const Element>, RandomSource&)> search,
    std::function<bool(int64_t)> accept_set);

// The 16 deterministic algorithms on ordered pairs over {0, 1}.
std::vector<BlackBoxAlgorithm> AllBinaryAlgorithmsOnPairs();

// Members f^(T): keep x with probability 1 - eta, else draw from U(T).
// Only U(T) matters, so members are stored as multisets.
class AdditiveFamily {
 public:
  // Every multiset T of size `length` over the domain.
  static AdditiveFamily Exhaustive(Domain domain, double eta, uint64_t length);
  // `count` members with T a uniform random tuple of size `length`.
  static AdditiveFamily Sampled(Domain domain, double eta, uint64_t length,
                                uint64_t count, RandomSource& rng);

  double eta() const { return eta_; }
  const std::vector<SampleMultiset>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool exhaustive() const { return exhaustive_; }

  StochasticMap Member(std::size_t i) const;
  // f^(T) o d = (1 - eta) d + eta U(T).
  DiscreteDistribution Corrupt(std::size_t i, const DiscreteDistribution& d) const;

 private:
  AdditiveFamily(double eta, std::vector<SampleMultiset> members, bool exhaustive)
      : eta_(eta), members_(std::move(members)), exhaustive_(exhaustive) {}

  double eta_;
  std::vector<SampleMultiset> members_;
  bool exhaustive_;
};

// ceil(n^2 / eps): the tuple length of the family.
uint64_t FamilyTupleLength(uint64_t n, double eps);

struct Extremes {
  double max = 0.0;
  double min = 0.0;
  double max_standard_error = 0.0;
  double min_standard_error = 0.0;
  // Which search produced the numbers.
  std::string mode;
  // Candidates examined (family members, grid points, corruptions).
  uint64_t breadth = 0;
};

enum class ObliviousMode { kFamilyExhaustive, kFamilySampled, kGrid, kCandidates };

struct ObliviousSearch {
  ObliviousMode mode = ObliviousMode::kFamilyExhaustive;
  double epsilon = 0.3;
  // Sampled family size.
  uint64_t family_samples = 64;
  // Simplex grid resolution for kGrid.
  uint64_t grid = 200;
  // Monte Carlo trials per candidate when acceptance is not exact.
  uint64_t trials = 2000;
  uint64_t seed = 0;
};

// Oblivious-Max and Oblivious-Min of alg at sample size alg.n(). The family
// and grid modes need additive noise; kCandidates evaluates point-mass
// corruptions (a lower bound on the true sup for other models).
Extremes ObliviousExtremes(const BlackBoxAlgorithm& alg,
                           const DiscreteDistribution& d,
                           const NoiseModel& model,
                           const ObliviousSearch& search);

enum class AdaptiveMode { kExhaustive, kAttack };

struct AdaptiveSearch {
  AdaptiveMode mode = AdaptiveMode::kExhaustive;
  // Cap on (clean samples x corruptions) visited in exhaustive mode.
  double max_evaluations = 5e8;
  // Attack mode: strategies tried for the max and for the min.
  std::vector<AdaptiveStrategy> max_attacks;
  std::vector<AdaptiveStrategy> min_attacks;
  uint64_t trials = 2000;
  uint64_t seed = 0;
};

// Calls fn(counts) for every corrupted sample reachable from `counts` with
// the model's integer budget. Duplicates are possible.
void ForEachCorruption(const NoiseModel& model, std::span<const uint64_t> counts,
                       const std::function<void(std::span<const uint64_t>)>& fn);

// Adaptive-Max and Adaptive-Min of alg on clean samples of size m. The
// exhaustive mode sums over all multisets S with multinomial weights and
// takes the exact inner sup over ForEachCorruption.
Extremes AdaptiveExtremes(const BlackBoxAlgorithm& alg,
                          const DiscreteDistribution& d,
                          const NoiseModel& model, uint64_t m,
                          const AdaptiveSearch& search);

struct EstimateResult {
  double max = 0.0;
  double min = 0.0;
  std::size_t argmax = 0;
  std::size_t argmin = 0;
  uint64_t repetitions = 0;
};

// Est-Max / Est-Min over the family: for each member f the mean of A(f(S_j))
// over a shared batch S_1..S_r ~ d^n.
EstimateResult EstimateExtremes(const BlackBoxAlgorithm& alg,
                                const AdditiveFamily& family,
                                const DiscreteDistribution& d, uint64_t r,
                                uint64_t seed);

// ceil(m ln(2/eps) / (2 eps^2)).
uint64_t EstimatorSampleSize(uint64_t m, double eps);
// ceil(ln(2/eps) / (2 eps^2)): size-m batches inside that estimator.
uint64_t EstimatorBatchCount(double eps);
// ceil(ln(2 |F| / eps) / (2 eps^2)).
uint64_t EstimatorRepetitions(double family_size, double eps);
// ceil(14 m'^2 / eps).
uint64_t DistinguisherSampleSize(uint64_t m_prime, double eps);
// ceil(6 / eps).
uint64_t DistinguisherBatchCount(double eps);

struct EquivalenceReport {
  uint64_t n = 0;
  uint64_t M = 0;
  double epsilon = 0.0;
  Extremes oblivious;
  Extremes adaptive;
  double max_gap = 0.0;
  double min_gap = 0.0;
  // Gaps may exceed epsilon by 3 combined standard errors.
  double max_tolerance = 0.0;
  double min_tolerance = 0.0;
  bool pass_max = false;
  bool pass_min = false;
  bool pass = false;
};

// Compares alg at size alg.n() against oblivious noise with Subsampled(alg)
// at size M against adaptive noise.
EquivalenceReport CheckEquivalence(const BlackBoxAlgorithm& alg,
                                   const DiscreteDistribution& d,
                                   const NoiseModel& model, uint64_t M,
                                   double epsilon,
                                   const ObliviousSearch& oblivious,
                                   const AdaptiveSearch& adaptive);

// Estimates an extremal acceptance from one sample of size m'.
using SampleEstimator =
    std::function<double(std::span<const Element>, RandomSource&)>;

struct DistinguisherReport {
  uint64_t m_prime = 0;
  uint64_t M = 0;
  uint64_t batch = 0;
  uint64_t trials = 0;
  // Fraction of trials that labelled clean batches clean.
  double success_clean = 0.0;
  // Fraction of trials that labelled subsampled batches subsampled.
  double success_filtered = 0.0;
  double success = 0.0;
  // 1 / (2 batch): the TV a 3/4-successful test would certify.
  double implied_tv = 0.0;
};

// Draws ceil(6/eps) samples of size m' from d^{m'} (or from the m'-point
// subsample of d^M), runs the estimator on each and answers "clean" iff
// fewer than a 2 eps fraction of estimates lie more than 2 eps from mu.
DistinguisherReport DistinguisherTest(const DiscreteDistribution& d,
                                      uint64_t m_prime, uint64_t M,
                                      const SampleEstimator& estimator,
                                      double mu, double eps, uint64_t trials,
                                      uint64_t seed);

}  // namespace advlab

#endif  // ADVLAB_EQUIVALENCE_H_
