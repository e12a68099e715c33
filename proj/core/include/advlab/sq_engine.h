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

// Adaptive statistical-query algorithms, transcripts, representativeness
// checks and the concentration experiments built on them.

#ifndef ADVLAB_SQ_ENGINE_H_
#define ADVLAB_SQ_ENGINE_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "advlab/distribution.h"
#include "advlab/noise_model.h"
#include "advlab/statistical_query.h"

namespace advlab {

// Nearest integer multiple of tau; exact ties go toward +infinity.
double RoundToTau(double v, double tau);
int64_t RoundToTauMultiple(double v, double tau);

// Rounded query answers, stored as integer multiples of tau.
struct Transcript {
  double tau = 0.0;
  std::vector<int64_t> multiples;

  std::size_t size() const { return multiples.size(); }
  double value(std::size_t i) const { return static_cast<double>(multiples[i]) * tau; }
  std::vector<double> values() const;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

// Query tables for config-driven algorithms. Query i is chosen by looking up
// the comma-joined prefix multiples in `branch` (e.g. "", "3", "3,-1"); a
// missing key falls back to query index = depth.
struct SqTable {
  double tau = 0.1;
  std::size_t k = 1;
  std::vector<std::vector<double>> queries;
  std::map<std::string, std::size_t> branch;
  // Accept iff the sum of transcript values is >= this.
  double accept_threshold = -1e300;
};

// An adaptive k-query SQ algorithm with a shared tolerance tau.
class SqAlgorithm {
 public:
  using NextQuery = std::function<StatisticalQuery(std::span<const double>)>;
  using Accept = std::function<bool(std::span<const double>)>;

  SqAlgorithm(std::size_t k, double tau, NextQuery next, Accept accept);

  static SqAlgorithm NonAdaptive(std::vector<StatisticalQuery> queries,
                                 Accept accept = nullptr);
  static SqAlgorithm FromTable(const SqTable& table);

  std::size_t k() const { return k_; }
  double tau() const { return tau_; }

  // The query asked after the given prefix of rounded answers.
  StatisticalQuery Query(std::span<const double> prefix) const;
  bool Accepts(const Transcript& transcript) const;

 private:
  std::size_t k_;
  double tau_;
  NextQuery next_;
  Accept accept_;
};

Transcript RunTranscript(const SqAlgorithm& alg, const SampleMultiset& s);
Transcript RunTranscript(const SqAlgorithm& alg, const DiscreteDistribution& d);

// The queries asked along a given transcript.
std::vector<StatisticalQuery> QueriesAlong(const SqAlgorithm& alg,
                                           const Transcript& transcript);

// Every rounded sample answer lies within tau (closed) of the distribution's
// answer to the same query along the sample's transcript.
bool IsRepresentative(const SampleMultiset& s, const DiscreteDistribution& d,
                      const SqAlgorithm& alg);

// The closed interval of psi(Dhat) over Dhat with cost(d, Dhat) <= eta.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};
Interval ObliviousQueryRange(const StatisticalQuery& psi,
                             const DiscreteDistribution& d,
                             const NoiseModel& model);

// A Dhat with cost(d, Dhat) <= eta and |phi_i(Dhat) - values[i]| <= tau for
// every i, found by linear programming; nullopt if none exists.
std::optional<DiscreteDistribution> FindCloseDistribution(
    const NoiseModel& model, const DiscreteDistribution& d,
    std::span<const StatisticalQuery> queries, std::span<const double> values,
    double tau);

enum class Verdict { kTrue, kFalse, kUnknown };
std::string_view VerdictName(Verdict v);

struct RobustnessSearch {
  // Caps the number of corrupted samples enumerated on tiny domains.
  uint64_t max_enumerated = 200000;
  // Random feasible corruptions tried by the heuristic search.
  uint64_t random_restarts = 16;
  uint64_t seed = 0;
};

struct RobustnessResult {
  Verdict verdict = Verdict::kUnknown;
  // exact_single_query, enumeration or heuristic.
  std::string method;
  uint64_t corruptions_checked = 0;
  // A corrupted sample with no matching Dhat, when verdict is kFalse.
  std::optional<SampleMultiset> witness;
};

// Decides whether s is eta-robustly representative of d for alg.
//  - k = 1 with additive or nasty noise: exact, via the extreme attacks and
//    the interval of feasible query values.
//  - |X| <= 4: enumerates every corrupted sample reachable with the model's
//    integer budget and checks each with FindCloseDistribution.
//  - otherwise: tries single-query and random attacks; can only prove false.
RobustnessResult IsRobustlyRepresentative(const SampleMultiset& s,
                                          const DiscreteDistribution& d,
                                          const SqAlgorithm& alg,
                                          const NoiseModel& model,
                                          const RobustnessSearch& search = {});

// Psi = sum_i w_i phi_i with ||w||_1 = 1 and threshold T such that
// Psi(Dhat) <= T for every feasible Dhat and Psi >= T + tau/2 on the box
// prod_i [v_i - tau/2, v_i + tau/2].
struct SeparatingQuery {
  std::vector<double> weights;
  double threshold = 0.0;
  // min over the outer box prod_i [v_i - tau, v_i + tau] of w.b, minus T.
  double margin = 0.0;

  StatisticalQuery Composite(std::span<const StatisticalQuery> queries,
                             double tau) const;
};

// Solves the separation LP between the additive moment polytope and the
// box of side 2 tau around `values`. nullopt when they intersect.
// Throws for k > 20 or a non-additive model.
std::optional<SeparatingQuery> FindSeparatingQuery(
    std::span<const StatisticalQuery> queries, std::span<const double> values,
    const DiscreteDistribution& d, const NoiseModel& model);

// Vertices (1 - eta) phi(d) + eta phi(x), one per domain element.
std::vector<std::vector<double>> MomentPolytopeVertices(
    std::span<const StatisticalQuery> queries, const DiscreteDistribution& d,
    double eta);

// exp(-tau^2 n / (8 l^2) + k ln(2/tau + 1)).
double ConcentrationFailureBound(double tau, uint64_t n, double locality,
                                 std::size_t k);
// exp(-tau^2 n / (8 l^2)).
double SingleQueryTailBound(double tau, uint64_t n, double locality);

struct ConcentrationRow {
  uint64_t n = 0;
  uint64_t trials = 0;
  uint64_t failures = 0;
  uint64_t unknowns = 0;
  double empirical_failure = 0.0;
  double standard_error = 0.0;
  double theory_bound = 0.0;
  uint64_t seed = 0;
};

// Fraction of S ~ d^n that are not eta-robustly representative.
ConcentrationRow SqConcentrationExperiment(const SqAlgorithm& alg,
                                           const DiscreteDistribution& d,
                                           const NoiseModel& model, uint64_t n,
                                           uint64_t trials, uint64_t seed,
                                           const RobustnessSearch& search = {});

struct ExceedanceRow {
  uint64_t n = 0;
  uint64_t trials = 0;
  uint64_t exceedances = 0;
  double rate = 0.0;
  double standard_error = 0.0;
  double bound = 0.0;
  double threshold = 0.0;
  uint64_t seed = 0;
};

// Frequency with which the exact single-query attack pushes psi(Shat) to at
// least threshold + tau/2, for S ~ d^n.
ExceedanceRow SingleQueryExceedance(const StatisticalQuery& psi,
                                    const DiscreteDistribution& d,
                                    const NoiseModel& model, double threshold,
                                    uint64_t n, uint64_t trials, uint64_t seed);

}  // namespace advlab

#endif  // ADVLAB_SQ_ENGINE_H_
