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

// Separation experiment on the Boolean hypercube {-1, +1}^d: the
// correlated-pair tester, the majority-cluster attack and a parameter search.

#ifndef ADVLAB_HYPERCUBE_H_
#define ADVLAB_HYPERCUBE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "advlab/random.h"

namespace advlab {

// A point of {-1, +1}^d, one bit per coordinate (bit set means -1).
class HypercubePoint {
 public:
  // The all +1 point.
  explicit HypercubePoint(std::size_t d);

  static HypercubePoint FromSigns(std::span<const int> signs);
  static HypercubePoint Random(std::size_t d, RandomSource& rng);

  std::size_t d() const { return d_; }
  int Sign(std::size_t i) const;
  void SetSign(std::size_t i, int sign);
  HypercubePoint Negated() const;
  std::span<const uint64_t> words() const { return words_; }

  friend bool operator==(const HypercubePoint&, const HypercubePoint&) = default;

 private:
  std::size_t d_;
  std::vector<uint64_t> words_;
};

// Exact integer inner product in [-d, d].
int64_t InnerProduct(const HypercubePoint& a, const HypercubePoint& b);

// sqrt(2/pi) * d / sqrt(k).
double CorrelationMean(std::size_t d, std::size_t k);
// ceil(mu / 2).
int64_t DefaultThreshold(std::size_t d, std::size_t k);
// floor(m * eta / (1 - eta)).
uint64_t CenterCount(uint64_t m, double eta);
// eta^n + n * exp(-t^2 / (2d)).
double ObliviousBound(uint64_t n, double eta, int64_t t, std::size_t d);

// 1 iff every point has a partner at a different index with <x_i, x_j> >= t.
// Throws on fewer than two points.
bool CorrelatedPairAccepts(std::span<const HypercubePoint> points, int64_t t);

// Coordinate-wise majority; ties (even k) go to +1.
HypercubePoint MajorityOf(std::span<const HypercubePoint> points);

// Center j is the majority of s[j*k .. j*k + k - 1], indices mod |s|.
std::vector<HypercubePoint> MajorityClusterAttack(
    std::span<const HypercubePoint> s, uint64_t centers, std::size_t k);
std::vector<HypercubePoint> MajorityClusterAttack(
    std::span<const HypercubePoint> s, double eta, std::size_t k);

// Pure chunking arithmetic: how many chunk slots each center and sample
// index gets.
struct ChunkCoverage {
  uint64_t min_center_support = 0;
  uint64_t min_point_participation = 0;
  uint64_t max_point_participation = 0;
  // floor(C * k / m).
  uint64_t participation_floor = 0;
};
ChunkCoverage ChunkMembership(uint64_t m, std::size_t k, uint64_t centers);

// Mean of <x, center> over chunk members, averaged over trials with S
// uniform of size k (one chunk).
double MeanCenterCorrelation(std::size_t d, std::size_t k, uint64_t trials,
                             uint64_t seed);

struct LowerBoundConfig {
  uint64_t n = 64;
  uint64_t m = 64;
  std::size_t d = 1024;
  double eta = 0.5;
  double eps = 0.2;
  std::size_t k = 17;
  // 0 means DefaultThreshold(d, k).
  int64_t t = 0;
  uint64_t trials = 200;
  uint64_t seed = 1;

  int64_t Threshold() const { return t != 0 ? t : DefaultThreshold(d, k); }
  uint64_t Centers() const { return CenterCount(m, eta); }
};

// Recipe and precondition warnings; empty when the config looks sane.
std::vector<std::string> ConfigWarnings(const LowerBoundConfig& config);

struct SeparationRow {
  uint64_t trial = 0;
  bool clean_accept = false;
  bool point_mass_accept = false;
  bool uniform_accept = false;
  bool planted_accept = false;
  bool adaptive_accept = false;
};

struct SeparationReport {
  LowerBoundConfig config;
  int64_t t = 0;
  uint64_t centers = 0;
  double clean_rate = 0.0;
  double point_mass_rate = 0.0;
  double uniform_rate = 0.0;
  double planted_rate = 0.0;
  double oblivious_bound = 0.0;
  double adaptive_rate = 0.0;
  // cost_add(U(S), U(S u T)) = C / (m + C) <= eta on every trial.
  bool attack_feasible = true;
  bool separated = false;
  std::vector<std::string> warnings;
  std::vector<SeparationRow> rows;

  double ObliviousEmpiricalMax() const;
};

SeparationReport RunSeparation(const LowerBoundConfig& config);

// Only the adaptive side, for screening.
double AdaptiveAcceptanceRate(const LowerBoundConfig& config);

struct SearchBudget {
  std::vector<uint64_t> m_grid{32, 64, 128, 256, 512};
  std::vector<double> c1_grid{1, 2, 3, 4, 6, 8};
  std::vector<double> c2_grid{8, 12, 16, 24, 32, 48, 64, 96};
  std::size_t max_d = 16384;
  uint64_t screen_trials = 50;
  uint64_t confirm_trials = 200;
  // Candidates that reach Monte Carlo screening.
  uint64_t max_screened = 60;
  uint64_t seed = 1;
};

struct SearchCandidate {
  double c1 = 0.0;
  double c2 = 0.0;
  LowerBoundConfig config;
  double oblivious_bound = 0.0;
  double screen_rate = -1.0;  // -1 when not screened
  std::string outcome;
};

struct ParameterSearchResult {
  std::optional<SearchCandidate> witness;
  std::optional<SeparationReport> witness_report;
  std::vector<SearchCandidate> near_misses;
  uint64_t candidates = 0;
  uint64_t screened = 0;
};

ParameterSearchResult ParameterSearch(uint64_t n, double eta, double eps,
                                      const SearchBudget& budget);

// Rounds c1 * m * ln n / n to the nearest odd integer in [1, m].
std::size_t RecipeK(double c1, uint64_t m, uint64_t n);
// ceil(c2 * k * ln n).
std::size_t RecipeD(double c2, std::size_t k, uint64_t n);

struct FrontierRow {
  uint64_t m = 0;
  std::size_t k = 0;
  std::size_t d = 0;
  int64_t t = 0;
  double adaptive_rate = 0.0;
  double oblivious_bound = 0.0;
  double gap = 0.0;
  bool separated = false;
};

// d fixed at base.d; k follows the recipe with constant c1 for each m.
std::vector<FrontierRow> FrontierSweep(const LowerBoundConfig& base, double c1,
                                       std::span<const uint64_t> ms);

}  // namespace advlab

#endif  // ADVLAB_HYPERCUBE_H_
