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

#include "advlab/hypercube.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <tuple>

#include "advlab/parallel.h"

namespace advlab {
namespace {

constexpr std::size_t kWordBits = 64;

std::size_t WordCount(std::size_t d) { return (d + kWordBits - 1) / kWordBits; }

std::vector<HypercubePoint> UniformPoints(std::size_t count, std::size_t d,
                                          RandomSource& rng) {
  std::vector<HypercubePoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(HypercubePoint::Random(d, rng));
  return out;
}

// Each coordinate of `center` flipped independently with probability p.
HypercubePoint NoisyCopy(const HypercubePoint& center, double p, RandomSource& rng) {
  HypercubePoint out = center;
  for (std::size_t i = 0; i < center.d(); ++i) {
    if (rng.Bernoulli(p)) out.SetSign(i, -center.Sign(i));
  }
  return out;
}

void CheckConfig(const LowerBoundConfig& c) {
  if (c.n < 2) throw std::invalid_argument("lowerbound: n must be at least 2");
  if (c.m == 0 || c.d == 0 || c.k == 0) {
    throw std::invalid_argument("lowerbound: m, d and k must be positive");
  }
  if (!(c.eta >= 0.0 && c.eta < 1.0)) {
    throw std::invalid_argument("lowerbound: eta must lie in [0, 1)");
  }
  if (!(c.eps > 0.0 && c.eps <= 1.0)) {
    throw std::invalid_argument("lowerbound: eps must lie in (0, 1]");
  }
  if (c.trials == 0) throw std::invalid_argument("lowerbound: trials must be positive");
}

bool AdaptiveTrial(const LowerBoundConfig& c, int64_t t, RandomSource& rng) {
  std::vector<HypercubePoint> shat = UniformPoints(c.m, c.d, rng);
  const auto centers = MajorityClusterAttack(shat, c.Centers(), c.k);
  shat.insert(shat.end(), centers.begin(), centers.end());
  std::vector<HypercubePoint> picked;
  picked.reserve(c.n);
  for (uint64_t i = 0; i < c.n; ++i) picked.push_back(shat[rng.UniformInt(shat.size())]);
  return CorrelatedPairAccepts(picked, t);
}

double Rate(uint64_t hits, uint64_t trials) {
  return static_cast<double>(hits) / static_cast<double>(trials);
}

}  // namespace

HypercubePoint::HypercubePoint(std::size_t d) : d_(d), words_(WordCount(d), 0) {
  if (d == 0) throw std::invalid_argument("HypercubePoint: d must be positive");
}

HypercubePoint HypercubePoint::FromSigns(std::span<const int> signs) {
  HypercubePoint p(signs.size());
  for (std::size_t i = 0; i < signs.size(); ++i) p.SetSign(i, signs[i]);
  return p;
}

HypercubePoint HypercubePoint::Random(std::size_t d, RandomSource& rng) {
  HypercubePoint p(d);
  for (auto& w : p.words_) w = rng.NextU64();
  if (d % kWordBits != 0) p.words_.back() &= (uint64_t{1} << (d % kWordBits)) - 1;
  return p;
}

int HypercubePoint::Sign(std::size_t i) const {
  if (i >= d_) throw std::out_of_range("HypercubePoint: coordinate out of range");
  return (words_[i / kWordBits] >> (i % kWordBits) & 1) ? -1 : 1;
}

void HypercubePoint::SetSign(std::size_t i, int sign) {
  if (i >= d_) throw std::out_of_range("HypercubePoint: coordinate out of range");
  if (sign != 1 && sign != -1) throw std::invalid_argument("HypercubePoint: sign must be +-1");
  const uint64_t bit = uint64_t{1} << (i % kWordBits);
  if (sign < 0) {
    words_[i / kWordBits] |= bit;
  } else {
    words_[i / kWordBits] &= ~bit;
  }
}

HypercubePoint HypercubePoint::Negated() const {
  HypercubePoint p = *this;
  for (auto& w : p.words_) w = ~w;
  if (d_ % kWordBits != 0) p.words_.back() &= (uint64_t{1} << (d_ % kWordBits)) - 1;
  return p;
}

int64_t InnerProduct(const HypercubePoint& a, const HypercubePoint& b) {
  if (a.d() != b.d()) throw std::invalid_argument("InnerProduct: dimension mismatch");
  const auto wa = a.words();
  const auto wb = b.words();
  int64_t differ = 0;
  for (std::size_t i = 0; i < wa.size(); ++i) differ += std::popcount(wa[i] ^ wb[i]);
  return static_cast<int64_t>(a.d()) - 2 * differ;
}

double CorrelationMean(std::size_t d, std::size_t k) {
  if (k == 0) throw std::invalid_argument("CorrelationMean: k must be positive");
  return std::sqrt(2.0 / std::numbers::pi) * static_cast<double>(d) /
         std::sqrt(static_cast<double>(k));
}

int64_t DefaultThreshold(std::size_t d, std::size_t k) {
  return static_cast<int64_t>(std::ceil(CorrelationMean(d, k) / 2.0));
}

uint64_t CenterCount(uint64_t m, double eta) {
  if (!(eta >= 0.0 && eta < 1.0)) throw std::invalid_argument("CenterCount: eta outside [0,1)");
  return static_cast<uint64_t>(
      std::floor(static_cast<double>(m) * eta / (1.0 - eta) + 1e-9));
}

double ObliviousBound(uint64_t n, double eta, int64_t t, std::size_t d) {
  const double tt = static_cast<double>(t);
  return std::pow(eta, static_cast<double>(n)) +
         static_cast<double>(n) * std::exp(-tt * tt / (2.0 * static_cast<double>(d)));
}

bool CorrelatedPairAccepts(std::span<const HypercubePoint> points, int64_t t) {
  const std::size_t n = points.size();
  if (n < 2) throw std::invalid_argument("CorrelatedPairAccepts: need at least two points");
  std::vector<char> matched(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (matched[i]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      if (InnerProduct(points[i], points[j]) >= t) {
        // The relation is symmetric.
        matched[i] = 1;
        matched[j] = 1;
        break;
      }
    }
    if (!matched[i]) return false;
  }
  return true;
}

HypercubePoint MajorityOf(std::span<const HypercubePoint> points) {
  if (points.empty()) throw std::invalid_argument("MajorityOf: no points");
  const std::size_t d = points.front().d();
  std::vector<uint32_t> minus(d, 0);
  for (const auto& p : points) {
    if (p.d() != d) throw std::invalid_argument("MajorityOf: dimension mismatch");
    const auto w = p.words();
    for (std::size_t i = 0; i < d; ++i) minus[i] += (w[i / kWordBits] >> (i % kWordBits)) & 1;
  }
  HypercubePoint out(d);
  const std::size_t k = points.size();
  for (std::size_t i = 0; i < d; ++i) {
    if (2 * static_cast<std::size_t>(minus[i]) > k) out.SetSign(i, -1);
  }
  return out;
}

std::vector<HypercubePoint> MajorityClusterAttack(
    std::span<const HypercubePoint> s, uint64_t centers, std::size_t k) {
  if (s.empty() || k == 0) {
    throw std::invalid_argument("MajorityClusterAttack: empty sample or k = 0");
  }
  std::vector<HypercubePoint> out;
  out.reserve(centers);
  std::vector<HypercubePoint> chunk;
  chunk.reserve(k);
  for (uint64_t j = 0; j < centers; ++j) {
    chunk.clear();
    for (std::size_t i = 0; i < k; ++i) chunk.push_back(s[(j * k + i) % s.size()]);
    out.push_back(MajorityOf(chunk));
  }
  return out;
}

std::vector<HypercubePoint> MajorityClusterAttack(
    std::span<const HypercubePoint> s, double eta, std::size_t k) {
  return MajorityClusterAttack(s, CenterCount(s.size(), eta), k);
}

ChunkCoverage ChunkMembership(uint64_t m, std::size_t k, uint64_t centers) {
  if (m == 0 || k == 0) throw std::invalid_argument("ChunkMembership: m and k must be positive");
  std::vector<uint64_t> participation(m, 0);
  ChunkCoverage out;
  out.min_center_support = centers == 0 ? 0 : UINT64_MAX;
  for (uint64_t j = 0; j < centers; ++j) {
    std::set<uint64_t> members;
    for (std::size_t i = 0; i < k; ++i) members.insert((j * k + i) % m);
    for (uint64_t x : members) ++participation[x];
    out.min_center_support = std::min<uint64_t>(out.min_center_support, members.size());
  }
  const auto [lo, hi] = std::minmax_element(participation.begin(), participation.end());
  out.min_point_participation = *lo;
  out.max_point_participation = *hi;
  out.participation_floor = centers * k / m;
  return out;
}

double MeanCenterCorrelation(std::size_t d, std::size_t k, uint64_t trials,
                             uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("MeanCenterCorrelation: no trials");
  std::vector<double> means(trials);
  ParallelFor(trials, [&](std::size_t t) {
    RandomSource rng(seed, t);
    const auto chunk = UniformPoints(k, d, rng);
    const HypercubePoint center = MajorityOf(chunk);
    double total = 0.0;
    for (const auto& x : chunk) total += static_cast<double>(InnerProduct(x, center));
    means[t] = total / static_cast<double>(k);
  });
  double total = 0.0;
  for (double v : means) total += v;
  return total / static_cast<double>(trials);
}

std::vector<std::string> ConfigWarnings(const LowerBoundConfig& c) {
  std::vector<std::string> out;
  const double log_n = std::log(static_cast<double>(c.n));
  if (c.k % 2 == 0) out.push_back("k is even; majority ties go to +1");
  if (c.Centers() == 0) out.push_back("no centers: floor(m*eta/(1-eta)) = 0");
  if (c.k > c.m) out.push_back("k exceeds m; chunks repeat sample points");
  if (static_cast<double>(c.k) < static_cast<double>(c.m) * log_n / static_cast<double>(c.n)) {
    out.push_back("k below m*ln(n)/n");
  }
  if (static_cast<double>(c.d) < static_cast<double>(c.k) * log_n) {
    out.push_back("d below k*ln(n)");
  }
  return out;
}

double SeparationReport::ObliviousEmpiricalMax() const {
  return std::max({point_mass_rate, uniform_rate, planted_rate});
}

SeparationReport RunSeparation(const LowerBoundConfig& config) {
  CheckConfig(config);
  SeparationReport r;
  r.config = config;
  r.t = config.Threshold();
  r.centers = config.Centers();
  r.warnings = ConfigWarnings(config);
  r.oblivious_bound = ObliviousBound(config.n, config.eta, r.t, config.d);
  const double m = static_cast<double>(config.m);
  const double c = static_cast<double>(r.centers);
  r.attack_feasible = c / (m + c) <= config.eta + 1e-12;

  r.rows.resize(config.trials);
  ParallelFor(config.trials, [&](std::size_t trial) {
    RandomSource rng(config.seed, trial);
    SeparationRow& row = r.rows[trial];
    row.trial = trial;
    {
      RandomSource sub = rng.Fork(0);
      row.clean_accept = CorrelatedPairAccepts(UniformPoints(config.n, config.d, sub), r.t);
    }
    // Oblivious battery: n draws from (1 - eta) D + eta E.
    auto mixture_accepts = [&](uint64_t child, auto&& draw_e) {
      RandomSource sub = rng.Fork(child);
      std::vector<HypercubePoint> pts;
      pts.reserve(config.n);
      for (uint64_t i = 0; i < config.n; ++i) {
        pts.push_back(sub.Bernoulli(config.eta) ? draw_e(sub)
                                                : HypercubePoint::Random(config.d, sub));
      }
      return CorrelatedPairAccepts(pts, r.t);
    };
    {
      RandomSource pick = rng.Fork(10);
      const HypercubePoint target = HypercubePoint::Random(config.d, pick);
      row.point_mass_accept = mixture_accepts(1, [&](RandomSource&) { return target; });
      row.uniform_accept = mixture_accepts(
          2, [&](RandomSource& s) { return HypercubePoint::Random(config.d, s); });
      row.planted_accept =
          mixture_accepts(3, [&](RandomSource& s) { return NoisyCopy(target, 0.1, s); });
    }
    RandomSource sub = rng.Fork(4);
    row.adaptive_accept = AdaptiveTrial(config, r.t, sub);
  });

  uint64_t clean = 0, point = 0, uni = 0, planted = 0, adaptive = 0;
  for (const auto& row : r.rows) {
    clean += row.clean_accept;
    point += row.point_mass_accept;
    uni += row.uniform_accept;
    planted += row.planted_accept;
    adaptive += row.adaptive_accept;
  }
  r.clean_rate = Rate(clean, config.trials);
  r.point_mass_rate = Rate(point, config.trials);
  r.uniform_rate = Rate(uni, config.trials);
  r.planted_rate = Rate(planted, config.trials);
  r.adaptive_rate = Rate(adaptive, config.trials);
  const double half = config.eps / 2.0;
  r.separated = r.attack_feasible && r.adaptive_rate >= 1.0 - half &&
                std::max({r.clean_rate, r.ObliviousEmpiricalMax(), r.oblivious_bound}) <= half;
  return r;
}

double AdaptiveAcceptanceRate(const LowerBoundConfig& config) {
  CheckConfig(config);
  const int64_t t = config.Threshold();
  std::vector<char> hits(config.trials, 0);
  ParallelFor(config.trials, [&](std::size_t trial) {
    RandomSource rng = RandomSource(config.seed, trial).Fork(4);
    hits[trial] = AdaptiveTrial(config, t, rng) ? 1 : 0;
  });
  uint64_t total = 0;
  for (char h : hits) total += static_cast<uint64_t>(h);
  return Rate(total, config.trials);
}

std::size_t RecipeK(double c1, uint64_t m, uint64_t n) {
  const double raw = c1 * static_cast<double>(m) * std::log(static_cast<double>(n)) /
                     static_cast<double>(n);
  auto k = static_cast<int64_t>(std::llround(raw));
  if (k % 2 == 0) k += (raw >= static_cast<double>(k)) ? 1 : -1;
  k = std::clamp<int64_t>(k, 1, static_cast<int64_t>(m));
  if (k % 2 == 0) --k;  // m even and k clamped to m
  return static_cast<std::size_t>(std::max<int64_t>(k, 1));
}

std::size_t RecipeD(double c2, std::size_t k, uint64_t n) {
  return static_cast<std::size_t>(
      std::ceil(c2 * static_cast<double>(k) * std::log(static_cast<double>(n)) - 1e-9));
}

ParameterSearchResult ParameterSearch(uint64_t n, double eta, double eps,
                                      const SearchBudget& budget) {
  ParameterSearchResult result;
  std::vector<SearchCandidate> pending;
  std::set<std::tuple<uint64_t, std::size_t, std::size_t>> seen;
  const double half = eps / 2.0;
  for (uint64_t m : budget.m_grid) {
    for (double c1 : budget.c1_grid) {
      for (double c2 : budget.c2_grid) {
        SearchCandidate cand;
        cand.c1 = c1;
        cand.c2 = c2;
        cand.config.n = n;
        cand.config.m = m;
        cand.config.eta = eta;
        cand.config.eps = eps;
        cand.config.k = RecipeK(c1, m, n);
        cand.config.d = RecipeD(c2, cand.config.k, n);
        cand.config.seed = budget.seed;
        if (cand.config.d > budget.max_d || cand.config.Centers() == 0) continue;
        if (!seen.insert({m, cand.config.k, cand.config.d}).second) continue;
        ++result.candidates;
        cand.oblivious_bound =
            ObliviousBound(n, eta, cand.config.Threshold(), cand.config.d);
        if (cand.oblivious_bound > half) continue;
        pending.push_back(cand);
      }
    }
  }
  // Cheapest first.
  std::stable_sort(pending.begin(), pending.end(), [n](const auto& a, const auto& b) {
    return a.config.d * (a.config.m + n) < b.config.d * (b.config.m + n);
  });
  std::vector<SearchCandidate> misses;
  for (auto& cand : pending) {
    if (result.screened >= budget.max_screened) break;
    ++result.screened;
    cand.config.trials = budget.screen_trials;
    cand.screen_rate = AdaptiveAcceptanceRate(cand.config);
    if (cand.screen_rate < 1.0 - half) {
      cand.outcome = "adaptive screen below target";
      misses.push_back(cand);
      continue;
    }
    cand.config.trials = budget.confirm_trials;
    SeparationReport report = RunSeparation(cand.config);
    if (report.separated) {
      cand.outcome = "witness";
      result.witness = cand;
      result.witness_report = std::move(report);
      break;
    }
    cand.outcome = "failed confirmation";
    misses.push_back(cand);
  }
  std::stable_sort(misses.begin(), misses.end(), [](const auto& a, const auto& b) {
    return a.screen_rate > b.screen_rate;
  });
  if (misses.size() > 5) misses.resize(5);
  result.near_misses = std::move(misses);
  return result;
}

std::vector<FrontierRow> FrontierSweep(const LowerBoundConfig& base, double c1,
                                       std::span<const uint64_t> ms) {
  std::vector<FrontierRow> out;
  for (uint64_t m : ms) {
    LowerBoundConfig c = base;
    c.m = m;
    c.k = RecipeK(c1, m, base.n);
    c.t = 0;
    FrontierRow row;
    row.m = m;
    row.k = c.k;
    row.d = c.d;
    row.t = c.Threshold();
    row.oblivious_bound = ObliviousBound(c.n, c.eta, row.t, c.d);
    row.adaptive_rate = c.Centers() == 0 ? 0.0 : AdaptiveAcceptanceRate(c);
    row.gap = row.adaptive_rate - std::min(1.0, row.oblivious_bound);
    row.separated =
        row.adaptive_rate >= 1.0 - c.eps / 2.0 && row.oblivious_bound <= c.eps / 2.0;
    out.push_back(row);
  }
  return out;
}

}  // namespace advlab
