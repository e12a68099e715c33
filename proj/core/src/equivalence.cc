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

#include "advlab/equivalence.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "advlab/combinatorics.h"
#include "advlab/parallel.h"
#include "advlab/subsampling.h"

namespace advlab {
namespace {

constexpr double kMaxTuples = 1e6;

std::vector<Element> CountsToSequence(std::span<const uint64_t> counts) {
  std::vector<Element> out;
  for (std::size_t x = 0; x < counts.size(); ++x) {
    out.insert(out.end(), counts[x], static_cast<Element>(x));
  }
  return out;
}

// Mean and standard error of A under dhat^n.
std::pair<double, double> IidAcceptanceEstimate(const BlackBoxAlgorithm& alg,
                                                const DiscreteDistribution& dhat,
                                                uint64_t trials,
                                                RandomSource rng) {
  if (!alg.randomized()) return {alg.IidAcceptance(dhat), 0.0};
  uint64_t accepted = 0;
  for (uint64_t t = 0; t < trials; ++t) {
    const auto s = SampleIidSequence(dhat, alg.n(), rng);
    if (alg.Run(s, rng)) ++accepted;
  }
  const double p = static_cast<double>(accepted) / static_cast<double>(trials);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials))};
}

void SubtractFromEach(std::span<const uint64_t> counts, uint64_t r,
                      const std::function<void(std::vector<uint64_t>&)>& fn) {
  ForEachMultiset(counts.size(), r, [&](std::span<const uint64_t> t) {
    std::vector<uint64_t> out(counts.begin(), counts.end());
    for (std::size_t x = 0; x < out.size(); ++x) {
      if (t[x] > out[x]) return;
      out[x] -= t[x];
    }
    fn(out);
  });
}

double CorruptionCount(const NoiseModel& model, std::size_t size, uint64_t n) {
  double total = 0.0;
  switch (model.kind()) {
    case NoiseKind::kAdditive:
      for (uint64_t c = 0; c <= model.AdditiveBudget(n); ++c) total += MultisetCount(size, c);
      return total;
    case NoiseKind::kSubtractive:
      for (uint64_t r = 0; r <= model.ReplacementBudget(n); ++r) total += MultisetCount(size, r);
      return total;
    case NoiseKind::kNasty:
    case NoiseKind::kNastyClassification:
      for (uint64_t r = 0; r <= model.ReplacementBudget(n); ++r) {
        total += MultisetCount(size, r) * MultisetCount(size, r);
      }
      return total;
    case NoiseKind::kMaliciousEncoded:
      return MultisetCount(size - 1, n);
  }
  return total;
}

}  // namespace

AcceptanceTable::AcceptanceTable(
    std::size_t domain_size, std::size_t n,
    const std::function<bool(std::span<const Element>)>& decide)
    : domain_size_(domain_size), n_(n) {
  if (TupleCount(domain_size, n) > kMaxTuples) {
    throw std::invalid_argument("AcceptanceTable: more than 1e6 inputs");
  }
  ForEachTuple(domain_size, n, [&](std::span<const uint32_t> tuple) {
    if (decide(tuple)) accepted_.insert(accepted_.end(), tuple.begin(), tuple.end());
  });
}

double AcceptanceTable::Acceptance(std::span<const double> q) const {
  if (q.size() != domain_size_) throw DomainMismatch("AcceptanceTable: domain mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < accepted_.size(); i += n_) {
    double p = 1.0;
    for (std::size_t j = 0; j < n_; ++j) p *= q[accepted_[i + j]];
    total += p;
  }
  return std::clamp(total, 0.0, 1.0);
}

double AcceptanceTable::AcceptanceFromCounts(std::span<const uint64_t> counts) const {
  uint64_t size = 0;
  for (uint64_t c : counts) size += c;
  if (size == 0) throw std::invalid_argument("AcceptanceFromCounts: empty sample");
  std::vector<double> q(counts.size());
  for (std::size_t x = 0; x < q.size(); ++x) {
    q[x] = static_cast<double>(counts[x]) / static_cast<double>(size);
  }
  return Acceptance(q);
}

BlackBoxAlgorithm::BlackBoxAlgorithm(std::string name, std::size_t n,
                                     Decide decide, bool randomized)
    : name_(std::move(name)), n_(n), decide_(std::move(decide)),
      randomized_(randomized), table_mutex_(std::make_shared<std::mutex>()) {
  if (!decide_) throw std::invalid_argument("BlackBoxAlgorithm: missing decide");
}

BlackBoxAlgorithm BlackBoxAlgorithm::FromTruthTable(std::size_t domain_size,
                                                    std::size_t n,
                                                    uint64_t truth_table) {
  if (TupleCount(domain_size, n) > 64) {
    throw std::invalid_argument("FromTruthTable: more than 64 inputs");
  }
  return BlackBoxAlgorithm(
      "table" + std::to_string(truth_table), n,
      [domain_size, n, truth_table](std::span<const Element> s, RandomSource&) {
        if (s.size() != n) throw std::invalid_argument("truth-table algorithm: wrong input size");
        uint64_t index = 0;
        for (Element x : s) index = index * domain_size + x;
        return (truth_table >> index & 1) != 0;
      });
}

BlackBoxAlgorithm BlackBoxAlgorithm::Constant(bool value, std::size_t n) {
  return BlackBoxAlgorithm(value ? "always" : "never", n,
                           [value](std::span<const Element>, RandomSource&) {
                             return value;
                           });
}

bool BlackBoxAlgorithm::Run(std::span<const Element> sample,
                            RandomSource& rng) const {
  return decide_(sample, rng);
}

double BlackBoxAlgorithm::AcceptanceOn(const SampleMultiset& s,
                                       RandomSource& rng,
                                       uint64_t repetitions) const {
  if (exact_on_counts_) return exact_on_counts_(s.DenseCounts());
  const auto sequence = s.ToSequence();
  if (!randomized_) return Run(sequence, rng) ? 1.0 : 0.0;
  uint64_t accepted = 0;
  for (uint64_t i = 0; i < repetitions; ++i) accepted += Run(sequence, rng) ? 1 : 0;
  return static_cast<double>(accepted) / static_cast<double>(repetitions);
}

double BlackBoxAlgorithm::ExactAcceptanceOnCounts(
    std::span<const uint64_t> counts) const {
  if (exact_on_counts_) return exact_on_counts_(counts);
  if (randomized_) {
    throw std::logic_error("ExactAcceptanceOnCounts: randomized algorithm " +
                           name_ + " has no exact form");
  }
  RandomSource unused(0, 0);
  return Run(CountsToSequence(counts), unused) ? 1.0 : 0.0;
}

const AcceptanceTable& BlackBoxAlgorithm::Table(std::size_t domain_size) const {
  std::lock_guard<std::mutex> lock(*table_mutex_);
  if (!table_ || table_->domain_size() != domain_size) {
    RandomSource unused(0, 0);
    table_ = std::make_shared<AcceptanceTable>(
        domain_size, n_, [this, &unused](std::span<const Element> s) {
          return decide_(s, unused);
        });
  }
  return *table_;
}

double BlackBoxAlgorithm::IidAcceptance(const DiscreteDistribution& q) const {
  if (randomized_) {
    throw std::logic_error("IidAcceptance: randomized algorithm " + name_);
  }
  return Table(q.domain().size()).Acceptance(q.weights());
}

BlackBoxAlgorithm Subsampled(const BlackBoxAlgorithm& inner,
                             std::size_t domain_size) {
  const std::size_t n = inner.n();
  BlackBoxAlgorithm sub(
      "sub(" + inner.name() + ")", n,
      [inner, n](std::span<const Element> s, RandomSource& rng) {
        if (s.empty()) throw std::invalid_argument("subsampled algorithm: empty input");
        const auto picked = SubsampleSequence<Element>(s, n, rng);
        return inner.Run(picked, rng);
      },
      true);
  if (!inner.randomized() && TupleCount(domain_size, n) <= kMaxTuples) {
    RandomSource unused(0, 0);
    auto table = std::make_shared<const AcceptanceTable>(
        domain_size, n, [&inner, &unused](std::span<const Element> s) {
          return inner.Run(s, unused);
        });
    sub.SetExactAcceptance([table](std::span<const uint64_t> counts) {
      return table->AcceptanceFromCounts(counts);
    });
  }
  return sub;
}

BlackBoxAlgorithm SearchToDecision(
    std::string name, std::size_t n,
    std::function<int64_t(std::span<const Element>, RandomSource&)> search,
    std::function<bool(int64_t)> accept_set) {
  return BlackBoxAlgorithm(
      std::move(name), n,
      [search = std::move(search), accept_set = std::move(accept_set)](
          std::span<const Element> s, RandomSource& rng) {
        return accept_set(search(s, rng));
      },
      true);
}

std::vector<BlackBoxAlgorithm> AllBinaryAlgorithmsOnPairs() {
  std::vector<BlackBoxAlgorithm> out;
  for (uint64_t table = 0; table < 16; ++table) {
    out.push_back(BlackBoxAlgorithm::FromTruthTable(2, 2, table));
  }
  return out;
}

AdditiveFamily AdditiveFamily::Exhaustive(Domain domain, double eta,
                                          uint64_t length) {
  if (length == 0) throw std::invalid_argument("AdditiveFamily: length must be positive");
  if (MultisetCount(domain.size(), length) > 1e6) {
    throw std::invalid_argument("AdditiveFamily::Exhaustive: family too large");
  }
  std::vector<SampleMultiset> members;
  ForEachMultiset(domain.size(), length, [&](std::span<const uint64_t> counts) {
    members.push_back(SampleMultiset::FromCounts(domain, counts));
  });
  return AdditiveFamily(eta, std::move(members), true);
}

AdditiveFamily AdditiveFamily::Sampled(Domain domain, double eta,
                                       uint64_t length, uint64_t count,
                                       RandomSource& rng) {
  if (length == 0 || count == 0) {
    throw std::invalid_argument("AdditiveFamily::Sampled: empty family");
  }
  const auto uniform = DiscreteDistribution::Uniform(domain);
  std::vector<SampleMultiset> members;
  for (uint64_t i = 0; i < count; ++i) members.push_back(SampleIid(uniform, length, rng));
  return AdditiveFamily(eta, std::move(members), false);
}

StochasticMap AdditiveFamily::Member(std::size_t i) const {
  return StochasticMap::ResampleFrom(members_.at(i), eta_);
}

DiscreteDistribution AdditiveFamily::Corrupt(std::size_t i,
                                             const DiscreteDistribution& d) const {
  return Mixture(1.0 - eta_, d, UniformOf(members_.at(i)));
}

uint64_t FamilyTupleLength(uint64_t n, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("FamilyTupleLength: eps must be > 0");
  return static_cast<uint64_t>(
      std::ceil(static_cast<double>(n * n) / eps - 1e-9));
}

Extremes ObliviousExtremes(const BlackBoxAlgorithm& alg,
                           const DiscreteDistribution& d,
                           const NoiseModel& model,
                           const ObliviousSearch& search) {
  const bool needs_additive = search.mode != ObliviousMode::kCandidates;
  if (needs_additive && model.kind() != NoiseKind::kAdditive) {
    throw std::invalid_argument(
        "ObliviousExtremes: family and grid searches need additive noise");
  }
  std::vector<DiscreteDistribution> candidates;
  Extremes out;
  switch (search.mode) {
    case ObliviousMode::kFamilyExhaustive:
    case ObliviousMode::kFamilySampled: {
      const uint64_t length = FamilyTupleLength(alg.n(), search.epsilon);
      RandomSource rng(search.seed, 0);
      const AdditiveFamily family =
          search.mode == ObliviousMode::kFamilyExhaustive
              ? AdditiveFamily::Exhaustive(d.domain(), model.eta(), length)
              : AdditiveFamily::Sampled(d.domain(), model.eta(), length,
                                        search.family_samples, rng);
      for (std::size_t i = 0; i < family.size(); ++i) {
        candidates.push_back(family.Member(i).Push(d));
      }
      out.mode = family.exhaustive() ? "family_exhaustive" : "family_sampled";
      break;
    }
    case ObliviousMode::kGrid: {
      if (MultisetCount(d.domain().size(), search.grid) > 1e6) {
        throw std::invalid_argument("ObliviousExtremes: grid too fine");
      }
      const double g = static_cast<double>(search.grid);
      ForEachMultiset(d.domain().size(), search.grid, [&](std::span<const uint64_t> c) {
        std::vector<double> e(c.size());
        for (std::size_t x = 0; x < e.size(); ++x) e[x] = static_cast<double>(c[x]) / g;
        candidates.push_back(Mixture(1.0 - model.eta(), d,
                                     DiscreteDistribution::FromUnnormalized(d.domain(), e)));
      });
      out.mode = "grid";
      break;
    }
    case ObliviousMode::kCandidates: {
      candidates.push_back(d);
      for (std::size_t x = 0; x < d.domain().size(); ++x) {
        if (model.kind() == NoiseKind::kMaliciousEncoded && x + 1 == d.domain().size()) break;
        candidates.push_back(ObliviousPointMass(d, model, static_cast<Element>(x)));
      }
      out.mode = "candidates";
      break;
    }
  }
  std::vector<std::pair<double, double>> values(candidates.size());
  ParallelFor(candidates.size(), [&](std::size_t i) {
    values[i] = IidAcceptanceEstimate(alg, candidates[i], search.trials,
                                      RandomSource(search.seed, i + 1));
  });
  out.max = -1.0;
  out.min = 2.0;
  for (const auto& [v, se] : values) {
    if (v > out.max) {
      out.max = v;
      out.max_standard_error = se;
    }
    if (v < out.min) {
      out.min = v;
      out.min_standard_error = se;
    }
  }
  out.breadth = candidates.size();
  return out;
}

void ForEachCorruption(const NoiseModel& model, std::span<const uint64_t> counts,
                       const std::function<void(std::span<const uint64_t>)>& fn) {
  const std::size_t size = counts.size();
  uint64_t n = 0;
  for (uint64_t c : counts) n += c;
  if (n == 0) throw std::invalid_argument("ForEachCorruption: empty sample");
  switch (model.kind()) {
    case NoiseKind::kAdditive: {
      const uint64_t budget = model.AdditiveBudget(n);
      std::vector<uint64_t> out(size);
      for (uint64_t c = 0; c <= budget; ++c) {
        ForEachMultiset(size, c, [&](std::span<const uint64_t> t) {
          for (std::size_t x = 0; x < size; ++x) out[x] = counts[x] + t[x];
          fn(out);
        });
      }
      return;
    }
    case NoiseKind::kSubtractive: {
      const uint64_t budget = std::min(model.ReplacementBudget(n), n - 1);
      for (uint64_t r = 0; r <= budget; ++r) {
        SubtractFromEach(counts, r, [&](std::vector<uint64_t>& out) { fn(out); });
      }
      return;
    }
    case NoiseKind::kNasty:
    case NoiseKind::kNastyClassification: {
      const uint64_t budget = model.ReplacementBudget(n);
      const std::size_t labels =
          model.kind() == NoiseKind::kNastyClassification ? model.label_count() : 0;
      std::vector<uint64_t> out(size);
      for (uint64_t r = 0; r <= budget; ++r) {
        SubtractFromEach(counts, r, [&](std::vector<uint64_t>& removed) {
          ForEachMultiset(size, r, [&](std::span<const uint64_t> added) {
            if (labels > 0) {
              // Relabelling only: every feature keeps its count.
              for (std::size_t f = 0; f < size / labels; ++f) {
                uint64_t in = 0;
                uint64_t gone = 0;
                for (std::size_t y = 0; y < labels; ++y) {
                  in += added[f * labels + y];
                  gone += counts[f * labels + y] - removed[f * labels + y];
                }
                if (in != gone) return;
              }
            }
            for (std::size_t x = 0; x < size; ++x) out[x] = removed[x] + added[x];
            fn(out);
          });
        });
      }
      return;
    }
    case NoiseKind::kMaliciousEncoded: {
      const std::size_t empty = size - 1;
      std::vector<uint64_t> out(counts.begin(), counts.end());
      out[empty] = 0;
      const std::vector<uint64_t> base = out;
      ForEachMultiset(empty, counts[empty], [&](std::span<const uint64_t> a) {
        for (std::size_t x = 0; x < empty; ++x) out[x] = base[x] + a[x];
        fn(out);
      });
      return;
    }
  }
}

Extremes AdaptiveExtremes(const BlackBoxAlgorithm& alg,
                          const DiscreteDistribution& d,
                          const NoiseModel& model, uint64_t m,
                          const AdaptiveSearch& search) {
  if (m == 0) throw std::invalid_argument("AdaptiveExtremes: m must be positive");
  Extremes out;
  const std::size_t size = d.domain().size();
  if (search.mode == AdaptiveMode::kExhaustive) {
    if (!alg.HasExactAcceptance()) {
      throw std::invalid_argument("AdaptiveExtremes: exhaustive mode needs exact acceptance");
    }
    const double work = MultisetCount(size, m) * CorruptionCount(model, size, m);
    if (work > search.max_evaluations) {
      throw std::invalid_argument("AdaptiveExtremes: instance too large to enumerate");
    }
    std::vector<std::vector<uint64_t>> samples;
    std::vector<double> weights;
    ForEachMultiset(size, m, [&](std::span<const uint64_t> counts) {
      const double p = MultinomialProbability(counts, d.weights());
      if (p == 0.0) return;
      samples.emplace_back(counts.begin(), counts.end());
      weights.push_back(p);
    });
    std::vector<std::pair<double, double>> inner(samples.size());
    std::vector<uint64_t> visited(samples.size(), 0);
    ParallelFor(samples.size(), [&](std::size_t i) {
      double hi = -1.0;
      double lo = 2.0;
      ForEachCorruption(model, samples[i], [&](std::span<const uint64_t> shat) {
        const double a = alg.ExactAcceptanceOnCounts(shat);
        hi = std::max(hi, a);
        lo = std::min(lo, a);
        ++visited[i];
      });
      inner[i] = {hi, lo};
    });
    double total = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      out.max += weights[i] * inner[i].first;
      out.min += weights[i] * inner[i].second;
      total += weights[i];
      out.breadth += visited[i];
    }
    out.max /= total;
    out.min /= total;
    out.mode = "exhaustive";
    return out;
  }

  const std::vector<AdaptiveStrategy> identity{IdentityAttack()};
  const auto& max_attacks = search.max_attacks.empty() ? identity : search.max_attacks;
  const auto& min_attacks = search.min_attacks.empty() ? identity : search.min_attacks;
  std::vector<std::pair<double, double>> per_trial(search.trials);
  ParallelFor(search.trials, [&](std::size_t t) {
    RandomSource rng(search.seed, t);
    const SampleMultiset s = SampleIid(d, m, rng);
    double hi = -1.0;
    double lo = 2.0;
    for (const auto& attack : max_attacks) {
      const auto shat = attack(s, model, rng);
      if (!model.AdaptiveFeasible(s, shat)) {
        throw std::runtime_error("AdaptiveExtremes: infeasible attack output");
      }
      hi = std::max(hi, alg.AcceptanceOn(shat, rng));
    }
    for (const auto& attack : min_attacks) {
      const auto shat = attack(s, model, rng);
      if (!model.AdaptiveFeasible(s, shat)) {
        throw std::runtime_error("AdaptiveExtremes: infeasible attack output");
      }
      lo = std::min(lo, alg.AcceptanceOn(shat, rng));
    }
    per_trial[t] = {hi, lo};
  });
  const double trials = static_cast<double>(search.trials);
  double sum_hi = 0.0, sum_lo = 0.0, sq_hi = 0.0, sq_lo = 0.0;
  for (const auto& [hi, lo] : per_trial) {
    sum_hi += hi;
    sum_lo += lo;
    sq_hi += hi * hi;
    sq_lo += lo * lo;
  }
  out.max = sum_hi / trials;
  out.min = sum_lo / trials;
  auto standard_error = [trials](double sum, double sq) {
    const double mean = sum / trials;
    const double var = std::max(0.0, sq / trials - mean * mean);
    return std::sqrt(var / trials);
  };
  out.max_standard_error = standard_error(sum_hi, sq_hi);
  out.min_standard_error = standard_error(sum_lo, sq_lo);
  out.mode = "attack";
  out.breadth = search.trials * (max_attacks.size() + min_attacks.size());
  return out;
}

EstimateResult EstimateExtremes(const BlackBoxAlgorithm& alg,
                                const AdditiveFamily& family,
                                const DiscreteDistribution& d, uint64_t r,
                                uint64_t seed) {
  if (family.size() == 0 || r == 0) {
    throw std::invalid_argument("EstimateExtremes: empty family or batch");
  }
  std::vector<std::vector<Element>> batch(r);
  for (uint64_t j = 0; j < r; ++j) {
    RandomSource rng(seed, j);
    batch[j] = SampleIidSequence(d, alg.n(), rng);
  }
  std::vector<double> estimates(family.size());
  ParallelFor(family.size(), [&](std::size_t i) {
    RandomSource rng(seed, r + i);
    const StochasticMap f = family.Member(i);
    uint64_t accepted = 0;
    for (const auto& s : batch) {
      const auto corrupted = ApplyStochastic(f, std::span<const Element>(s), rng);
      if (alg.Run(corrupted, rng)) ++accepted;
    }
    estimates[i] = static_cast<double>(accepted) / static_cast<double>(r);
  });
  EstimateResult out;
  out.repetitions = r;
  out.argmax = static_cast<std::size_t>(
      std::max_element(estimates.begin(), estimates.end()) - estimates.begin());
  out.argmin = static_cast<std::size_t>(
      std::min_element(estimates.begin(), estimates.end()) - estimates.begin());
  out.max = estimates[out.argmax];
  out.min = estimates[out.argmin];
  return out;
}

uint64_t EstimatorSampleSize(uint64_t m, double eps) {
  return static_cast<uint64_t>(std::ceil(
      static_cast<double>(m) * std::log(2.0 / eps) / (2.0 * eps * eps) - 1e-9));
}

uint64_t EstimatorBatchCount(double eps) {
  return static_cast<uint64_t>(
      std::ceil(std::log(2.0 / eps) / (2.0 * eps * eps) - 1e-9));
}

uint64_t EstimatorRepetitions(double family_size, double eps) {
  return static_cast<uint64_t>(
      std::ceil(std::log(2.0 * family_size / eps) / (2.0 * eps * eps) - 1e-9));
}

uint64_t DistinguisherSampleSize(uint64_t m_prime, double eps) {
  const double mp = static_cast<double>(m_prime);
  return static_cast<uint64_t>(std::ceil(14.0 * mp * mp / eps - 1e-9));
}

uint64_t DistinguisherBatchCount(double eps) {
  return static_cast<uint64_t>(std::ceil(6.0 / eps - 1e-9));
}

EquivalenceReport CheckEquivalence(const BlackBoxAlgorithm& alg,
                                   const DiscreteDistribution& d,
                                   const NoiseModel& model, uint64_t M,
                                   double epsilon,
                                   const ObliviousSearch& oblivious,
                                   const AdaptiveSearch& adaptive) {
  EquivalenceReport r;
  r.n = alg.n();
  r.M = M;
  r.epsilon = epsilon;
  r.oblivious = ObliviousExtremes(alg, d, model, oblivious);
  r.adaptive = AdaptiveExtremes(Subsampled(alg, d.domain().size()), d, model, M, adaptive);
  r.max_gap = std::abs(r.adaptive.max - r.oblivious.max);
  r.min_gap = std::abs(r.adaptive.min - r.oblivious.min);
  r.max_tolerance = epsilon + 3.0 * std::hypot(r.adaptive.max_standard_error,
                                               r.oblivious.max_standard_error);
  r.min_tolerance = epsilon + 3.0 * std::hypot(r.adaptive.min_standard_error,
                                               r.oblivious.min_standard_error);
  r.pass_max = r.max_gap <= r.max_tolerance;
  r.pass_min = r.min_gap <= r.min_tolerance;
  r.pass = r.pass_max && r.pass_min;
  return r;
}

DistinguisherReport DistinguisherTest(const DiscreteDistribution& d,
                                      uint64_t m_prime, uint64_t M,
                                      const SampleEstimator& estimator,
                                      double mu, double eps, uint64_t trials,
                                      uint64_t seed) {
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("DistinguisherTest: eps must lie in (0, 1]");
  }
  if (trials == 0) throw std::invalid_argument("DistinguisherTest: no trials");
  DistinguisherReport r;
  r.m_prime = m_prime;
  r.M = M;
  r.batch = DistinguisherBatchCount(eps);
  r.trials = trials;
  r.implied_tv = 1.0 / (2.0 * static_cast<double>(r.batch));
  std::vector<char> clean_ok(trials, 0), filtered_ok(trials, 0);
  ParallelFor(trials, [&](std::size_t t) {
    RandomSource rng(seed, t);
    auto says_clean = [&](bool filtered) {
      uint64_t far = 0;
      for (uint64_t b = 0; b < r.batch; ++b) {
        const std::vector<Element> s =
            filtered ? CoupledPair(d, m_prime, M, rng).filtered
                     : SampleIidSequence(d, m_prime, rng);
        if (std::abs(estimator(s, rng) - mu) > 2.0 * eps) ++far;
      }
      return static_cast<double>(far) < 2.0 * eps * static_cast<double>(r.batch);
    };
    clean_ok[t] = says_clean(false) ? 1 : 0;
    filtered_ok[t] = says_clean(true) ? 0 : 1;
  });
  uint64_t sc = 0, sf = 0;
  for (uint64_t t = 0; t < trials; ++t) {
    sc += static_cast<uint64_t>(clean_ok[t]);
    sf += static_cast<uint64_t>(filtered_ok[t]);
  }
  r.success_clean = static_cast<double>(sc) / static_cast<double>(trials);
  r.success_filtered = static_cast<double>(sf) / static_cast<double>(trials);
  r.success = 0.5 * (r.success_clean + r.success_filtered);
  return r;
}

}  // namespace advlab
