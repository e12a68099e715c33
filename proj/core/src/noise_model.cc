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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "advlab/combinatorics.h"

namespace advlab {
namespace {

// Floors used for integer budgets tolerate values like 0.99999999999 that
// should be exactly 1.
constexpr double kFloorSlack = 1e-9;

using DistPair = std::pair<DiscreteDistribution, DiscreteDistribution>;

DiscreteDistribution RandomMix(const DiscreteDistribution& d, double weight_of_d,
                               RandomSource& rng) {
  return Mixture(weight_of_d, d, RandomDistribution(d.domain(), rng, 0.3));
}

DistPair RandomPair(const NoiseModel& model, std::size_t domain_size,
                    RandomSource& rng) {
  const Domain domain(domain_size);
  const bool finite = rng.Bernoulli(0.8);
  switch (model.kind()) {
    case NoiseKind::kAdditive: {
      auto d = RandomDistribution(domain, rng, 0.3);
      if (!finite) return {d, RandomDistribution(domain, rng, 0.3)};
      auto dhat = RandomMix(d, 1.0 - rng.Uniform01(), rng);
      return {std::move(d), std::move(dhat)};
    }
    case NoiseKind::kSubtractive: {
      auto dhat = RandomDistribution(domain, rng, 0.3);
      if (!finite) return {RandomDistribution(domain, rng, 0.3), dhat};
      auto d = RandomMix(dhat, 1.0 - rng.Uniform01(), rng);
      return {std::move(d), std::move(dhat)};
    }
    case NoiseKind::kNasty: {
      auto d = RandomDistribution(domain, rng, 0.3);
      auto dhat = finite ? RandomMix(d, rng.Uniform01(), rng)
                         : RandomDistribution(domain, rng, 0.3);
      return {std::move(d), std::move(dhat)};
    }
    case NoiseKind::kNastyClassification: {
      const std::size_t labels = model.label_count();
      auto d = RandomDistribution(domain, rng, 0.2);
      if (!finite) return {d, RandomDistribution(domain, rng, 0.2)};
      // Keep each feature's mass, redraw its label split.
      std::vector<double> w(domain_size, 0.0);
      for (std::size_t x = 0; x < domain_size / labels; ++x) {
        double mass = 0.0;
        for (std::size_t y = 0; y < labels; ++y) mass += d[x * labels + y];
        std::vector<double> split(labels);
        double total = 0.0;
        for (double& s : split) total += (s = 1.0 - rng.Uniform01());
        for (std::size_t y = 0; y < labels; ++y) {
          w[x * labels + y] = mass * split[y] / total;
        }
      }
      return {std::move(d), DiscreteDistribution::FromUnnormalized(
                                domain, std::move(w))};
    }
    case NoiseKind::kMaliciousEncoded: {
      const Domain base(domain_size - 1);
      auto d = RandomDistribution(base, rng, 0.3);
      auto d_enc = EncodeMalicious(d, model.eta());
      if (!finite) return {d_enc, RandomDistribution(domain, rng, 0.3)};
      auto mixed = RandomMix(d, 1.0 - model.eta(), rng);
      std::vector<double> w(mixed.weights().begin(), mixed.weights().end());
      w.push_back(0.0);
      return {std::move(d_enc), DiscreteDistribution(domain, std::move(w))};
    }
  }
  throw std::logic_error("RandomPair: unknown kind");
}

void AccumulateUniform(const SampleMultiset& s, double probability,
                       std::vector<double>& acc) {
  const double size = static_cast<double>(s.size());
  for (const auto& [x, c] : s.counts()) {
    acc[x] += probability * static_cast<double>(c) / size;
  }
}

LiftResult FinishLift(const NoiseModel& model, const DiscreteDistribution& d,
                      std::vector<double> acc, bool exact, uint64_t evaluated) {
  auto dhat = DiscreteDistribution::FromUnnormalized(d.domain(), std::move(acc));
  const double cost = model.Cost(d, dhat);
  return LiftResult{std::move(dhat), cost, cost <= model.eta() + kBudgetSlack,
                    exact, evaluated};
}

}  // namespace

std::string_view NoiseKindName(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kAdditive: return "additive";
    case NoiseKind::kSubtractive: return "subtractive";
    case NoiseKind::kNasty: return "nasty";
    case NoiseKind::kNastyClassification: return "nasty_classification";
    case NoiseKind::kMaliciousEncoded: return "malicious";
  }
  return "unknown";
}

NoiseKind ParseNoiseKind(std::string_view name) {
  for (NoiseKind k : {NoiseKind::kAdditive, NoiseKind::kSubtractive,
                      NoiseKind::kNasty, NoiseKind::kNastyClassification,
                      NoiseKind::kMaliciousEncoded}) {
    if (NoiseKindName(k) == name) return k;
  }
  throw std::invalid_argument("unknown noise kind: " + std::string(name));
}

NoiseModel::NoiseModel(NoiseKind kind, double eta, std::size_t label_count)
    : kind_(kind), eta_(eta), label_count_(label_count) {
  if (!(eta >= 0.0 && eta < 1.0)) {
    throw std::invalid_argument("NoiseModel: eta must lie in [0, 1)");
  }
  if (kind == NoiseKind::kNastyClassification && label_count < 1) {
    throw std::invalid_argument(
        "NoiseModel: nasty classification needs a label count");
  }
}

NoiseModel NoiseModel::Additive(double eta) {
  return NoiseModel(NoiseKind::kAdditive, eta, 0);
}
NoiseModel NoiseModel::Subtractive(double eta) {
  return NoiseModel(NoiseKind::kSubtractive, eta, 0);
}
NoiseModel NoiseModel::Nasty(double eta) {
  return NoiseModel(NoiseKind::kNasty, eta, 0);
}
NoiseModel NoiseModel::NastyClassification(double eta,
                                           std::size_t label_count) {
  return NoiseModel(NoiseKind::kNastyClassification, eta, label_count);
}
NoiseModel NoiseModel::MaliciousEncoded(double eta) {
  return NoiseModel(NoiseKind::kMaliciousEncoded, eta, 0);
}
NoiseModel NoiseModel::Make(NoiseKind kind, double eta,
                            std::size_t label_count) {
  return NoiseModel(kind, eta, label_count);
}

double NoiseModel::locality() const {
  return kind_ == NoiseKind::kSubtractive ? 1.0 / (1.0 - eta_) : 1.0;
}

double NoiseModel::Cost(const DiscreteDistribution& d,
                        const DiscreteDistribution& dhat) const {
  switch (kind_) {
    case NoiseKind::kAdditive: return AdditiveCost(d, dhat);
    case NoiseKind::kSubtractive: return SubtractiveCost(d, dhat);
    case NoiseKind::kNasty: return TvDistance(d, dhat);
    case NoiseKind::kNastyClassification:
      return NastyClassificationCost(d, dhat, label_count_);
    case NoiseKind::kMaliciousEncoded: return MaliciousCost(d, dhat);
  }
  throw std::logic_error("NoiseModel::Cost: unknown kind");
}

bool NoiseModel::ObliviousFeasible(const DiscreteDistribution& d,
                                   const DiscreteDistribution& dhat) const {
  return Cost(d, dhat) <= eta_ + kBudgetSlack;
}

bool NoiseModel::AdaptiveFeasible(const SampleMultiset& s,
                                  const SampleMultiset& shat) const {
  if (s.empty()) throw std::invalid_argument("AdaptiveFeasible: empty sample");
  if (shat.empty()) return false;
  return ObliviousFeasible(UniformOf(s), UniformOf(shat));
}

uint64_t NoiseModel::AdditiveBudget(uint64_t n) const {
  return static_cast<uint64_t>(
      std::floor(static_cast<double>(n) * eta_ / (1.0 - eta_) + kFloorSlack));
}

uint64_t NoiseModel::ReplacementBudget(uint64_t n) const {
  return static_cast<uint64_t>(
      std::floor(static_cast<double>(n) * eta_ + kFloorSlack));
}

uint64_t NoiseModel::RandomBudget(uint64_t n, RandomSource& rng) const {
  return rng.Binomial(n, eta_);
}

std::string NoiseModel::DebugString() const {
  std::ostringstream out;
  out << NoiseKindName(kind_) << "(eta=" << eta_;
  if (kind_ == NoiseKind::kNastyClassification) out << ", labels=" << label_count_;
  out << ")";
  return out.str();
}

double AdditiveCost(const DiscreteDistribution& d,
                    const DiscreteDistribution& dhat) {
  RequireSameDomain(d.domain(), dhat.domain(), "AdditiveCost");
  double min_ratio = kInfiniteCost;
  for (std::size_t x = 0; x < d.weights().size(); ++x) {
    if (d.weights()[x] > 0.0) {
      min_ratio = std::min(min_ratio, dhat.weights()[x] / d.weights()[x]);
    }
  }
  return std::clamp(1.0 - min_ratio, 0.0, 1.0);
}

double SubtractiveCost(const DiscreteDistribution& d,
                       const DiscreteDistribution& dhat) {
  return AdditiveCost(dhat, d);
}

DiscreteDistribution FeatureMarginal(const DiscreteDistribution& d,
                                     std::size_t label_count) {
  if (label_count == 0 || d.domain().size() % label_count != 0) {
    throw std::invalid_argument(
        "FeatureMarginal: domain is not a product with the label set");
  }
  std::vector<double> w(d.domain().size() / label_count, 0.0);
  for (std::size_t i = 0; i < d.domain().size(); ++i) {
    w[i / label_count] += d.weights()[i];
  }
  const Domain features(w.size());
  return DiscreteDistribution::FromUnnormalized(features, std::move(w));
}

double NastyClassificationCost(const DiscreteDistribution& d,
                               const DiscreteDistribution& dhat,
                               std::size_t label_count) {
  RequireSameDomain(d.domain(), dhat.domain(), "NastyClassificationCost");
  const auto m1 = FeatureMarginal(d, label_count);
  const auto m2 = FeatureMarginal(dhat, label_count);
  if (!m1.ApproxEquals(m2)) return kInfiniteCost;
  return TvDistance(d, dhat);
}

double MaliciousCost(const DiscreteDistribution& d_enc,
                     const DiscreteDistribution& dhat_enc) {
  RequireSameDomain(d_enc.domain(), dhat_enc.domain(), "MaliciousCost");
  const std::size_t empty = d_enc.domain().size() - 1;
  if (dhat_enc.weights()[empty] > kProbabilityTolerance) return kInfiniteCost;
  for (std::size_t x = 0; x < empty; ++x) {
    if (dhat_enc.weights()[x] < d_enc.weights()[x] - kProbabilityTolerance) {
      return kInfiniteCost;
    }
  }
  return 0.0;
}

DiscreteDistribution EncodeMalicious(const DiscreteDistribution& d,
                                     double eta) {
  if (!(eta >= 0.0 && eta < 1.0)) {
    throw std::invalid_argument("EncodeMalicious: eta must lie in [0, 1)");
  }
  std::vector<double> w;
  w.reserve(d.domain().size() + 1);
  for (double p : d.weights()) w.push_back((1.0 - eta) * p);
  w.push_back(eta);
  return DiscreteDistribution(Domain(d.domain().size() + 1), std::move(w));
}

MixtureClosureReport VerifyClosedUnderMixtures(const NoiseModel& model,
                                               std::size_t domain_size,
                                               uint64_t trials,
                                               RandomSource& rng) {
  if (domain_size < 2 || domain_size > 8) {
    throw std::invalid_argument(
        "VerifyClosedUnderMixtures: domain size must lie in [2, 8]");
  }
  if (model.kind() == NoiseKind::kNastyClassification &&
      domain_size % model.label_count() != 0) {
    throw std::invalid_argument(
        "VerifyClosedUnderMixtures: domain size not divisible by labels");
  }
  MixtureClosureReport report;
  report.trials = trials;
  for (uint64_t t = 0; t < trials; ++t) {
    const double theta = rng.Uniform01();
    auto [d1, d1hat] = RandomPair(model, domain_size, rng);
    auto [d2, d2hat] = RandomPair(model, domain_size, rng);
    const double rhs =
        std::max(model.Cost(d1, d1hat), model.Cost(d2, d2hat));
    const double lhs =
        model.Cost(Mixture(theta, d1, d2), Mixture(theta, d1hat, d2hat));
    if (std::isfinite(lhs) && std::isfinite(rhs)) ++report.finite_trials;
    if (lhs > rhs + kBudgetSlack) {
      ++report.violations;
      report.max_violation = std::max(
          report.max_violation, std::isfinite(rhs) ? lhs - rhs : kInfiniteCost);
    }
  }
  return report;
}

LiftResult LiftAdaptiveToOblivious(const NoiseModel& model,
                                   const DiscreteDistribution& d, uint64_t n,
                                   const AdaptiveStrategy& attack,
                                   uint64_t seed) {
  if (n == 0) throw std::invalid_argument("LiftAdaptiveToOblivious: n = 0");
  const std::size_t size = d.domain().size();
  if (TupleCount(size, n) > 1e6) {
    throw std::invalid_argument(
        "LiftAdaptiveToOblivious: more than 1e6 samples to enumerate");
  }
  std::vector<double> acc(size, 0.0);
  uint64_t index = 0;
  uint64_t evaluated = 0;
  ForEachTuple(size, n, [&](std::span<const uint32_t> tuple) {
    const uint64_t stream = index++;
    double probability = 1.0;
    for (uint32_t x : tuple) probability *= d.weights()[x];
    if (probability == 0.0) return;
    const auto s = SampleMultiset::FromElements(d.domain(), tuple);
    RandomSource rng(seed, stream);
    const auto shat = attack(s, model, rng);
    if (!model.AdaptiveFeasible(s, shat)) {
      throw std::runtime_error("LiftAdaptiveToOblivious: attack produced an "
                               "infeasible corruption of " + s.DebugString());
    }
    AccumulateUniform(shat, probability, acc);
    ++evaluated;
  });
  return FinishLift(model, d, std::move(acc), true, evaluated);
}

LiftResult LiftAdaptiveToObliviousMonteCarlo(const NoiseModel& model,
                                             const DiscreteDistribution& d,
                                             uint64_t n,
                                             const AdaptiveStrategy& attack,
                                             uint64_t trials, uint64_t seed) {
  if (n == 0 || trials == 0) {
    throw std::invalid_argument("LiftAdaptiveToObliviousMonteCarlo: empty run");
  }
  std::vector<double> acc(d.domain().size(), 0.0);
  const double weight = 1.0 / static_cast<double>(trials);
  for (uint64_t t = 0; t < trials; ++t) {
    RandomSource rng(seed, t);
    const auto s = SampleIid(d, n, rng);
    const auto shat = attack(s, model, rng);
    if (!model.AdaptiveFeasible(s, shat)) {
      throw std::runtime_error("LiftAdaptiveToObliviousMonteCarlo: attack "
                               "produced an infeasible corruption");
    }
    AccumulateUniform(shat, weight, acc);
  }
  return FinishLift(model, d, std::move(acc), false, trials);
}

}  // namespace advlab
