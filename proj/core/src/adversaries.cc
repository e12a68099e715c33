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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace advlab {
namespace {

// Elements of s (with repetition) ordered by psi value, ties by id. For
// kMin the order is reversed in value but still ascending in id.
std::vector<Element> OrderedByValue(const SampleMultiset& s,
                                    const StatisticalQuery& psi,
                                    Direction direction) {
  std::vector<Element> points = s.ToSequence();
  std::stable_sort(points.begin(), points.end(), [&](Element a, Element b) {
    return direction == Direction::kMax ? psi(a) < psi(b) : psi(a) > psi(b);
  });
  return points;
}

Element Extreme(const StatisticalQuery& psi, Direction direction) {
  return direction == Direction::kMax ? psi.Argmax() : psi.Argmin();
}

// Picks `count` distinct positions out of `size` uniformly.
std::vector<std::size_t> RandomPositions(std::size_t size, std::size_t count,
                                         RandomSource& rng) {
  std::vector<std::size_t> index(size);
  for (std::size_t i = 0; i < size; ++i) index[i] = i;
  count = std::min(count, size);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.UniformInt(size - i);
    std::swap(index[i], index[j]);
  }
  index.resize(count);
  return index;
}

std::size_t EmptySymbol(const SampleMultiset& s) {
  return s.domain().size() - 1;
}

SampleMultiset ClassificationSingleQuery(const SampleMultiset& s,
                                         const NoiseModel& model,
                                         const StatisticalQuery& psi,
                                         Direction direction) {
  const std::size_t labels = model.label_count();
  const double sign = direction == Direction::kMax ? 1.0 : -1.0;
  struct Move {
    double gain;
    Element from;
    Element to;
  };
  std::vector<Move> moves;
  for (Element x : s.ToSequence()) {
    const Element base = static_cast<Element>(x / labels * labels);
    Element best = x;
    for (std::size_t y = 0; y < labels; ++y) {
      const Element candidate = base + static_cast<Element>(y);
      if (sign * psi(candidate) > sign * psi(best)) best = candidate;
    }
    if (best != x) moves.push_back({sign * (psi(best) - psi(x)), x, best});
  }
  std::stable_sort(moves.begin(), moves.end(),
                   [](const Move& a, const Move& b) { return a.gain > b.gain; });
  SampleMultiset out = s;
  const uint64_t budget = model.ReplacementBudget(s.size());
  for (std::size_t i = 0; i < moves.size() && i < budget; ++i) {
    out.Remove(moves[i].from);
    out.Add(moves[i].to);
  }
  return out;
}

SampleMultiset FillEmptySlots(const SampleMultiset& s,
                              const std::function<Element()>& pick) {
  const Element empty = static_cast<Element>(EmptySymbol(s));
  SampleMultiset out = s;
  const uint64_t holes = s.Multiplicity(empty);
  if (holes == 0) return out;
  out.Remove(empty, holes);
  for (uint64_t i = 0; i < holes; ++i) out.Add(pick());
  return out;
}

}  // namespace

SampleMultiset AdditiveSingleQueryAttack(const SampleMultiset& s, double eta,
                                         const StatisticalQuery& psi,
                                         Direction direction) {
  if (s.empty()) throw std::invalid_argument("AdditiveSingleQueryAttack: empty sample");
  SampleMultiset out = s;
  out.Add(Extreme(psi, direction), NoiseModel::Additive(eta).AdditiveBudget(s.size()));
  return out;
}

SampleMultiset NastySingleQueryAttack(const SampleMultiset& s, double eta,
                                      const StatisticalQuery& psi,
                                      Direction direction) {
  if (s.empty()) throw std::invalid_argument("NastySingleQueryAttack: empty sample");
  const Element best = Extreme(psi, direction);
  const uint64_t budget = NoiseModel::Nasty(eta).ReplacementBudget(s.size());
  SampleMultiset out = s;
  const auto ordered = OrderedByValue(s, psi, direction);
  for (uint64_t i = 0; i < budget && i < ordered.size(); ++i) {
    if (psi(ordered[i]) == psi(best)) break;
    out.Remove(ordered[i]);
    out.Add(best);
  }
  return out;
}

SampleMultiset SubtractiveSingleQueryAttack(const SampleMultiset& s, double eta,
                                            const StatisticalQuery& psi,
                                            Direction direction) {
  if (s.empty()) throw std::invalid_argument("SubtractiveSingleQueryAttack: empty sample");
  const uint64_t budget = NoiseModel::Subtractive(eta).ReplacementBudget(s.size());
  const auto ordered = OrderedByValue(s, psi, direction);
  const double sign = direction == Direction::kMax ? 1.0 : -1.0;
  // Removing the k worst points is optimal for the right k; try every k.
  double total = 0.0;
  for (Element x : ordered) total += psi(x);
  double best_value = sign * total / static_cast<double>(ordered.size());
  uint64_t best_k = 0;
  for (uint64_t k = 1; k <= budget && k < ordered.size(); ++k) {
    total -= psi(ordered[k - 1]);
    const double value = sign * total / static_cast<double>(ordered.size() - k);
    if (value > best_value) {
      best_value = value;
      best_k = k;
    }
  }
  SampleMultiset out = s;
  for (uint64_t i = 0; i < best_k; ++i) out.Remove(ordered[i]);
  return out;
}

AdaptiveStrategy SingleQueryAttack(StatisticalQuery psi, Direction direction) {
  return [psi = std::move(psi), direction](const SampleMultiset& s,
                                           const NoiseModel& model,
                                           RandomSource&) {
    switch (model.kind()) {
      case NoiseKind::kAdditive:
        return AdditiveSingleQueryAttack(s, model.eta(), psi, direction);
      case NoiseKind::kNasty:
        return NastySingleQueryAttack(s, model.eta(), psi, direction);
      case NoiseKind::kSubtractive:
        return SubtractiveSingleQueryAttack(s, model.eta(), psi, direction);
      case NoiseKind::kNastyClassification:
        return ClassificationSingleQuery(s, model, psi, direction);
      case NoiseKind::kMaliciousEncoded: {
        const std::size_t empty = EmptySymbol(s);
        Element best = 0;
        for (Element x = 1; x < empty; ++x) {
          const bool better = direction == Direction::kMax ? psi(x) > psi(best)
                                                           : psi(x) < psi(best);
          if (better) best = x;
        }
        return FillEmptySlots(s, [best] { return best; });
      }
    }
    throw std::logic_error("SingleQueryAttack: unknown kind");
  };
}

AdaptiveStrategy IdentityAttack() {
  return [](const SampleMultiset& s, const NoiseModel&, RandomSource&) {
    return s;
  };
}

AdaptiveStrategy PointMassAttack(Element target) {
  return [target](const SampleMultiset& s, const NoiseModel& model,
                  RandomSource&) {
    SampleMultiset out = s;
    const uint64_t budget = model.ReplacementBudget(s.size());
    switch (model.kind()) {
      case NoiseKind::kAdditive:
        out.Add(target, model.AdditiveBudget(s.size()));
        return out;
      case NoiseKind::kNasty:
      case NoiseKind::kSubtractive: {
        uint64_t used = 0;
        for (const auto& [x, c] : s.counts()) {
          if (x == target) continue;
          const uint64_t take = std::min(c, budget - used);
          out.Remove(x, take);
          if (model.kind() == NoiseKind::kNasty) out.Add(target, take);
          used += take;
          if (used == budget) break;
        }
        return out;
      }
      case NoiseKind::kNastyClassification: {
        const std::size_t labels = model.label_count();
        const std::size_t label = target % labels;
        uint64_t used = 0;
        for (const auto& [x, c] : s.counts()) {
          if (x % labels == label) continue;
          const uint64_t take = std::min(c, budget - used);
          out.Remove(x, take);
          out.Add(static_cast<Element>(x / labels * labels + label), take);
          used += take;
          if (used == budget) break;
        }
        return out;
      }
      case NoiseKind::kMaliciousEncoded:
        if (target >= EmptySymbol(s)) {
          throw std::invalid_argument("PointMassAttack: target is the empty symbol");
        }
        return FillEmptySlots(s, [target] { return target; });
    }
    throw std::logic_error("PointMassAttack: unknown kind");
  };
}

AdaptiveStrategy RandomFeasibleAttack() {
  return [](const SampleMultiset& s, const NoiseModel& model,
            RandomSource& rng) {
    const std::size_t size = s.domain().size();
    auto random_element = [&] { return static_cast<Element>(rng.UniformInt(size)); };
    const uint64_t budget = model.ReplacementBudget(s.size());
    switch (model.kind()) {
      case NoiseKind::kAdditive: {
        SampleMultiset out = s;
        const uint64_t extra = model.AdditiveBudget(s.size());
        for (uint64_t i = 0; i < extra; ++i) out.Add(random_element());
        return out;
      }
      case NoiseKind::kNasty:
      case NoiseKind::kSubtractive:
      case NoiseKind::kNastyClassification: {
        std::vector<Element> points = s.ToSequence();
        std::vector<bool> dropped(points.size(), false);
        for (std::size_t i : RandomPositions(points.size(), budget, rng)) {
          if (model.kind() == NoiseKind::kSubtractive) {
            dropped[i] = true;
          } else if (model.kind() == NoiseKind::kNasty) {
            points[i] = random_element();
          } else {
            const std::size_t labels = model.label_count();
            points[i] = static_cast<Element>(points[i] / labels * labels +
                                             rng.UniformInt(labels));
          }
        }
        SampleMultiset out(s.domain());
        for (std::size_t i = 0; i < points.size(); ++i) {
          if (!dropped[i]) out.Add(points[i]);
        }
        return out;
      }
      case NoiseKind::kMaliciousEncoded:
        return FillEmptySlots(s, [&] {
          return static_cast<Element>(rng.UniformInt(size - 1));
        });
    }
    throw std::logic_error("RandomFeasibleAttack: unknown kind");
  };
}

AdaptiveStrategy NamedAttack(std::string_view name, Element target) {
  if (name == "identity") return IdentityAttack();
  if (name == "additive_point_mass" || name == "nasty_swap") {
    return PointMassAttack(target);
  }
  if (name == "cluster_majority") {
    throw std::invalid_argument(
        "cluster_majority acts on hypercube samples; use MajorityClusterAttack");
  }
  throw std::invalid_argument("unknown attack: " + std::string(name));
}

StrongAdaptiveStrategy::StrongAdaptiveStrategy(AdaptiveStrategy base,
                                               uint64_t n, double c)
    : base_(std::move(base)), n_(n), c_(c) {
  if (!(c > 0.0)) throw std::invalid_argument("StrongAdaptiveWrap: c must be > 0");
  if (n == 0) throw std::invalid_argument("StrongAdaptiveWrap: n must be > 0");
  p_ = std::min(1.0, c / std::sqrt(static_cast<double>(n)));
}

SampleMultiset StrongAdaptiveStrategy::Perturb(const SampleMultiset& shat,
                                               RandomSource& rng) const {
  if (shat.empty()) return shat;
  std::vector<Element> points = shat.ToSequence();
  const uint64_t k = std::min<uint64_t>(points.size(), rng.Binomial(n_, p_));
  if (k == 0) return shat;
  const std::vector<Element> source = points;
  for (std::size_t i : RandomPositions(points.size(), k, rng)) {
    points[i] = source[rng.UniformInt(source.size())];
  }
  return SampleMultiset::FromElements(shat.domain(), points);
}

StrongAdaptiveStrategy::Output StrongAdaptiveStrategy::Run(
    const SampleMultiset& s, const NoiseModel& model, RandomSource& rng) const {
  SampleMultiset first = base_(s, model, rng);
  SampleMultiset second = Perturb(first, rng);
  return Output{std::move(first), std::move(second)};
}

AdaptiveStrategy StrongAdaptiveStrategy::AsAdaptive() const {
  return [self = *this](const SampleMultiset& s, const NoiseModel& model,
                        RandomSource& rng) {
    return self.Run(s, model, rng).second_stage;
  };
}

StrongAdaptiveStrategy StrongAdaptiveWrap(AdaptiveStrategy base, uint64_t n,
                                          double c) {
  return StrongAdaptiveStrategy(std::move(base), n, c);
}

DiscreteDistribution ObliviousPointMass(const DiscreteDistribution& d,
                                        const NoiseModel& model,
                                        Element target) {
  const Domain domain = d.domain();
  const double eta = model.eta();
  std::vector<double> w(d.weights().begin(), d.weights().end());
  switch (model.kind()) {
    case NoiseKind::kAdditive:
      return Mixture(1.0 - eta, d, DiscreteDistribution::PointMass(domain, target));
    case NoiseKind::kNasty: {
      double moved = 0.0;
      for (std::size_t x = 0; x < w.size() && moved < eta; ++x) {
        if (x == target) continue;
        const double take = std::min(w[x], eta - moved);
        w[x] -= take;
        moved += take;
      }
      w[target] += moved;
      return DiscreteDistribution::FromUnnormalized(domain, std::move(w));
    }
    case NoiseKind::kSubtractive: {
      const double boosted = std::min(1.0, w[target] / (1.0 - eta));
      const double rest = 1.0 - w[target];
      for (std::size_t x = 0; x < w.size(); ++x) {
        if (x != target && rest > 0.0) w[x] *= (1.0 - boosted) / rest;
      }
      w[target] = boosted;
      return DiscreteDistribution::FromUnnormalized(domain, std::move(w));
    }
    case NoiseKind::kNastyClassification: {
      const std::size_t labels = model.label_count();
      const std::size_t label = target % labels;
      double moved = 0.0;
      for (std::size_t x = 0; x < w.size() && moved < eta; ++x) {
        if (x % labels == label) continue;
        const double take = std::min(w[x], eta - moved);
        w[x] -= take;
        w[x / labels * labels + label] += take;
        moved += take;
      }
      return DiscreteDistribution::FromUnnormalized(domain, std::move(w));
    }
    case NoiseKind::kMaliciousEncoded: {
      const std::size_t empty = w.size() - 1;
      w[target] += w[empty];
      w[empty] = 0.0;
      return DiscreteDistribution::FromUnnormalized(domain, std::move(w));
    }
  }
  throw std::logic_error("ObliviousPointMass: unknown kind");
}

}  // namespace advlab
