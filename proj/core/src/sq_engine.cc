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

#include "advlab/sq_engine.h"

#include <algorithm>
#include <limits>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "advlab/adversaries.h"
#include "advlab/combinatorics.h"
#include "advlab/linear_program.h"
#include "advlab/parallel.h"

namespace advlab {
namespace {

// Slack on the rounding tie rule, in units of tau. Values that are a tie up
// to floating-point error (0.35 / 0.1 = 3.4999999999999996) round up.
constexpr double kTieSlack = 1e-9;

// Slack added to every closed interval test against tau.
constexpr double kIntervalSlack = 1e-12;

template <typename Source>
Transcript RunTranscriptImpl(const SqAlgorithm& alg, const Source& source) {
  Transcript t;
  t.tau = alg.tau();
  std::vector<double> prefix;
  for (std::size_t i = 0; i < alg.k(); ++i) {
    const StatisticalQuery q = alg.Query(prefix);
    const int64_t multiple = RoundToTauMultiple(q.Eval(source), alg.tau());
    t.multiples.push_back(multiple);
    prefix.push_back(static_cast<double>(multiple) * alg.tau());
  }
  return t;
}

std::string PrefixKey(std::span<const double> prefix, double tau) {
  std::string key;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (i > 0) key += ",";
    key += std::to_string(RoundToTauMultiple(prefix[i], tau));
  }
  return key;
}

// The feasible region {p : cost(d, p) <= eta} as LP rows over the first
// |X| variables. Nasty-type models use |X| extra variables.
LinearProgram FeasibleRegion(const NoiseModel& model,
                             const DiscreteDistribution& d) {
  const std::size_t size = d.domain().size();
  const bool tv_budget = model.kind() == NoiseKind::kNasty ||
                         model.kind() == NoiseKind::kNastyClassification;
  LinearProgram lp(tv_budget ? 2 * size : size);
  const double eta = model.eta();
  auto row = lp.Row();
  for (std::size_t x = 0; x < size; ++x) row[x] = 1.0;
  lp.Add(row, Relation::kEqual, 1.0);
  switch (model.kind()) {
    case NoiseKind::kAdditive:
      for (std::size_t x = 0; x < size; ++x) {
        if (d[x] <= 0.0) continue;
        auto r = lp.Row();
        r[x] = 1.0;
        lp.Add(r, Relation::kGreaterEqual, (1.0 - eta) * d[x] - kBudgetSlack);
      }
      break;
    case NoiseKind::kSubtractive:
      for (std::size_t x = 0; x < size; ++x) {
        auto r = lp.Row();
        r[x] = 1.0;
        lp.Add(r, Relation::kLessEqual, d[x] / (1.0 - eta) + kBudgetSlack);
      }
      break;
    case NoiseKind::kNastyClassification: {
      const std::size_t labels = model.label_count();
      const auto marginal = FeatureMarginal(d, labels);
      for (std::size_t f = 0; f < size / labels; ++f) {
        auto r = lp.Row();
        for (std::size_t y = 0; y < labels; ++y) r[f * labels + y] = 1.0;
        lp.Add(r, Relation::kEqual, marginal[static_cast<Element>(f)]);
      }
      [[fallthrough]];
    }
    case NoiseKind::kNasty: {
      // u_x >= p_x - d_x and sum u <= eta bound the positive part of p - d,
      // which equals the TV distance.
      for (std::size_t x = 0; x < size; ++x) {
        auto r = lp.Row();
        r[size + x] = 1.0;
        r[x] = -1.0;
        lp.Add(r, Relation::kGreaterEqual, -d[x]);
      }
      auto r = lp.Row();
      for (std::size_t x = 0; x < size; ++x) r[size + x] = 1.0;
      lp.Add(r, Relation::kLessEqual, eta + kBudgetSlack);
      break;
    }
    case NoiseKind::kMaliciousEncoded: {
      const std::size_t empty = size - 1;
      auto r = lp.Row();
      r[empty] = 1.0;
      lp.Add(r, Relation::kLessEqual, 0.0);
      for (std::size_t x = 0; x < empty; ++x) {
        auto rx = lp.Row();
        rx[x] = 1.0;
        lp.Add(rx, Relation::kGreaterEqual, d[x] - kProbabilityTolerance);
      }
      break;
    }
  }
  return lp;
}

double OptimizeQuery(const StatisticalQuery& psi, const NoiseModel& model,
                     const DiscreteDistribution& d, double sign) {
  LinearProgram lp = FeasibleRegion(model, d);
  for (std::size_t x = 0; x < d.domain().size(); ++x) {
    lp.objective[x] = sign * psi(static_cast<Element>(x));
  }
  const LpSolution sol = SolveLinearProgram(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw std::runtime_error("ObliviousQueryRange: feasible region is empty");
  }
  return sign * sol.objective;
}

// Largest increase of psi obtainable by moving `budget` mass from the
// lowest-valued elements onto the argmax.
double NastyShift(const StatisticalQuery& psi, const DiscreteDistribution& d,
                  double budget, double sign) {
  const std::size_t size = d.domain().size();
  std::vector<Element> order(size);
  for (std::size_t x = 0; x < size; ++x) order[x] = static_cast<Element>(x);
  std::stable_sort(order.begin(), order.end(), [&](Element a, Element b) {
    return sign * psi(a) < sign * psi(b);
  });
  const double best = sign * psi(order.back());
  double shift = 0.0;
  for (Element x : order) {
    if (budget <= 0.0) break;
    const double take = std::min(budget, d[x]);
    shift += take * (best - sign * psi(x));
    budget -= take;
  }
  return sign * shift;
}

bool HasCloseDistribution(const SampleMultiset& shat,
                          const DiscreteDistribution& d, const SqAlgorithm& alg,
                          const NoiseModel& model) {
  const Transcript t = RunTranscript(alg, shat);
  const auto queries = QueriesAlong(alg, t);
  const auto values = t.values();
  return FindCloseDistribution(model, d, queries, values, alg.tau()).has_value();
}

}  // namespace

double RoundToTau(double v, double tau) {
  return static_cast<double>(RoundToTauMultiple(v, tau)) * tau;
}

int64_t RoundToTauMultiple(double v, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("RoundToTau: tau must be > 0");
  return static_cast<int64_t>(std::floor(v / tau + 0.5 + kTieSlack));
}

std::vector<double> Transcript::values() const {
  std::vector<double> out(multiples.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = value(i);
  return out;
}

SqAlgorithm::SqAlgorithm(std::size_t k, double tau, NextQuery next,
                         Accept accept)
    : k_(k), tau_(tau), next_(std::move(next)), accept_(std::move(accept)) {
  if (k == 0) throw std::invalid_argument("SqAlgorithm: k must be positive");
  if (!(tau > 0.0 && tau <= 2.0)) {
    throw std::invalid_argument("SqAlgorithm: tau must lie in (0, 2]");
  }
  if (!next_) throw std::invalid_argument("SqAlgorithm: missing query map");
}

SqAlgorithm SqAlgorithm::NonAdaptive(std::vector<StatisticalQuery> queries,
                                     Accept accept) {
  if (queries.empty()) throw std::invalid_argument("NonAdaptive: no queries");
  const double tau = queries.front().tau();
  const std::size_t k = queries.size();
  return SqAlgorithm(
      k, tau,
      [queries = std::move(queries)](std::span<const double> prefix) {
        return queries.at(prefix.size());
      },
      std::move(accept));
}

SqAlgorithm SqAlgorithm::FromTable(const SqTable& table) {
  if (table.queries.empty()) throw std::invalid_argument("FromTable: no queries");
  std::vector<StatisticalQuery> queries;
  for (const auto& phi : table.queries) queries.emplace_back(phi, table.tau);
  for (const auto& [key, index] : table.branch) {
    if (index >= queries.size()) {
      throw std::invalid_argument("FromTable: branch '" + key +
                                  "' names a missing query");
    }
  }
  if (table.k > queries.size() && table.branch.empty()) {
    throw std::invalid_argument("FromTable: fewer queries than k");
  }
  const double tau = table.tau;
  const double threshold = table.accept_threshold;
  return SqAlgorithm(
      table.k, tau,
      [queries, branch = table.branch, tau](std::span<const double> prefix) {
        auto it = branch.find(PrefixKey(prefix, tau));
        const std::size_t index =
            it != branch.end() ? it->second : prefix.size();
        return queries.at(index);
      },
      [threshold](std::span<const double> values) {
        double total = 0.0;
        for (double v : values) total += v;
        return total >= threshold;
      });
}

StatisticalQuery SqAlgorithm::Query(std::span<const double> prefix) const {
  StatisticalQuery q = next_(prefix);
  if (std::abs(q.tau() - tau_) > 1e-15) {
    throw std::logic_error("SqAlgorithm: query tolerance differs from tau");
  }
  return q;
}

bool SqAlgorithm::Accepts(const Transcript& transcript) const {
  if (!accept_) return true;
  const auto values = transcript.values();
  return accept_(values);
}

Transcript RunTranscript(const SqAlgorithm& alg, const SampleMultiset& s) {
  return RunTranscriptImpl(alg, s);
}

Transcript RunTranscript(const SqAlgorithm& alg, const DiscreteDistribution& d) {
  return RunTranscriptImpl(alg, d);
}

std::vector<StatisticalQuery> QueriesAlong(const SqAlgorithm& alg,
                                           const Transcript& transcript) {
  std::vector<StatisticalQuery> out;
  const auto values = transcript.values();
  for (std::size_t i = 0; i < transcript.size(); ++i) {
    out.push_back(alg.Query(std::span<const double>(values).first(i)));
  }
  return out;
}

bool IsRepresentative(const SampleMultiset& s, const DiscreteDistribution& d,
                      const SqAlgorithm& alg) {
  if (s.empty()) throw std::invalid_argument("IsRepresentative: empty sample");
  const Transcript t = RunTranscript(alg, s);
  const auto queries = QueriesAlong(alg, t);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (std::abs(t.value(i) - queries[i].Eval(d)) > alg.tau() + kIntervalSlack) {
      return false;
    }
  }
  return true;
}

Interval ObliviousQueryRange(const StatisticalQuery& psi,
                             const DiscreteDistribution& d,
                             const NoiseModel& model) {
  const double center = psi.Eval(d);
  const double eta = model.eta();
  switch (model.kind()) {
    case NoiseKind::kAdditive:
      return {(1.0 - eta) * center + eta * psi.MinValue(),
              (1.0 - eta) * center + eta * psi.MaxValue()};
    case NoiseKind::kNasty:
      return {center + NastyShift(psi, d, eta, -1.0),
              center + NastyShift(psi, d, eta, 1.0)};
    default:
      return {OptimizeQuery(psi, model, d, -1.0), OptimizeQuery(psi, model, d, 1.0)};
  }
}

std::optional<DiscreteDistribution> FindCloseDistribution(
    const NoiseModel& model, const DiscreteDistribution& d,
    std::span<const StatisticalQuery> queries, std::span<const double> values,
    double tau) {
  if (queries.size() != values.size()) {
    throw std::invalid_argument("FindCloseDistribution: size mismatch");
  }
  LinearProgram lp = FeasibleRegion(model, d);
  const std::size_t size = d.domain().size();
  for (std::size_t i = 0; i < queries.size(); ++i) {
    RequireSameDomain(queries[i].domain(), d.domain(), "FindCloseDistribution");
    auto r = lp.Row();
    for (std::size_t x = 0; x < size; ++x) r[x] = queries[i](static_cast<Element>(x));
    lp.Add(r, Relation::kLessEqual, values[i] + tau + kIntervalSlack);
    lp.Add(r, Relation::kGreaterEqual, values[i] - tau - kIntervalSlack);
  }
  const LpSolution sol = SolveLinearProgram(lp);
  if (sol.status != LpStatus::kOptimal) return std::nullopt;
  std::vector<double> p(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(size));
  return DiscreteDistribution::FromUnnormalized(d.domain(), std::move(p));
}

std::string_view VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kTrue: return "true";
    case Verdict::kFalse: return "false";
    case Verdict::kUnknown: return "unknown";
  }
  return "unknown";
}

RobustnessResult IsRobustlyRepresentative(const SampleMultiset& s,
                                          const DiscreteDistribution& d,
                                          const SqAlgorithm& alg,
                                          const NoiseModel& model,
                                          const RobustnessSearch& search) {
  if (s.empty()) throw std::invalid_argument("IsRobustlyRepresentative: empty sample");
  RobustnessResult result;
  const double tau = alg.tau();

  if (alg.k() == 1 && (model.kind() == NoiseKind::kAdditive ||
                       model.kind() == NoiseKind::kNasty)) {
    result.method = "exact_single_query";
    const StatisticalQuery psi = alg.Query({});
    const Interval range = ObliviousQueryRange(psi, d, model);
    RandomSource unused(0, 0);
    for (Direction dir : {Direction::kMax, Direction::kMin}) {
      SampleMultiset shat = SingleQueryAttack(psi, dir)(s, model, unused);
      ++result.corruptions_checked;
      const double v = RoundToTau(psi.Eval(shat), tau);
      if (v > range.hi + tau + kIntervalSlack || v < range.lo - tau - kIntervalSlack) {
        result.verdict = Verdict::kFalse;
        result.witness = std::move(shat);
        return result;
      }
    }
    result.verdict = Verdict::kTrue;
    return result;
  }

  const std::size_t size = d.domain().size();
  const uint64_t n = s.size();
  uint64_t min_size = n;
  uint64_t max_size = n;
  if (model.kind() == NoiseKind::kAdditive) max_size = n + model.AdditiveBudget(n);
  if (model.kind() == NoiseKind::kSubtractive) {
    min_size = std::max<uint64_t>(1, n - model.ReplacementBudget(n));
  }
  double total = 0.0;
  for (uint64_t m = min_size; m <= max_size; ++m) total += MultisetCount(size, m);

  if (size <= 4 && total <= static_cast<double>(search.max_enumerated)) {
    result.method = "enumeration";
    bool failed = false;
    for (uint64_t m = min_size; m <= max_size && !failed; ++m) {
      ForEachMultiset(size, m, [&](std::span<const uint64_t> counts) {
        if (failed) return;
        SampleMultiset shat = SampleMultiset::FromCounts(d.domain(), counts);
        if (!model.AdaptiveFeasible(s, shat)) return;
        ++result.corruptions_checked;
        if (!HasCloseDistribution(shat, d, alg, model)) {
          failed = true;
          result.witness = std::move(shat);
        }
      });
    }
    result.verdict = failed ? Verdict::kFalse : Verdict::kTrue;
    return result;
  }

  result.method = "heuristic";
  std::vector<SampleMultiset> candidates;
  const Transcript t = RunTranscript(alg, s);
  RandomSource rng(search.seed, 0);
  for (const StatisticalQuery& q : QueriesAlong(alg, t)) {
    for (Direction dir : {Direction::kMax, Direction::kMin}) {
      candidates.push_back(SingleQueryAttack(q, dir)(s, model, rng));
    }
  }
  const AdaptiveStrategy random_attack = RandomFeasibleAttack();
  for (uint64_t i = 0; i < search.random_restarts; ++i) {
    RandomSource attack_rng(search.seed, i + 1);
    candidates.push_back(random_attack(s, model, attack_rng));
  }
  for (auto& shat : candidates) {
    if (!model.AdaptiveFeasible(s, shat)) continue;
    ++result.corruptions_checked;
    if (!HasCloseDistribution(shat, d, alg, model)) {
      result.verdict = Verdict::kFalse;
      result.witness = std::move(shat);
      return result;
    }
  }
  result.verdict = Verdict::kUnknown;
  return result;
}

StatisticalQuery SeparatingQuery::Composite(
    std::span<const StatisticalQuery> queries, double tau) const {
  return CombineQueries(queries, weights, tau);
}

std::vector<std::vector<double>> MomentPolytopeVertices(
    std::span<const StatisticalQuery> queries, const DiscreteDistribution& d,
    double eta) {
  std::vector<double> center(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) center[i] = queries[i].Eval(d);
  std::vector<std::vector<double>> vertices(d.domain().size(),
                                            std::vector<double>(queries.size()));
  for (std::size_t x = 0; x < vertices.size(); ++x) {
    for (std::size_t i = 0; i < queries.size(); ++i) {
      vertices[x][i] =
          (1.0 - eta) * center[i] + eta * queries[i](static_cast<Element>(x));
    }
  }
  return vertices;
}

std::optional<SeparatingQuery> FindSeparatingQuery(
    std::span<const StatisticalQuery> queries, std::span<const double> values,
    const DiscreteDistribution& d, const NoiseModel& model) {
  if (model.kind() != NoiseKind::kAdditive) {
    throw std::invalid_argument("FindSeparatingQuery: additive noise only");
  }
  const std::size_t k = queries.size();
  if (k == 0 || k != values.size()) {
    throw std::invalid_argument("FindSeparatingQuery: size mismatch");
  }
  if (k > 20) throw std::invalid_argument("FindSeparatingQuery: k > 20");
  const double tau = queries.front().tau();
  const auto vertices = MomentPolytopeVertices(queries, d, model.eta());

  // Variables: p (k), q (k), T+, T-, delta. w = p - q and T = T+ - T-.
  const std::size_t t_plus = 2 * k;
  const std::size_t t_minus = 2 * k + 1;
  const std::size_t delta = 2 * k + 2;
  LinearProgram lp(2 * k + 3);
  lp.objective[delta] = 1.0;
  for (const auto& a : vertices) {
    auto r = lp.Row();
    for (std::size_t i = 0; i < k; ++i) {
      r[i] = a[i];
      r[k + i] = -a[i];
    }
    r[t_plus] = -1.0;
    r[t_minus] = 1.0;
    lp.Add(r, Relation::kLessEqual, 0.0);
  }
  // min over the outer box of w.b is w.v - tau ||w||_1; it must clear T by
  // delta. Using p + q for |w| is exact at any optimum.
  {
    auto r = lp.Row();
    for (std::size_t i = 0; i < k; ++i) {
      r[i] = values[i] - tau;
      r[k + i] = -values[i] - tau;
    }
    r[t_plus] = -1.0;
    r[t_minus] = 1.0;
    r[delta] = -1.0;
    lp.Add(r, Relation::kGreaterEqual, 0.0);
  }
  {
    auto r = lp.Row();
    for (std::size_t i = 0; i < 2 * k; ++i) r[i] = 1.0;
    lp.Add(r, Relation::kLessEqual, 1.0);
  }
  const LpSolution sol = SolveLinearProgram(lp);
  if (sol.status != LpStatus::kOptimal || sol.x[delta] <= 1e-10) return std::nullopt;

  SeparatingQuery out;
  out.weights.resize(k);
  double l1 = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    out.weights[i] = sol.x[i] - sol.x[k + i];
    l1 += std::abs(out.weights[i]);
  }
  if (l1 <= 0.0) return std::nullopt;
  for (double& w : out.weights) w /= l1;
  out.threshold = -std::numeric_limits<double>::infinity();
  for (const auto& a : vertices) {
    double dot = 0.0;
    for (std::size_t i = 0; i < k; ++i) dot += out.weights[i] * a[i];
    out.threshold = std::max(out.threshold, dot);
  }
  double wv = 0.0;
  for (std::size_t i = 0; i < k; ++i) wv += out.weights[i] * values[i];
  out.margin = wv - tau - out.threshold;
  if (out.margin <= 0.0) return std::nullopt;
  return out;
}

double ConcentrationFailureBound(double tau, uint64_t n, double locality,
                                 std::size_t k) {
  return std::exp(-tau * tau * static_cast<double>(n) / (8.0 * locality * locality) +
                  static_cast<double>(k) * std::log(2.0 / tau + 1.0));
}

double SingleQueryTailBound(double tau, uint64_t n, double locality) {
  return std::exp(-tau * tau * static_cast<double>(n) / (8.0 * locality * locality));
}

ConcentrationRow SqConcentrationExperiment(const SqAlgorithm& alg,
                                           const DiscreteDistribution& d,
                                           const NoiseModel& model, uint64_t n,
                                           uint64_t trials, uint64_t seed,
                                           const RobustnessSearch& search) {
  if (n == 0 || trials == 0) {
    throw std::invalid_argument("SqConcentrationExperiment: empty run");
  }
  std::vector<Verdict> verdicts(trials);
  ParallelFor(trials, [&](std::size_t t) {
    RandomSource rng(seed, t);
    const SampleMultiset s = SampleIid(d, n, rng);
    RobustnessSearch local = search;
    local.seed = MixBits(seed ^ MixBits(t));
    verdicts[t] = IsRobustlyRepresentative(s, d, alg, model, local).verdict;
  });
  ConcentrationRow row;
  row.n = n;
  row.trials = trials;
  row.seed = seed;
  for (Verdict v : verdicts) {
    if (v == Verdict::kFalse) ++row.failures;
    if (v == Verdict::kUnknown) ++row.unknowns;
  }
  const double p = static_cast<double>(row.failures) / static_cast<double>(trials);
  row.empirical_failure = p;
  row.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  row.theory_bound =
      ConcentrationFailureBound(alg.tau(), n, model.locality(), alg.k());
  return row;
}

ExceedanceRow SingleQueryExceedance(const StatisticalQuery& psi,
                                    const DiscreteDistribution& d,
                                    const NoiseModel& model, double threshold,
                                    uint64_t n, uint64_t trials, uint64_t seed) {
  if (n == 0 || trials == 0) {
    throw std::invalid_argument("SingleQueryExceedance: empty run");
  }
  const AdaptiveStrategy attack = SingleQueryAttack(psi, Direction::kMax);
  const double tau = psi.tau();
  std::vector<char> hit(trials, 0);
  ParallelFor(trials, [&](std::size_t t) {
    RandomSource rng(seed, t);
    const SampleMultiset s = SampleIid(d, n, rng);
    const SampleMultiset shat = attack(s, model, rng);
    hit[t] = psi.Eval(shat) >= threshold + tau / 2.0 ? 1 : 0;
  });
  ExceedanceRow row;
  row.n = n;
  row.trials = trials;
  row.seed = seed;
  row.threshold = threshold;
  for (char h : hit) row.exceedances += static_cast<uint64_t>(h);
  const double p = static_cast<double>(row.exceedances) / static_cast<double>(trials);
  row.rate = p;
  row.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  row.bound = SingleQueryTailBound(tau, n, model.locality());
  return row;
}

}  // namespace advlab
