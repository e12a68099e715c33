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

#include "oracles.h"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace advlab::oracle {
namespace {

uint64_t Power(uint64_t base, uint64_t exp) {
  uint64_t r = 1;
  for (uint64_t i = 0; i < exp; ++i) r *= base;
  return r;
}

// Digits of `index` in base `base`, most significant first.
std::vector<uint32_t> Digits(uint64_t index, uint64_t base, uint64_t length) {
  std::vector<uint32_t> out(length);
  for (uint64_t i = length; i-- > 0;) {
    out[i] = static_cast<uint32_t>(index % base);
    index /= base;
  }
  return out;
}

void CountVectors(std::size_t domain_size, uint64_t total, std::size_t slot,
                  std::vector<uint64_t>& current,
                  std::vector<std::vector<uint64_t>>& out) {
  if (slot + 1 == domain_size) {
    current[slot] = total;
    out.push_back(current);
    return;
  }
  for (uint64_t c = 0; c <= total; ++c) {
    current[slot] = c;
    CountVectors(domain_size, total - c, slot + 1, current, out);
  }
}

double Binomial(uint64_t n, uint64_t k) {
  double r = 1.0;
  for (uint64_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace

uint64_t TupleIndex(std::span<const uint32_t> tuple, std::size_t domain_size) {
  uint64_t index = 0;
  for (uint32_t x : tuple) index = index * domain_size + x;
  return index;
}

std::vector<double> ProductTuples(const DiscreteDistribution& d, uint64_t m) {
  const uint64_t size = d.domain().size();
  std::vector<double> out(Power(size, m));
  for (uint64_t i = 0; i < out.size(); ++i) {
    double p = 1.0;
    for (uint32_t x : Digits(i, size, m)) p *= d[x];
    out[i] = p;
  }
  return out;
}

std::vector<double> SubsetTuples(const DiscreteDistribution& d, uint64_t m,
                                 uint64_t M) {
  const uint64_t size = d.domain().size();
  std::vector<double> out(Power(size, m), 0.0);
  const double index_weight = 1.0 / static_cast<double>(Power(M, m));
  for (uint64_t y = 0; y < Power(size, M); ++y) {
    const auto ys = Digits(y, size, M);
    double py = 1.0;
    for (uint32_t x : ys) py *= d[x];
    if (py == 0.0) continue;
    for (uint64_t j = 0; j < Power(M, m); ++j) {
      const auto picks = Digits(j, M, m);
      std::vector<uint32_t> tuple(m);
      for (uint64_t i = 0; i < m; ++i) tuple[i] = ys[picks[i]];
      out[TupleIndex(tuple, size)] += py * index_weight;
    }
  }
  return out;
}

double HalfL1(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("HalfL1: size mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) total += std::abs(p[i] - q[i]);
  return total / 2.0;
}

double AdditiveCostByGrid(const DiscreteDistribution& d,
                          const DiscreteDistribution& dhat, double h) {
  for (double eta = 0.0; eta <= 1.0 + h / 2; eta += h) {
    bool ok = true;
    for (std::size_t x = 0; x < d.domain().size(); ++x) {
      if (dhat[x] - (1.0 - eta) * d[x] < -1e-12) ok = false;
    }
    if (ok) return eta;
  }
  return 1.0;
}

std::vector<std::vector<uint64_t>> AllCountVectors(std::size_t domain_size,
                                                   uint64_t total) {
  std::vector<std::vector<uint64_t>> out;
  std::vector<uint64_t> current(domain_size, 0);
  CountVectors(domain_size, total, 0, current, out);
  return out;
}

std::vector<std::vector<uint64_t>> AllCorruptions(const NoiseModel& model,
                                                  std::span<const uint64_t> counts) {
  uint64_t n = 0;
  for (uint64_t c : counts) n += c;
  const std::size_t size = counts.size();
  std::vector<std::vector<uint64_t>> out;
  switch (model.kind()) {
    case NoiseKind::kAdditive: {
      const auto budget = static_cast<uint64_t>(
          std::floor(static_cast<double>(n) * model.eta() / (1.0 - model.eta()) + 1e-9));
      for (uint64_t total = n; total <= n + budget; ++total) {
        for (auto& v : AllCountVectors(size, total)) {
          bool dominates = true;
          for (std::size_t x = 0; x < size; ++x) dominates = dominates && v[x] >= counts[x];
          if (dominates) out.push_back(v);
        }
      }
      return out;
    }
    case NoiseKind::kSubtractive: {
      const auto budget =
          static_cast<uint64_t>(std::floor(model.eta() * static_cast<double>(n) + 1e-9));
      for (uint64_t total = (n > budget ? n - budget : 1); total <= n; ++total) {
        for (auto& v : AllCountVectors(size, total)) {
          bool below = true;
          for (std::size_t x = 0; x < size; ++x) below = below && v[x] <= counts[x];
          if (below) out.push_back(v);
        }
      }
      return out;
    }
    case NoiseKind::kNasty: {
      const auto budget =
          static_cast<uint64_t>(std::floor(model.eta() * static_cast<double>(n) + 1e-9));
      for (auto& v : AllCountVectors(size, n)) {
        uint64_t moved = 0;
        for (std::size_t x = 0; x < size; ++x) moved += counts[x] > v[x] ? counts[x] - v[x] : 0;
        if (moved <= budget) out.push_back(v);
      }
      return out;
    }
    default:
      throw std::invalid_argument("AllCorruptions: unsupported model");
  }
}

double EmpiricalMean(const StatisticalQuery& psi, std::span<const uint64_t> counts) {
  double total = 0.0;
  uint64_t n = 0;
  for (std::size_t x = 0; x < counts.size(); ++x) {
    total += psi(static_cast<Element>(x)) * static_cast<double>(counts[x]);
    n += counts[x];
  }
  return total / static_cast<double>(n);
}

Lp2dResult Maximize2d(std::span<const double> c,
                      const std::vector<std::vector<double>>& a,
                      std::span<const double> b) {
  // Add x >= 0 and y >= 0 as -x <= 0, -y <= 0.
  std::vector<std::vector<double>> rows = a;
  std::vector<double> rhs(b.begin(), b.end());
  rows.push_back({-1.0, 0.0});
  rhs.push_back(0.0);
  rows.push_back({0.0, -1.0});
  rhs.push_back(0.0);
  Lp2dResult best;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      const double det = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0];
      if (std::abs(det) < 1e-12) continue;
      const double x = (rhs[i] * rows[j][1] - rows[i][1] * rhs[j]) / det;
      const double y = (rows[i][0] * rhs[j] - rhs[i] * rows[j][0]) / det;
      bool ok = true;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r][0] * x + rows[r][1] * y > rhs[r] + 1e-9) ok = false;
      }
      if (!ok) continue;
      const double v = c[0] * x + c[1] * y;
      if (!best.feasible || v > best.value) best = {true, v};
    }
  }
  return best;
}

double IidAcceptance(const std::function<bool(std::span<const uint32_t>)>& decide,
                     std::span<const double> q, std::size_t n) {
  double total = 0.0;
  for (uint64_t i = 0; i < Power(q.size(), n); ++i) {
    const auto tuple = Digits(i, q.size(), n);
    if (!decide(tuple)) continue;
    double p = 1.0;
    for (uint32_t x : tuple) p *= q[x];
    total += p;
  }
  return total;
}

bool TruthTable2x2(uint64_t table, uint32_t x1, uint32_t x2) {
  return (table >> (2 * x1 + x2) & 1) != 0;
}

namespace {

double Acceptance2x2(uint64_t table, double q1) {
  const double q[2] = {1.0 - q1, q1};
  double total = 0.0;
  for (uint32_t a = 0; a < 2; ++a) {
    for (uint32_t b = 0; b < 2; ++b) {
      if (TruthTable2x2(table, a, b)) total += q[a] * q[b];
    }
  }
  return total;
}

}  // namespace

AdaptivePair AdaptiveAdditive2x2(uint64_t table, double p, uint64_t M, double eta) {
  const auto budget = static_cast<uint64_t>(
      std::floor(static_cast<double>(M) * eta / (1.0 - eta) + 1e-9));
  AdaptivePair out;
  for (uint64_t ones = 0; ones <= M; ++ones) {
    const double w = Binomial(M, ones) * std::pow(p, static_cast<double>(ones)) *
                     std::pow(1.0 - p, static_cast<double>(M - ones));
    double hi = -1.0, lo = 2.0;
    for (uint64_t c = 0; c <= budget; ++c) {
      for (uint64_t add1 = 0; add1 <= c; ++add1) {
        const double q1 = static_cast<double>(ones + add1) / static_cast<double>(M + c);
        const double acc = Acceptance2x2(table, q1);
        hi = std::max(hi, acc);
        lo = std::min(lo, acc);
      }
    }
    out.max += w * hi;
    out.min += w * lo;
  }
  return out;
}

AdaptivePair ObliviousAdditive2x2(uint64_t table, double p, double eta, uint64_t steps) {
  AdaptivePair out{-1.0, 2.0};
  for (uint64_t i = 0; i <= steps; ++i) {
    const double e = static_cast<double>(i) / static_cast<double>(steps);
    const double acc = Acceptance2x2(table, (1.0 - eta) * p + eta * e);
    out.max = std::max(out.max, acc);
    out.min = std::min(out.min, acc);
  }
  return out;
}

ExactContraction ExactTvContraction(const std::vector<std::vector<double>>& rows,
                                    std::span<const double> d1, std::span<const double> d2) {
  using boost::multiprecision::cpp_rational;
  // Stored weights sum to 1 only up to rounding; renormalize exactly so the
  // kernel is stochastic and both inputs are distributions.
  auto normalized = [](std::span<const double> w) {
    std::vector<cpp_rational> out(w.begin(), w.end());
    cpp_rational total = 0;
    for (const auto& v : out) total += v;
    for (auto& v : out) v /= total;
    return out;
  };
  const auto p1 = normalized(d1);
  const auto p2 = normalized(d2);
  std::vector<std::vector<cpp_rational>> kernel;
  for (const auto& r : rows) kernel.push_back(normalized(r));
  const std::size_t size = p1.size();
  cpp_rational original = 0;
  for (std::size_t x = 0; x < size; ++x) original += abs(p1[x] - p2[x]);
  cpp_rational pushed = 0;
  for (std::size_t y = 0; y < kernel.front().size(); ++y) {
    cpp_rational diff = 0;
    for (std::size_t x = 0; x < size; ++x) diff += (p1[x] - p2[x]) * kernel[x][y];
    pushed += abs(diff);
  }
  ExactContraction out;
  out.holds = pushed <= original;
  out.pushed = static_cast<double>(pushed / 2);
  out.original = static_cast<double>(original / 2);
  return out;
}

}  // namespace advlab::oracle
