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

#include "advlab/linear_program.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace advlab {
namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t columns)
      : a_(rows, std::vector<double>(columns, 0.0)), b_(rows, 0.0),
        basis_(rows, 0) {}

  std::vector<std::vector<double>>& a() { return a_; }
  std::vector<double>& b() { return b_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void Pivot(std::size_t row, std::size_t col) {
    const double scale = a_[row][col];
    for (double& v : a_[row]) v /= scale;
    b_[row] /= scale;
    a_[row][col] = 1.0;
    for (std::size_t r = 0; r < a_.size(); ++r) {
      if (r == row) continue;
      const double factor = a_[r][col];
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c < a_[r].size(); ++c) {
        a_[r][c] -= factor * a_[row][c];
      }
      a_[r][col] = 0.0;
      b_[r] -= factor * b_[row];
    }
    basis_[row] = col;
  }

  // Maximizes cost . x over columns with allowed[c]. Returns false if
  // unbounded.
  bool Optimize(const std::vector<double>& cost,
                const std::vector<bool>& allowed, double tol) {
    const std::size_t columns = cost.size();
    const std::size_t limit = 100000;
    for (std::size_t iter = 0; iter < limit; ++iter) {
      std::size_t entering = columns;
      for (std::size_t c = 0; c < columns && entering == columns; ++c) {
        if (!allowed[c]) continue;
        double reduced = cost[c];
        for (std::size_t r = 0; r < a_.size(); ++r) {
          reduced -= cost[basis_[r]] * a_[r][c];
        }
        if (reduced > tol) entering = c;
      }
      if (entering == columns) return true;
      std::size_t leaving = a_.size();
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < a_.size(); ++r) {
        if (a_[r][entering] <= tol) continue;
        const double ratio = b_[r] / a_[r][entering];
        if (ratio < best_ratio - tol ||
            (ratio <= best_ratio + tol && leaving < a_.size() &&
             basis_[r] < basis_[leaving])) {
          if (ratio < best_ratio) best_ratio = ratio;
          leaving = r;
        }
      }
      if (leaving == a_.size()) return false;
      Pivot(leaving, entering);
    }
    throw std::runtime_error("SolveLinearProgram: iteration limit reached");
  }

  double Value(const std::vector<double>& cost) const {
    double total = 0.0;
    for (std::size_t r = 0; r < a_.size(); ++r) total += cost[basis_[r]] * b_[r];
    return total;
  }

 private:
  std::vector<std::vector<double>> a_;
  std::vector<double> b_;
  std::vector<std::size_t> basis_;
};

}  // namespace

void LinearProgram::Add(std::vector<double> coefficients, Relation relation,
                        double rhs) {
  if (coefficients.size() != variable_count) {
    throw std::invalid_argument("LinearProgram::Add: wrong row width");
  }
  constraints.push_back({std::move(coefficients), relation, rhs});
}

LpSolution SolveLinearProgram(const LinearProgram& program, double tolerance) {
  const std::size_t n = program.variable_count;
  const std::size_t m = program.constraints.size();
  if (program.objective.size() != n) {
    throw std::invalid_argument("SolveLinearProgram: objective width");
  }
  // Column layout: originals, one slack or surplus per inequality, one
  // artificial per >= or = row.
  std::size_t slack_count = 0;
  std::size_t artificial_count = 0;
  std::vector<LinearConstraint> rows = program.constraints;
  for (auto& row : rows) {
    if (row.coefficients.size() != n) {
      throw std::invalid_argument("SolveLinearProgram: constraint width");
    }
    if (row.rhs < 0.0) {
      for (double& v : row.coefficients) v = -v;
      row.rhs = -row.rhs;
      if (row.relation == Relation::kLessEqual) {
        row.relation = Relation::kGreaterEqual;
      } else if (row.relation == Relation::kGreaterEqual) {
        row.relation = Relation::kLessEqual;
      }
    }
    if (row.relation != Relation::kEqual) ++slack_count;
    if (row.relation != Relation::kLessEqual) ++artificial_count;
  }
  const std::size_t columns = n + slack_count + artificial_count;
  const std::size_t first_artificial = n + slack_count;
  Tableau t(m, columns);
  std::size_t next_slack = n;
  std::size_t next_artificial = first_artificial;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& row = rows[r];
    for (std::size_t c = 0; c < n; ++c) t.a()[r][c] = row.coefficients[c];
    t.b()[r] = row.rhs;
    switch (row.relation) {
      case Relation::kLessEqual:
        t.a()[r][next_slack] = 1.0;
        t.basis()[r] = next_slack++;
        break;
      case Relation::kGreaterEqual:
        t.a()[r][next_slack++] = -1.0;
        t.a()[r][next_artificial] = 1.0;
        t.basis()[r] = next_artificial++;
        break;
      case Relation::kEqual:
        t.a()[r][next_artificial] = 1.0;
        t.basis()[r] = next_artificial++;
        break;
    }
  }

  std::vector<bool> allowed(columns, true);
  if (artificial_count > 0) {
    std::vector<double> phase1(columns, 0.0);
    for (std::size_t c = first_artificial; c < columns; ++c) phase1[c] = -1.0;
    t.Optimize(phase1, allowed, tolerance);
    if (t.Value(phase1) < -1e-9) return LpSolution{LpStatus::kInfeasible, 0.0, {}};
    // Drive remaining zero-valued artificials out of the basis.
    for (std::size_t r = 0; r < m; ++r) {
      if (t.basis()[r] < first_artificial) continue;
      for (std::size_t c = 0; c < first_artificial; ++c) {
        if (std::abs(t.a()[r][c]) > 1e-9) {
          t.Pivot(r, c);
          break;
        }
      }
    }
    for (std::size_t c = first_artificial; c < columns; ++c) allowed[c] = false;
  }

  std::vector<double> cost(columns, 0.0);
  for (std::size_t c = 0; c < n; ++c) cost[c] = program.objective[c];
  if (!t.Optimize(cost, allowed, tolerance)) {
    return LpSolution{LpStatus::kUnbounded, 0.0, {}};
  }
  LpSolution solution{LpStatus::kOptimal, 0.0, std::vector<double>(n, 0.0)};
  for (std::size_t r = 0; r < m; ++r) {
    if (t.basis()[r] < n) solution.x[t.basis()[r]] = std::max(0.0, t.b()[r]);
  }
  for (std::size_t c = 0; c < n; ++c) {
    solution.objective += program.objective[c] * solution.x[c];
  }
  return solution;
}

}  // namespace advlab
