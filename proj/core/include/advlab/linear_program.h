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

// A small dense two-phase simplex solver. Intended for the low-dimensional
// programs built by the SQ engine (tens to a few hundred variables).

#ifndef ADVLAB_LINEAR_PROGRAM_H_
#define ADVLAB_LINEAR_PROGRAM_H_

#include <cstddef>
#include <vector>

namespace advlab {

enum class Relation { kLessEqual, kGreaterEqual, kEqual };

struct LinearConstraint {
  std::vector<double> coefficients;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

// maximize objective . x subject to the constraints and x >= 0.
struct LinearProgram {
  std::size_t variable_count = 0;
  std::vector<double> objective;
  std::vector<LinearConstraint> constraints;

  explicit LinearProgram(std::size_t variables)
      : variable_count(variables), objective(variables, 0.0) {}

  // Returns a zeroed row of the right width.
  std::vector<double> Row() const { return std::vector<double>(variable_count, 0.0); }
  void Add(std::vector<double> coefficients, Relation relation, double rhs);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
};

// Two-phase tableau simplex with Bland's rule, so it cannot cycle.
LpSolution SolveLinearProgram(const LinearProgram& program,
                              double tolerance = 1e-10);

}  // namespace advlab

#endif  // ADVLAB_LINEAR_PROGRAM_H_
