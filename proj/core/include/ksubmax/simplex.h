// Copyright 2026 The ksubmax Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense bounded-variable primal simplex.
//
//   maximize    c . v
//   subject to  row_r . v  (<=, >=, =)  rhs_r
//               lower_j <= v_j <= upper_j      (bounds may be infinite)
//
// Every row gets a slack s_r = rhs_r - row_r . v whose sign is fixed by the
// row sense, so the initial basis is all slacks. Phase 1 minimizes the sum
// of bound violations of basic variables (composite objective); phase 2
// maximizes c. Pricing is Dantzig's rule until a streak of degenerate
// pivots, then Bland's rule until the next nondegenerate step.

#ifndef KSUBMAX_SIMPLEX_H_
#define KSUBMAX_SIMPLEX_H_

#include <span>
#include <vector>

namespace ksubmax {

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct LpProblem {
  int num_vars = 0;
  std::vector<double> objective;  // size num_vars
  std::vector<double> lower;      // size num_vars, may be -inf
  std::vector<double> upper;      // size num_vars, may be +inf
  std::vector<std::vector<double>> rows;  // dense, each of size num_vars
  std::vector<Sense> senses;
  std::vector<double> rhs;

  int num_rows() const { return static_cast<int>(rows.size()); }
  // Appends a row; returns its index.
  int AddRow(std::vector<double> coeffs, Sense sense, double rhs_value);
};

struct SimplexOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-11;
  int bland_after_degenerate = 50;
  int max_iterations = 200000;
  // Basic values are recomputed from the basis inverse this often.
  int refresh_every = 64;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* ToString(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> values;  // structural variables
  double objective = 0.0;
  int iterations = 0;
};

LpSolution SolveLp(const LpProblem& problem,
                   const SimplexOptions& options = {});
// Same problem with the variable bounds replaced.
LpSolution SolveLp(const LpProblem& problem, std::span<const double> lower,
                   std::span<const double> upper,
                   const SimplexOptions& options = {});

}  // namespace ksubmax

#endif  // KSUBMAX_SIMPLEX_H_
