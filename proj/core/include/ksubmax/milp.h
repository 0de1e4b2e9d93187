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

// The master problem
//
//   max eta  s.t.  eta <= c0 + c . x   for every cut in the pool,
//                  side constraints on x,
//                  x binary,  eta >= eta_lower,
//
// and a best-bound branch-and-bound solver for it built on simplex.h.

#ifndef KSUBMAX_MILP_H_
#define KSUBMAX_MILP_H_

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ksubmax/cuts.h"
#include "ksubmax/kset.h"
#include "ksubmax/simplex.h"

namespace ksubmax {

// sum_j coeff_j x_j (sense) rhs over x columns (GroundSet::VarIndex).
struct LinearConstraint {
  std::vector<std::pair<int, double>> terms;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;

  double Lhs(std::span<const double> x) const;
  bool SatisfiedBy(std::span<const double> x, double tol) const;
};

class MasterProblem {
 public:
  // Throws std::invalid_argument for empty or non-finite constraints and
  // DimensionError for out-of-range columns.
  MasterProblem(GroundSet ground, std::vector<LinearConstraint> side,
                double eta_lower);

  const GroundSet& ground() const { return ground_; }
  const std::vector<Cut>& cuts() const { return cuts_; }
  const std::vector<LinearConstraint>& side_constraints() const {
    return side_;
  }
  double eta_lower() const { return eta_lower_; }

  void AddCut(Cut cut);
  // True if a cut generated at `source` is already in the pool.
  bool HasCutFrom(const KSet& source) const;

  // min over the pool of the cut right-hand sides at x (+inf if empty).
  double CutEnvelope(const CharVector& x) const;

  // LP-format text: variables x_q_i (1-based q and i) and eta.
  std::string ToLpText() const;

 private:
  GroundSet ground_;
  std::vector<LinearConstraint> side_;
  double eta_lower_;
  std::vector<Cut> cuts_;
};

struct VarBounds {
  double lower = 0.0;
  double upper = 1.0;
};

struct MasterLpResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double eta = 0.0;
  int iterations = 0;
};

// LP relaxation with per-column bounds on x. An unbounded relaxation means
// the pool is empty, which is a caller bug; it throws std::logic_error.
MasterLpResult LpSolve(const MasterProblem& master,
                       std::span<const VarBounds> bounds,
                       const SimplexOptions& options = {});

struct MilpOptions {
  double integrality_tol = 1e-6;
  // Nodes whose bound does not beat the incumbent by more than this are
  // pruned.
  double prune_tol = 1e-9;
  std::int64_t node_limit = 5'000'000;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  SimplexOptions simplex;
};

enum class BbStatus { kOptimal, kInfeasible, kNodeLimit, kTimeLimit };

const char* ToString(BbStatus status);

struct BbResult {
  BbStatus status = BbStatus::kInfeasible;
  bool has_incumbent = false;
  CharVector x;
  // eta at the returned x, recomputed from the pool at the rounded point.
  double eta = -std::numeric_limits<double>::infinity();
  // Best bound over unexplored nodes; equals eta when optimal.
  double bound = -std::numeric_limits<double>::infinity();
  std::int64_t nodes = 0;

  explicit BbResult(GroundSet ground) : x(ground) {}
};

// Requires a non-empty cut pool. Branches on the most fractional column
// (lowest index on ties), explores nodes best bound first (older node on
// ties) and visits the x = 0 child before the x = 1 child.
BbResult BbSolve(const MasterProblem& master, const MilpOptions& options = {});

}  // namespace ksubmax

#endif  // KSUBMAX_MILP_H_
