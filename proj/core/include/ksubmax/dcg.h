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

// Delayed constraint generation: solve the master, evaluate f at its
// binary solution, add the k-submodular inequality generated there, repeat
// until the relative gap closes.

#ifndef KSUBMAX_DCG_H_
#define KSUBMAX_DCG_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ksubmax/kset.h"
#include "ksubmax/milp.h"
#include "ksubmax/oracle.h"
#include "ksubmax/region.h"

namespace ksubmax {

// Where non-monotone cuts get their removal penalties from.
//   kExact: exact minimum marginals (may throw XiCapExceeded).
//   kZeta:  the scalar lower - upper.
//   kAuto:  exact when its enumeration fits exact_xi_budget, else zeta.
enum class XiPolicy { kExact, kZeta, kAuto };

const char* ToString(XiPolicy policy);
std::optional<XiPolicy> ParseXiPolicy(std::string_view text);

struct SolveConfig {
  // Relative gap (UB - LB) / UB at which the loop stops; absolute against
  // max(1, |UB|) when UB <= 0.
  double epsilon = 1e-6;
  double time_limit_s = 3600.0;
  XiPolicy xi_policy = XiPolicy::kAuto;
  // Oracle evaluations the auto policy may spend on exact xi.
  std::uint64_t exact_xi_budget = 1'000'000;
  // Cuts generated at these k-sets join the cut at the empty k-set before
  // the first master solve.
  std::vector<KSet> seed_cuts;
  // Cuts whose violation at the master solution is at most this are
  // counted as weak_cuts; they are still added while the gap is open.
  double cut_violation_tol = 1e-7;
  // 0 means no limit.
  std::int64_t max_iterations = 0;
  MilpOptions milp;
};

nlohmann::json ConfigToJson(const SolveConfig& config);

enum class SolveStatus { kOptimal, kGapLimit, kTimeLimit, kInfeasible };

const char* ToString(SolveStatus status);

struct TrajectoryPoint {
  std::int64_t iteration;
  double lb;
  double ub;
};

struct SolveReport {
  SolveStatus status = SolveStatus::kInfeasible;
  std::optional<KSet> incumbent;
  double lb = -std::numeric_limits<double>::infinity();
  double ub = std::numeric_limits<double>::infinity();
  double gap = std::numeric_limits<double>::infinity();
  std::int64_t cuts_added = 0;
  std::int64_t weak_cuts = 0;
  std::int64_t pool_size = 0;
  std::int64_t total_bb_nodes = 0;
  std::int64_t iterations = 0;
  double wall_time_s = 0.0;
  std::uint64_t oracle_evaluations = 0;
  // "none" for monotone oracles, else "exact" or "zeta".
  std::string xi_source = "none";
  std::vector<TrajectoryPoint> trajectory;
};

// (UB - LB) / UB for UB > 0, (UB - LB) / max(1, |UB|) otherwise.
double RelativeGap(double lb, double ub);

// Requires f(empty) = 0 and matching dimensions between the oracle and any
// extra rows in the region.
SolveReport Solve(const ValueOracle& oracle, const FeasibleRegion& region,
                  const SolveConfig& config = {});

nlohmann::json ReportToJson(const SolveReport& report);

// One results-table row "n,t,B,time_s,cuts,nodes,end_gap"; B is
// written as a quoted comma list.
std::string ReportCsvHeader();
std::string ReportCsvRow(const SolveReport& report, int n, int t,
                         const std::vector<int>& bounds);

}  // namespace ksubmax

#endif  // KSUBMAX_DCG_H_
