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

#include "ksubmax/dcg.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ksubmax/cuts.h"

namespace ksubmax {

const char* ToString(XiPolicy policy) {
  switch (policy) {
    case XiPolicy::kExact:
      return "exact";
    case XiPolicy::kZeta:
      return "zeta";
    case XiPolicy::kAuto:
      return "auto";
  }
  return "unknown";
}

std::optional<XiPolicy> ParseXiPolicy(std::string_view text) {
  if (text == "exact") return XiPolicy::kExact;
  if (text == "zeta") return XiPolicy::kZeta;
  if (text == "auto") return XiPolicy::kAuto;
  return std::nullopt;
}

const char* ToString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kGapLimit:
      return "gap_limit";
    case SolveStatus::kTimeLimit:
      return "time_limit";
    case SolveStatus::kInfeasible:
      return "infeasible";
  }
  return "unknown";
}

double RelativeGap(double lb, double ub) {
  if (!std::isfinite(lb) || !std::isfinite(ub)) {
    return std::numeric_limits<double>::infinity();
  }
  if (ub > 0) return (ub - lb) / ub;
  return (ub - lb) / std::max(1.0, std::abs(ub));
}

namespace {

using Clock = std::chrono::steady_clock;

// Exact xi costs k*n partitions enumerations of k^(n-1) points, two
// evaluations each.
std::uint64_t ExactXiCost(const GroundSet& g) {
  long double partitions = std::pow(static_cast<long double>(g.k()), g.n() - 1);
  long double cost = 2.0L * g.k() * g.n() * partitions;
  if (cost > 1e18L) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(cost);
}

class CutFactory {
 public:
  CutFactory(const ValueOracle& oracle, const SolveConfig& config)
      : oracle_(oracle), xi_(oracle.ground()) {
    if (oracle.monotone()) {
      source_ = "none";
      return;
    }
    bool exact = config.xi_policy == XiPolicy::kExact;
    if (config.xi_policy == XiPolicy::kAuto) {
      exact = ExactXiCost(oracle.ground()) <= config.exact_xi_budget;
    }
    if (exact) {
      XiOptions options;
      options.max_partitions = std::numeric_limits<std::uint64_t>::max();
      if (config.xi_policy == XiPolicy::kExact) options = XiOptions{};
      xi_ = XiExactAll(oracle, options);
      source_ = "exact";
    } else {
      zeta_ = XiBound(oracle);
      source_ = "zeta";
    }
  }

  Cut Build(const KSet& s) const {
    if (oracle_.monotone()) return BuildMonotoneCut(oracle_, s);
    if (zeta_) return BuildGeneralCut(oracle_, s, *zeta_);
    return BuildGeneralCut(oracle_, s, xi_);
  }

  const std::string& source() const { return source_; }

 private:
  const ValueOracle& oracle_;
  XiTable xi_;
  std::optional<double> zeta_;
  std::string source_;
};

}  // namespace

SolveReport Solve(const ValueOracle& oracle, const FeasibleRegion& region,
                  const SolveConfig& config) {
  if (!(config.epsilon > 0)) {
    throw std::invalid_argument("epsilon must be positive");
  }
  if (!(config.time_limit_s > 0)) {
    throw std::invalid_argument("time limit must be positive");
  }
  const Clock::time_point start = Clock::now();
  const auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(
                  std::chrono::duration<double>(config.time_limit_s));
  const GroundSet& g = oracle.ground();
  const std::uint64_t evaluations_before = oracle.evaluations();

  SolveReport report;
  const KSet empty(g);
  if (oracle.Evaluate(empty) != 0.0) {
    throw std::invalid_argument("oracle must satisfy f(empty) = 0");
  }
  MasterProblem master(g, CompileRegion(region, g), oracle.lower_bound());
  const CutFactory factory(oracle, config);
  report.xi_source = factory.source();

  master.AddCut(factory.Build(empty));
  for (const KSet& s : config.seed_cuts) {
    if (!(s.ground() == g)) throw DimensionError("seed k-set dimension");
    if (!master.HasCutFrom(s)) master.AddCut(factory.Build(s));
  }
  if (region.Admits(empty)) {
    report.lb = 0.0;
    report.incumbent = empty;
  }

  MilpOptions milp = config.milp;
  if (!milp.deadline || *milp.deadline > deadline) milp.deadline = deadline;

  auto finish = [&](SolveStatus status) {
    report.status = status;
    report.gap = RelativeGap(report.lb, report.ub);
    report.pool_size = static_cast<std::int64_t>(master.cuts().size());
    report.wall_time_s =
        std::chrono::duration<double>(Clock::now() - start).count();
    report.oracle_evaluations = oracle.evaluations() - evaluations_before;
    return report;
  };

  auto improve = [&](const KSet& x) {
    const double fx = oracle.Evaluate(x);
    if (!report.incumbent || fx > report.lb) {
      report.lb = fx;
      report.incumbent = x;
    }
    return fx;
  };

  while (true) {
    if (Clock::now() >= deadline) return finish(SolveStatus::kTimeLimit);
    if (config.max_iterations > 0 &&
        report.iterations >= config.max_iterations) {
      return finish(SolveStatus::kGapLimit);
    }
    ++report.iterations;
    const BbResult bb = BbSolve(master, milp);
    report.total_bb_nodes += bb.nodes;

    if (bb.status == BbStatus::kInfeasible) {
      // Only possible when no k-set satisfies the side constraints.
      report.ub = -std::numeric_limits<double>::infinity();
      return finish(SolveStatus::kInfeasible);
    }
    if (bb.status != BbStatus::kOptimal) {
      report.ub = std::min(report.ub, bb.bound);
      if (bb.has_incumbent) improve(FromCharVector(bb.x));
      report.trajectory.push_back({report.iterations, report.lb, report.ub});
      return finish(bb.status == BbStatus::kTimeLimit
                        ? SolveStatus::kTimeLimit
                        : SolveStatus::kGapLimit);
    }

    const double eta = bb.eta;
    report.ub = std::min(report.ub, eta);
    const KSet x = FromCharVector(bb.x);
    const double fx = improve(x);
    report.trajectory.push_back({report.iterations, report.lb, report.ub});

    if (RelativeGap(report.lb, report.ub) <= config.epsilon) {
      return finish(SolveStatus::kOptimal);
    }
    // A cut at x is tight there, so repeating it cannot move the master.
    if (eta <= fx || master.HasCutFrom(x)) {
      return finish(SolveStatus::kGapLimit);
    }
    if (eta - fx <= config.cut_violation_tol) ++report.weak_cuts;
    master.AddCut(factory.Build(x));
    ++report.cuts_added;
  }
}

nlohmann::json ConfigToJson(const SolveConfig& config) {
  nlohmann::json j;
  j["epsilon"] = config.epsilon;
  j["time_limit_s"] = config.time_limit_s;
  j["xi_policy"] = ToString(config.xi_policy);
  j["exact_xi_budget"] = config.exact_xi_budget;
  j["cut_violation_tol"] = config.cut_violation_tol;
  j["max_iterations"] = config.max_iterations;
  nlohmann::json seeds = nlohmann::json::array();
  for (const KSet& s : config.seed_cuts) seeds.push_back(ToString(s));
  j["seed_cuts"] = std::move(seeds);
  j["integrality_tol"] = config.milp.integrality_tol;
  j["prune_tol"] = config.milp.prune_tol;
  j["node_limit"] = config.milp.node_limit;
  j["lp_feasibility_tol"] = config.milp.simplex.feasibility_tol;
  j["lp_optimality_tol"] = config.milp.simplex.optimality_tol;
  return j;
}

namespace {

nlohmann::json Finite(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

nlohmann::json ReportToJson(const SolveReport& report) {
  nlohmann::json j;
  j["status"] = ToString(report.status);
  if (report.incumbent) {
    j["incumbent"] = ToString(*report.incumbent);
    j["incumbent_labels"] = std::vector<int>(report.incumbent->labels().begin(),
                                             report.incumbent->labels().end());
  } else {
    j["incumbent"] = nullptr;
    j["incumbent_labels"] = nullptr;
  }
  j["lb"] = Finite(report.lb);
  j["ub"] = Finite(report.ub);
  j["gap"] = Finite(report.gap);
  j["cuts_added"] = report.cuts_added;
  j["weak_cuts"] = report.weak_cuts;
  j["pool_size"] = report.pool_size;
  j["total_bb_nodes"] = report.total_bb_nodes;
  j["iterations"] = report.iterations;
  j["wall_time_s"] = report.wall_time_s;
  j["oracle_evaluations"] = report.oracle_evaluations;
  j["xi_source"] = report.xi_source;
  nlohmann::json traj = nlohmann::json::array();
  for (const auto& p : report.trajectory) {
    traj.push_back({{"iteration", p.iteration},
                    {"lb", Finite(p.lb)},
                    {"ub", Finite(p.ub)}});
  }
  j["trajectory"] = std::move(traj);
  return j;
}

std::string ReportCsvHeader() { return "n,t,B,time_s,cuts,nodes,end_gap"; }

std::string ReportCsvRow(const SolveReport& report, int n, int t,
                         const std::vector<int>& bounds) {
  std::ostringstream out;
  out << n << ',' << t << ",\"";
  for (std::size_t q = 0; q < bounds.size(); ++q) {
    if (q) out << ',';
    out << bounds[q];
  }
  out << "\"," << report.wall_time_s << ',' << report.cuts_added << ','
      << report.total_bb_nodes << ',';
  if (std::isfinite(report.gap)) out << report.gap;
  return out.str();
}

}  // namespace ksubmax
