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

#include "ksubmax/milp.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace ksubmax {

double LinearConstraint::Lhs(std::span<const double> x) const {
  double lhs = 0.0;
  for (const auto& [col, coeff] : terms) lhs += coeff * x[col];
  return lhs;
}

bool LinearConstraint::SatisfiedBy(std::span<const double> x,
                                   double tol) const {
  const double lhs = Lhs(x);
  switch (sense) {
    case Sense::kLessEqual:
      return lhs <= rhs + tol;
    case Sense::kGreaterEqual:
      return lhs >= rhs - tol;
    case Sense::kEqual:
      return std::abs(lhs - rhs) <= tol;
  }
  return false;
}

MasterProblem::MasterProblem(GroundSet ground,
                             std::vector<LinearConstraint> side,
                             double eta_lower)
    : ground_(ground), side_(std::move(side)), eta_lower_(eta_lower) {
  if (!std::isfinite(eta_lower_)) {
    throw std::invalid_argument("eta lower bound must be finite");
  }
  for (const auto& c : side_) {
    if (!std::isfinite(c.rhs)) {
      throw std::invalid_argument("non-finite constraint right-hand side");
    }
    bool any_nonzero = false;
    for (const auto& [col, coeff] : c.terms) {
      if (col < 0 || col >= ground_.dim()) {
        throw DimensionError("constraint column outside the x vector");
      }
      if (!std::isfinite(coeff)) {
        throw std::invalid_argument("non-finite constraint coefficient");
      }
      if (coeff != 0.0) any_nonzero = true;
    }
    if (!any_nonzero) {
      throw std::invalid_argument("constraint has no nonzero coefficient");
    }
  }
}

void MasterProblem::AddCut(Cut cut) {
  if (!(cut.coeffs.ground() == ground_)) {
    throw DimensionError("cut dimension differs from the master problem");
  }
  cuts_.push_back(std::move(cut));
}

bool MasterProblem::HasCutFrom(const KSet& source) const {
  return std::any_of(cuts_.begin(), cuts_.end(),
                     [&](const Cut& c) { return c.source == source; });
}

double MasterProblem::CutEnvelope(const CharVector& x) const {
  double eta = std::numeric_limits<double>::infinity();
  for (const Cut& c : cuts_) eta = std::min(eta, CutRhs(c, x));
  return eta;
}

std::string MasterProblem::ToLpText() const {
  auto name = [&](int col) {
    const int q = col / ground_.n() + 1;
    const int i = col % ground_.n() + 1;
    return "x_" + std::to_string(q) + "_" + std::to_string(i);
  };
  auto term = [&](std::ostringstream& out, double coeff,
                  const std::string& var) {
    out << (coeff < 0 ? " - " : " + ") << std::abs(coeff) << ' ' << var;
  };
  std::ostringstream out;
  out << std::setprecision(17);
  out << "\\ k-submodular master problem: " << cuts_.size() << " cuts, "
      << side_.size() << " side constraints\n";
  out << "Maximize\n obj: eta\nSubject To\n";
  for (std::size_t r = 0; r < side_.size(); ++r) {
    out << " side" << r + 1 << ':';
    for (const auto& [col, coeff] : side_[r].terms) term(out, coeff, name(col));
    switch (side_[r].sense) {
      case Sense::kLessEqual:
        out << " <= ";
        break;
      case Sense::kGreaterEqual:
        out << " >= ";
        break;
      case Sense::kEqual:
        out << " = ";
        break;
    }
    out << side_[r].rhs << '\n';
  }
  for (std::size_t c = 0; c < cuts_.size(); ++c) {
    out << " cut" << c + 1 << ": eta";
    const auto& coeffs = cuts_[c].coeffs.values();
    for (int col = 0; col < ground_.dim(); ++col) {
      if (coeffs[col] != 0.0) term(out, -coeffs[col], name(col));
    }
    out << " <= " << cuts_[c].constant << '\n';
  }
  out << "Bounds\n eta >= " << eta_lower_ << '\n';
  for (int col = 0; col < ground_.dim(); ++col) {
    out << " 0 <= " << name(col) << " <= 1\n";
  }
  out << "Binaries\n";
  for (int col = 0; col < ground_.dim(); ++col) out << ' ' << name(col) << '\n';
  out << "End\n";
  return out.str();
}

namespace {

// Columns 0..dim-1 are x, column dim is eta. Side rows first, then cuts.
LpProblem BuildLp(const MasterProblem& master) {
  const int dim = master.ground().dim();
  LpProblem lp;
  lp.num_vars = dim + 1;
  lp.objective.assign(static_cast<std::size_t>(dim) + 1, 0.0);
  lp.objective[dim] = 1.0;
  lp.lower.assign(static_cast<std::size_t>(dim), 0.0);
  lp.lower.push_back(master.eta_lower());
  lp.upper.assign(static_cast<std::size_t>(dim), 1.0);
  lp.upper.push_back(std::numeric_limits<double>::infinity());
  for (const auto& c : master.side_constraints()) {
    std::vector<double> row(static_cast<std::size_t>(dim) + 1, 0.0);
    for (const auto& [col, coeff] : c.terms) row[col] += coeff;
    lp.AddRow(std::move(row), c.sense, c.rhs);
  }
  for (const auto& cut : master.cuts()) {
    std::vector<double> row(static_cast<std::size_t>(dim) + 1, 0.0);
    const auto& coeffs = cut.coeffs.values();
    for (int col = 0; col < dim; ++col) row[col] = -coeffs[col];
    row[dim] = 1.0;
    lp.AddRow(std::move(row), Sense::kLessEqual, cut.constant);
  }
  return lp;
}

}  // namespace

MasterLpResult LpSolve(const MasterProblem& master,
                       std::span<const VarBounds> bounds,
                       const SimplexOptions& options) {
  const int dim = master.ground().dim();
  if (bounds.size() != static_cast<std::size_t>(dim)) {
    throw DimensionError("one bound pair per x column expected");
  }
  const LpProblem lp = BuildLp(master);
  std::vector<double> lower(lp.lower);
  std::vector<double> upper(lp.upper);
  for (int col = 0; col < dim; ++col) {
    lower[col] = bounds[col].lower;
    upper[col] = bounds[col].upper;
  }
  const LpSolution sol = SolveLp(lp, lower, upper, options);
  if (sol.status == LpStatus::kUnbounded) {
    throw std::logic_error("master LP is unbounded; the cut pool is empty");
  }
  MasterLpResult out;
  out.status = sol.status;
  out.iterations = sol.iterations;
  if (sol.status == LpStatus::kOptimal) {
    out.x.assign(sol.values.begin(), sol.values.begin() + dim);
    out.eta = sol.values[dim];
  }
  return out;
}

const char* ToString(BbStatus status) {
  switch (status) {
    case BbStatus::kOptimal:
      return "optimal";
    case BbStatus::kInfeasible:
      return "infeasible";
    case BbStatus::kNodeLimit:
      return "node_limit";
    case BbStatus::kTimeLimit:
      return "time_limit";
  }
  return "unknown";
}

namespace {

struct Node {
  double bound;
  std::int64_t id;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> x;
};

struct WorseNode {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.id > b.id;
  }
};

}  // namespace

BbResult BbSolve(const MasterProblem& master, const MilpOptions& options) {
  if (master.cuts().empty()) {
    throw std::logic_error("branch-and-bound needs a non-empty cut pool");
  }
  const GroundSet& g = master.ground();
  const int dim = g.dim();
  const LpProblem lp = BuildLp(master);

  BbResult result(g);
  std::priority_queue<Node, std::vector<Node>, WorseNode> open;
  std::int64_t next_id = 0;
  std::vector<double> rounded(static_cast<std::size_t>(dim));

  auto beats_incumbent = [&](double bound) {
    return !result.has_incumbent || bound > result.eta + options.prune_tol;
  };

  // Solves the LP at the given bounds and either records an integral
  // incumbent or queues the node.
  auto evaluate = [&](std::vector<double> lower, std::vector<double> upper) {
    ++result.nodes;
    const LpSolution sol = SolveLp(lp, lower, upper, options.simplex);
    if (sol.status == LpStatus::kInfeasible) return;
    if (sol.status == LpStatus::kUnbounded) {
      throw std::logic_error("master LP is unbounded");
    }
    if (sol.status != LpStatus::kOptimal) {
      throw std::runtime_error("simplex iteration limit in branch-and-bound");
    }
    const double bound = sol.values[dim];
    if (!beats_incumbent(bound)) return;

    double worst = 0.0;
    for (int col = 0; col < dim; ++col) {
      const double v = sol.values[col];
      rounded[col] = std::round(v);
      worst = std::max(worst, std::abs(v - rounded[col]));
    }
    if (worst <= options.integrality_tol) {
      bool feasible = true;
      for (const auto& c : master.side_constraints()) {
        if (!c.SatisfiedBy(rounded, 1e-6)) feasible = false;
      }
      std::vector<std::uint8_t> bits(static_cast<std::size_t>(dim));
      for (int col = 0; col < dim; ++col) {
        bits[col] = rounded[col] > 0.5 ? 1 : 0;
      }
      CharVector x(g, std::move(bits));
      const double eta = master.CutEnvelope(x);
      if (feasible && eta >= master.eta_lower() - 1e-9 &&
          beats_incumbent(eta)) {
        result.has_incumbent = true;
        result.x = std::move(x);
        result.eta = eta;
      }
      if (feasible) return;
    }
    open.push(Node{bound, next_id++, std::move(lower), std::move(upper),
                   std::vector<double>(sol.values.begin(),
                                       sol.values.begin() + dim)});
  };

  std::vector<double> lower(lp.lower);
  std::vector<double> upper(lp.upper);
  evaluate(lower, upper);

  result.status = BbStatus::kOptimal;
  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (!beats_incumbent(node.bound)) continue;
    if (result.nodes >= options.node_limit) {
      open.push(std::move(node));
      result.status = BbStatus::kNodeLimit;
      break;
    }
    if (options.deadline &&
        std::chrono::steady_clock::now() >= *options.deadline) {
      open.push(std::move(node));
      result.status = BbStatus::kTimeLimit;
      break;
    }
    int branch = -1;
    double most = -1.0;
    for (int col = 0; col < dim; ++col) {
      if (node.lower[col] == node.upper[col]) continue;
      const double v = node.x[col];
      const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
      if (frac > most) {
        most = frac;
        branch = col;
      }
    }
    if (branch < 0) continue;  // fully fixed yet rounded point infeasible
    std::vector<double> down_upper = node.upper;
    down_upper[branch] = 0.0;
    evaluate(node.lower, std::move(down_upper));
    std::vector<double> up_lower = std::move(node.lower);
    up_lower[branch] = 1.0;
    evaluate(std::move(up_lower), std::move(node.upper));
  }

  if (result.status == BbStatus::kOptimal) {
    if (!result.has_incumbent) {
      result.status = BbStatus::kInfeasible;
    } else {
      result.bound = result.eta;
    }
  } else {
    result.bound = result.eta;
    while (!open.empty()) {
      result.bound = std::max(result.bound, open.top().bound);
      open.pop();
    }
  }
  return result;
}

}  // namespace ksubmax
