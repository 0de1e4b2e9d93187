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

#include "ksubmax/simplex.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ksubmax {

const char* ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration_limit";
  }
  return "unknown";
}

int LpProblem::AddRow(std::vector<double> coeffs, Sense sense,
                      double rhs_value) {
  if (coeffs.size() != static_cast<std::size_t>(num_vars)) {
    throw std::invalid_argument("LP row length differs from num_vars");
  }
  rows.push_back(std::move(coeffs));
  senses.push_back(sense);
  rhs.push_back(rhs_value);
  return num_rows() - 1;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Condensed tableau: one row per basic variable, one column per nonbasic
// variable, x_B = beta - T x_N. Variables 0..nv-1 are structural and
// nv..nv+m-1 are row slacks, so the basis starts as the slacks with T = A.
class Tableau {
 public:
  Tableau(const LpProblem& p, std::span<const double> lower,
          std::span<const double> upper, const SimplexOptions& options)
      : opt_(options),
        m_(p.num_rows()),
        nv_(p.num_vars),
        t_(static_cast<std::size_t>(m_) * nv_),
        beta_(p.rhs),
        lo_(nv_ + m_),
        hi_(nv_ + m_),
        cost_(nv_ + m_, 0.0),
        value_(nv_ + m_, 0.0),
        basic_(m_),
        nonbasic_(nv_) {
    for (int j = 0; j < nv_; ++j) {
      lo_[j] = lower[j];
      hi_[j] = upper[j];
      cost_[j] = p.objective[j];
      if (std::isfinite(lo_[j])) {
        value_[j] = lo_[j];
      } else if (std::isfinite(hi_[j])) {
        value_[j] = hi_[j];
      }
      nonbasic_[j] = j;
    }
    for (int r = 0; r < m_; ++r) {
      const int s = nv_ + r;
      switch (p.senses[r]) {
        case Sense::kLessEqual:
          lo_[s] = 0.0;
          hi_[s] = kInf;
          break;
        case Sense::kGreaterEqual:
          lo_[s] = -kInf;
          hi_[s] = 0.0;
          break;
        case Sense::kEqual:
          lo_[s] = 0.0;
          hi_[s] = 0.0;
          break;
      }
      std::copy(p.rows[r].begin(), p.rows[r].end(), Row(r));
      basic_[r] = s;
    }
    Refresh();
  }

  LpSolution Run() {
    LpSolution out;
    for (int j = 0; j < nv_; ++j) {
      if (lo_[j] > hi_[j]) {
        out.status = LpStatus::kInfeasible;
        return out;
      }
    }
    std::vector<double> cb(static_cast<std::size_t>(m_));
    std::vector<double> d(static_cast<std::size_t>(nv_));
    int iterations = 0;
    int degenerate_streak = 0;
    bool bland = false;
    bool fresh = true;  // no pivot since the last Refresh()
    while (true) {
      if (iterations >= opt_.max_iterations) {
        out.status = LpStatus::kIterationLimit;
        break;
      }
      if (iterations > 0 && iterations % opt_.refresh_every == 0 && !fresh) {
        Refresh();
        fresh = true;
      }

      // Composite phase 1 prices the sum of bound violations.
      bool phase1 = false;
      for (int r = 0; r < m_; ++r) {
        const int j = basic_[r];
        const double x = value_[j];
        if (x < lo_[j] - opt_.feasibility_tol) {
          cb[r] = 1.0;
          phase1 = true;
        } else if (x > hi_[j] + opt_.feasibility_tol) {
          cb[r] = -1.0;
          phase1 = true;
        } else {
          cb[r] = 0.0;
        }
      }
      if (!phase1) {
        for (int r = 0; r < m_; ++r) cb[r] = cost_[basic_[r]];
      }
      for (int c = 0; c < nv_; ++c) d[c] = phase1 ? 0.0 : cost_[nonbasic_[c]];
      for (int r = 0; r < m_; ++r) {
        if (cb[r] == 0.0) continue;
        const double* row = Row(r);
        for (int c = 0; c < nv_; ++c) d[c] -= cb[r] * row[c];
      }

      int enter = -1;
      int dir = 0;
      double best = 0.0;
      for (int c = 0; c < nv_; ++c) {
        const int j = nonbasic_[c];
        if (lo_[j] == hi_[j]) continue;
        int jdir = 0;
        if (d[c] > opt_.optimality_tol && value_[j] < hi_[j]) {
          jdir = 1;
        } else if (d[c] < -opt_.optimality_tol && value_[j] > lo_[j]) {
          jdir = -1;
        } else {
          continue;
        }
        const bool take =
            enter < 0 ||
            (bland ? j < nonbasic_[enter]
                   : std::abs(d[c]) > best ||
                         (std::abs(d[c]) == best && j < nonbasic_[enter]));
        if (take) {
          best = std::abs(d[c]);
          enter = c;
          dir = jdir;
        }
      }

      if (enter < 0) {
        if (!fresh) {
          // Confirm against recomputed basic values before concluding.
          Refresh();
          fresh = true;
          continue;
        }
        out.status = phase1 ? LpStatus::kInfeasible : LpStatus::kOptimal;
        break;
      }

      // Ratio test.
      const int ej = nonbasic_[enter];
      double flip_theta = kInf;
      if (dir > 0 && std::isfinite(hi_[ej])) {
        flip_theta = hi_[ej] - value_[ej];
      } else if (dir < 0 && std::isfinite(lo_[ej])) {
        flip_theta = value_[ej] - lo_[ej];
      }
      double theta = kInf;
      int leave_row = -1;
      double leave_target = 0.0;
      double best_pivot = 0.0;
      for (int r = 0; r < m_; ++r) {
        const double alpha = Row(r)[enter];
        if (std::abs(alpha) <= opt_.pivot_tol) continue;
        const double rate = -alpha * dir;
        const int j = basic_[r];
        const double x = value_[j];
        double target;
        if (rate < 0) {
          if (x > hi_[j] + opt_.feasibility_tol) {
            target = hi_[j];
          } else if (x < lo_[j] - opt_.feasibility_tol ||
                     !std::isfinite(lo_[j])) {
            continue;
          } else {
            target = lo_[j];
          }
        } else {
          if (x < lo_[j] - opt_.feasibility_tol) {
            target = lo_[j];
          } else if (x > hi_[j] + opt_.feasibility_tol ||
                     !std::isfinite(hi_[j])) {
            continue;
          } else {
            target = hi_[j];
          }
        }
        const double limit = std::max(0.0, (target - x) / rate);
        bool take;
        if (leave_row < 0) {
          take = limit < theta;
        } else if (bland) {
          take = limit < theta - 1e-12 ||
                 (limit <= theta + 1e-12 && j < basic_[leave_row]);
        } else {
          take = limit < theta - 1e-12 ||
                 (limit <= theta + 1e-12 && std::abs(alpha) > best_pivot);
        }
        if (take) {
          theta = limit;
          leave_row = r;
          leave_target = target;
          best_pivot = std::abs(alpha);
        }
      }
      if (flip_theta <= theta) {
        leave_row = -1;
        theta = flip_theta;
      }

      if (!std::isfinite(theta)) {
        if (phase1) {
          throw std::logic_error("simplex phase 1 lost its blocking row");
        }
        out.status = LpStatus::kUnbounded;
        break;
      }

      ++iterations;
      if (theta <= 1e-12) {
        if (++degenerate_streak >= opt_.bland_after_degenerate) bland = true;
      } else {
        degenerate_streak = 0;
        bland = false;
      }

      for (int r = 0; r < m_; ++r) {
        const double alpha = Row(r)[enter];
        if (alpha != 0.0) value_[basic_[r]] -= alpha * dir * theta;
      }
      if (leave_row < 0) {
        value_[ej] = dir > 0 ? hi_[ej] : lo_[ej];
        continue;
      }
      value_[ej] += dir * theta;
      const int leaving = basic_[leave_row];
      value_[leaving] = leave_target;
      Pivot(leave_row, enter);
      basic_[leave_row] = ej;
      nonbasic_[enter] = leaving;
      fresh = false;
    }

    out.iterations = iterations;
    out.values.assign(value_.begin(), value_.begin() + nv_);
    out.objective = 0.0;
    for (int j = 0; j < nv_; ++j) out.objective += cost_[j] * out.values[j];
    return out;
  }

 private:
  double* Row(int r) { return t_.data() + static_cast<std::size_t>(r) * nv_; }
  const double* Row(int r) const {
    return t_.data() + static_cast<std::size_t>(r) * nv_;
  }

  // Exchanges basic row pr with nonbasic column pc.
  void Pivot(int pr, int pc) {
    double* prow = Row(pr);
    const double inv = 1.0 / prow[pc];
    for (int c = 0; c < nv_; ++c) prow[c] *= inv;
    prow[pc] = inv;
    beta_[pr] *= inv;
    for (int r = 0; r < m_; ++r) {
      if (r == pr) continue;
      double* row = Row(r);
      const double f = row[pc];
      if (f == 0.0) continue;
      for (int c = 0; c < nv_; ++c) row[c] -= f * prow[c];
      row[pc] = -f * inv;
      beta_[r] -= f * beta_[pr];
    }
  }

  void Refresh() {
    for (int r = 0; r < m_; ++r) {
      const double* row = Row(r);
      double x = beta_[r];
      for (int c = 0; c < nv_; ++c) {
        const double v = value_[nonbasic_[c]];
        if (v != 0.0) x -= row[c] * v;
      }
      value_[basic_[r]] = x;
    }
  }

  const SimplexOptions& opt_;
  int m_;
  int nv_;
  std::vector<double> t_;
  std::vector<double> beta_;
  std::vector<double> lo_;
  std::vector<double> hi_;
  std::vector<double> cost_;
  std::vector<double> value_;
  std::vector<int> basic_;
  std::vector<int> nonbasic_;
};

void ValidateShape(const LpProblem& p, std::size_t lower, std::size_t upper) {
  const auto nv = static_cast<std::size_t>(p.num_vars);
  if (p.objective.size() != nv || lower != nv || upper != nv) {
    throw std::invalid_argument("LP vectors differ in length from num_vars");
  }
  if (p.senses.size() != p.rows.size() || p.rhs.size() != p.rows.size()) {
    throw std::invalid_argument("LP rows, senses and rhs differ in length");
  }
  for (const auto& row : p.rows) {
    if (row.size() != nv) {
      throw std::invalid_argument("LP row length differs from num_vars");
    }
  }
}

}  // namespace

LpSolution SolveLp(const LpProblem& problem, const SimplexOptions& options) {
  return SolveLp(problem, problem.lower, problem.upper, options);
}

LpSolution SolveLp(const LpProblem& problem, std::span<const double> lower,
                   std::span<const double> upper,
                   const SimplexOptions& options) {
  ValidateShape(problem, lower.size(), upper.size());
  Tableau tableau(problem, lower, upper, options);
  return tableau.Run();
}

}  // namespace ksubmax
