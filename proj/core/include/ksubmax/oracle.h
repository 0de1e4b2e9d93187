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

// Value oracles for k-set functions.
//
// Every oracle is normalized so that f(empty) = 0 and carries declared
// metadata: a monotonicity flag and finite bounds lower <= f <= upper. The
// solver trusts the flag to choose between the monotone and the general
// k-submodular inequality, so it must be truthful; verify.h can check it.
//
// Oracles are immutable after construction and Evaluate() is safe to call
// concurrently.

#ifndef KSUBMAX_ORACLE_H_
#define KSUBMAX_ORACLE_H_

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "ksubmax/kset.h"

namespace ksubmax {

class ValueOracle {
 public:
  ValueOracle(GroundSet ground, bool monotone, double lower_bound,
              double upper_bound);
  virtual ~ValueOracle() = default;

  ValueOracle(const ValueOracle&) = delete;
  ValueOracle& operator=(const ValueOracle&) = delete;

  const GroundSet& ground() const { return ground_; }
  bool monotone() const { return monotone_; }
  double lower_bound() const { return lower_bound_; }
  double upper_bound() const { return upper_bound_; }

  // Short family name used in reports, e.g. "entropy".
  virtual std::string kind() const = 0;

  // f(s). Throws DimensionError if s is over a different ground set.
  double Evaluate(const KSet& s) const;

  // Number of Evaluate() calls since construction or the last reset.
  std::uint64_t evaluations() const {
    return evaluations_.load(std::memory_order_relaxed);
  }
  void ResetEvaluationCount() const {
    evaluations_.store(0, std::memory_order_relaxed);
  }

 protected:
  virtual double DoEvaluate(const KSet& s) const = 0;

 private:
  GroundSet ground_;
  bool monotone_;
  double lower_bound_;
  double upper_bound_;
  mutable std::atomic<std::uint64_t> evaluations_{0};
};

using OraclePtr = std::shared_ptr<const ValueOracle>;

// rho_{q,i}(s) = f(s with i added to S_q) - f(s). Element i must be
// unassigned in s.
double Marginal(const ValueOracle& oracle, const KSet& s, int q, int i);

// Per-(q, i) table of reals, the shape of xi_i^q and of cut coefficients.
class SubsetElementTable {
 public:
  SubsetElementTable(GroundSet ground, double fill = 0.0);

  const GroundSet& ground() const { return ground_; }
  double at(int q, int i) const { return values_[ground_.VarIndex(q, i)]; }
  double& at(int q, int i) { return values_[ground_.VarIndex(q, i)]; }
  const std::vector<double>& values() const { return values_; }

 private:
  GroundSet ground_;
  std::vector<double> values_;
};

using XiTable = SubsetElementTable;

class XiCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct XiOptions {
  // Largest k^(n-1) the exact minimum may enumerate. The default admits
  // n = 16 at k = 2.
  std::uint64_t max_partitions = std::uint64_t{1} << 15;
};

// xi_i^q: the minimum of rho_{q,i}(S) over all partitions S of N \ {i}.
// Enumerates all k^(n-1) partitions; throws XiCapExceeded past the cap, in
// which case XiBound() is the cheap alternative.
double XiExact(const ValueOracle& oracle, int q, int i,
               const XiOptions& options = {});
XiTable XiExactAll(const ValueOracle& oracle, const XiOptions& options = {});

// zeta = lower - upper, a lower bound on every xi_i^q. Throws
// std::domain_error if the oracle bounds are not finite.
double XiBound(const ValueOracle& oracle);

// f(S) = sum_q sum_{i in S_q} weights[q-1][i]. Monotone iff all weights are
// non-negative.
OraclePtr MakeModularOracle(const std::vector<std::vector<double>>& weights);

// Weighted coverage: f(S) = total weight of the union of covers[q-1][i]
// over all i in S_q. Items are indices into item_weights.
OraclePtr MakeCoverageOracle(int universe_size,
                             const std::vector<std::vector<std::vector<int>>>& covers,
                             const std::vector<double>& item_weights);

// Explicit storage of all (k+1)^n values, indexed by KSet::Index(). The
// value at the empty k-set must be 0. Monotonicity and bounds are computed
// from the table.
OraclePtr MakeTableOracle(GroundSet ground, std::vector<double> values);
OraclePtr MakeTableOracle(GroundSet ground,
                          const std::function<double(const KSet&)>& f);

}  // namespace ksubmax

#endif  // KSUBMAX_ORACLE_H_
