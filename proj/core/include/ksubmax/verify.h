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

// Certification by enumeration: property checkers with counterexample
// witnesses, the exhaustive-search maximizer, and feasible-set counting.

#ifndef KSUBMAX_VERIFY_H_
#define KSUBMAX_VERIFY_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "ksubmax/kset.h"
#include "ksubmax/oracle.h"
#include "ksubmax/region.h"

namespace ksubmax {

// A concrete violation.
//   kPairwise: f(x) + f(y) < f(x meet y) + f(x join y).
//   kC1:          f(x+i@q) + f(x+j@q2) < f(x+i@q+j@q2) + f(x), i != j.
//   kC2:          rho_{q,i}(x) + rho_{q2,i}(x) < 0, q != q2.
//   kMonotone:    rho_{q,i}(x) < 0.
struct Witness {
  enum class Kind { kPairwise, kC1, kC2, kMonotone };

  Kind kind;
  KSet x;
  std::optional<KSet> y;
  int element = -1;
  int other_element = -1;
  int q = 0;
  int q2 = 0;
  // Left-hand side minus right-hand side; negative for a real violation.
  double slack = 0.0;
};

const char* ToString(Witness::Kind kind);

struct VerificationReport {
  bool passed = true;
  std::optional<Witness> witness;
  std::uint64_t checked_pairs = 0;
  bool sampled = false;
};

class EnumerationCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct VerifyOptions {
  // Full enumeration runs only when (k+1)^n is at most this.
  std::uint64_t max_ksets = 4096;
  // Past the cap, either sample random instances or throw
  // EnumerationCapExceeded.
  bool allow_sampling = false;
  std::uint64_t samples = 200000;
  std::uint64_t seed = 1;
  double tol = 1e-9;
};

// f(X) + f(Y) >= f(X meet Y) + f(X join Y) - tol for all pairs.
VerificationReport CheckKSubmodular(const ValueOracle& oracle,
                                    const VerifyOptions& options = {});
// Submodularity over every partition (checked through its local
// exchange form) together with non-negative pairwise cross marginals.
VerificationReport CheckC1C2(const ValueOracle& oracle,
                             const VerifyOptions& options = {});
// Every single-element addition has a marginal >= -tol.
VerificationReport CheckMonotone(const ValueOracle& oracle,
                                 const VerifyOptions& options = {});

// Re-evaluates the witness inequality through the oracle; true iff it is
// violated by more than tol.
bool WitnessViolates(const ValueOracle& oracle, const Witness& witness,
                     double tol = 1e-9);

nlohmann::json ReportToJson(const VerificationReport& report);

struct ExhaustiveOptions {
  std::uint64_t max_evaluations = 100'000'000;
};

struct ExhaustiveResult {
  KSet best;
  double value;
  std::uint64_t evaluations = 0;
  std::uint64_t feasible_visited = 0;
  bool complete = true;
  bool found = false;

  explicit ExhaustiveResult(GroundSet ground)
      : best(ground), value(-std::numeric_limits<double>::infinity()) {}
};

// Evaluates f on every feasible k-set. Ties keep the lexicographically
// smallest label vector. Stops at the evaluation budget with complete =
// false and the best k-set seen so far.
ExhaustiveResult ExhaustiveMax(const ValueOracle& oracle,
                               const FeasibleRegion& region,
                               const ExhaustiveOptions& options = {});

using BigCount = boost::multiprecision::cpp_int;

// Number of k-sets with |S_q| = sizes[q-1] exactly:
// n! / (B_1! ... B_k! (n - sum B)!).
BigCount CountExactFeasible(int n, int k, std::span<const int> sizes);
// Number of k-sets with |S_q| <= bounds[q-1].
BigCount CountFeasibleWithin(int n, int k, std::span<const int> bounds);

}  // namespace ksubmax

#endif  // KSUBMAX_VERIFY_H_
