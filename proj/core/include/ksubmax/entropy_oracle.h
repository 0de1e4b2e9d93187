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

// Multi-type sensor placement objective: the empirical joint entropy of the
// discretized readings seen by a placement.
//
// A placement S puts a type-q sensor at every location i in S_q. Sample s
// then produces the tuple (reading of feature q at location i : i in S_q,
// all q), and f(S) is the entropy of the empirical distribution of these
// tuples over the t samples.

#ifndef KSUBMAX_ENTROPY_ORACLE_H_
#define KSUBMAX_ENTROPY_ORACLE_H_

#include <iosfwd>
#include <numbers>
#include <string>
#include <vector>

#include "ksubmax/oracle.h"

namespace ksubmax {

// Discretized readings, values[feature][location][sample].
class ObservationMatrix {
 public:
  ObservationMatrix() = default;
  // Bin counts default to 1 + the largest value seen per feature. Location
  // ids default to 1..n_locations.
  ObservationMatrix(int k_features, int n_locations, int t_samples,
                    std::vector<int> values, std::vector<int> bins = {},
                    std::vector<int> location_ids = {});

  int k_features() const { return k_; }
  int n_locations() const { return n_; }
  int t_samples() const { return t_; }
  // Feature index f is 0-based; sensor type q reads feature q - 1.
  int at(int f, int location, int sample) const {
    return values_[(static_cast<std::size_t>(f) * n_ + location) * t_ +
                   sample];
  }
  int bins(int f) const { return bins_[f]; }
  const std::vector<int>& bins() const { return bins_; }
  const std::vector<int>& location_ids() const { return location_ids_; }
  // Flat row-major [feature][location][sample].
  const std::vector<int>& values() const { return values_; }

  friend bool operator==(const ObservationMatrix&,
                         const ObservationMatrix&) = default;

 private:
  int k_ = 0;
  int n_ = 0;
  int t_ = 0;
  std::vector<int> values_;
  std::vector<int> bins_;
  std::vector<int> location_ids_;
};

// CSV with header "location,sample,f1,...,fk" and one row per
// (location, sample). Locations are written with their ids, samples 0-based.
void WriteObservationCsv(const ObservationMatrix& obs, std::ostream& out);
// Throws std::runtime_error with a line number on malformed input.
ObservationMatrix ReadObservationCsv(std::istream& in);

struct EntropyOptions {
  // Natural logarithm unless overridden; rankings do not depend on it.
  double log_base = std::numbers::e;
};

// Entropy from a multiset of outcome counts summing to t. Counts are summed
// in ascending order so equal multisets give bit-identical results.
double EntropyFromCounts(std::vector<int> counts, int t,
                         const EntropyOptions& options = {});

// Monotone, lower bound 0, upper bound log(t).
OraclePtr MakeEntropyOracle(ObservationMatrix obs,
                            const EntropyOptions& options = {});

}  // namespace ksubmax

#endif  // KSUBMAX_ENTROPY_ORACLE_H_
