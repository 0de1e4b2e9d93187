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

#ifndef KSUBMAX_REGION_H_
#define KSUBMAX_REGION_H_

#include <optional>
#include <vector>

#include "ksubmax/kset.h"
#include "ksubmax/milp.h"

namespace ksubmax {

// Feasible k-sets: |S_q| <= per_type_bounds[q-1] when given, total size
// <= total_bound when given, and every extra row on the characteristic
// vector. Disjointness is implied by the k-set itself.
struct FeasibleRegion {
  std::optional<std::vector<int>> per_type_bounds;
  std::optional<int> total_bound;
  std::vector<LinearConstraint> extra;

  // Unconstrained region, every k-set is feasible.
  static FeasibleRegion Unconstrained() { return {}; }
  static FeasibleRegion PerType(std::vector<int> bounds) {
    FeasibleRegion r;
    r.per_type_bounds = std::move(bounds);
    return r;
  }

  bool Admits(const KSet& s) const;
};

// Rows in this order: sum_q x_i^q <= 1 for each i; sum_i x_i^q <= B_q for
// each q when per-type bounds are set; sum x <= total when set; extras
// verbatim. Throws std::invalid_argument for bounds outside [0, n] and
// DimensionError for mismatched extras.
std::vector<LinearConstraint> CompileRegion(const FeasibleRegion& region,
                                            const GroundSet& ground);

// Per-type caps used to prune enumeration: min(B_q, total, n).
std::vector<int> EnumerationCaps(const FeasibleRegion& region,
                                 const GroundSet& ground);

}  // namespace ksubmax

#endif  // KSUBMAX_REGION_H_
