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

#include "ksubmax/region.h"

#include <algorithm>
#include <stdexcept>

namespace ksubmax {

bool FeasibleRegion::Admits(const KSet& s) const {
  if (per_type_bounds) {
    for (int q = 1; q <= s.k(); ++q) {
      if (s.SubsetSize(q) > (*per_type_bounds)[q - 1]) return false;
    }
  }
  if (total_bound && s.TotalSize() > *total_bound) return false;
  if (!extra.empty()) {
    const CharVector x = ToCharVector(s);
    std::vector<double> dense(x.bits().begin(), x.bits().end());
    for (const auto& c : extra) {
      if (!c.SatisfiedBy(dense, 1e-9)) return false;
    }
  }
  return true;
}

std::vector<LinearConstraint> CompileRegion(const FeasibleRegion& region,
                                            const GroundSet& ground) {
  std::vector<LinearConstraint> rows;
  for (int i = 0; i < ground.n(); ++i) {
    LinearConstraint c;
    for (int q = 1; q <= ground.k(); ++q) {
      c.terms.emplace_back(ground.VarIndex(q, i), 1.0);
    }
    c.sense = Sense::kLessEqual;
    c.rhs = 1.0;
    rows.push_back(std::move(c));
  }
  if (region.per_type_bounds) {
    const auto& bounds = *region.per_type_bounds;
    if (bounds.size() != static_cast<std::size_t>(ground.k())) {
      throw DimensionError("one cardinality bound per subset expected");
    }
    for (int q = 1; q <= ground.k(); ++q) {
      const int b = bounds[q - 1];
      if (b < 0 || b > ground.n()) {
        throw std::invalid_argument("cardinality bound outside [0, n]");
      }
      LinearConstraint c;
      for (int i = 0; i < ground.n(); ++i) {
        c.terms.emplace_back(ground.VarIndex(q, i), 1.0);
      }
      c.sense = Sense::kLessEqual;
      c.rhs = b;
      rows.push_back(std::move(c));
    }
  }
  if (region.total_bound) {
    const int b = *region.total_bound;
    if (b < 0 || b > ground.n()) {
      throw std::invalid_argument("total bound outside [0, n]");
    }
    LinearConstraint c;
    for (int col = 0; col < ground.dim(); ++col) c.terms.emplace_back(col, 1.0);
    c.sense = Sense::kLessEqual;
    c.rhs = b;
    rows.push_back(std::move(c));
  }
  for (const auto& c : region.extra) {
    for (const auto& [col, coeff] : c.terms) {
      if (col < 0 || col >= ground.dim()) {
        throw DimensionError("extra constraint column outside the x vector");
      }
    }
    rows.push_back(c);
  }
  return rows;
}

std::vector<int> EnumerationCaps(const FeasibleRegion& region,
                                 const GroundSet& ground) {
  std::vector<int> caps(static_cast<std::size_t>(ground.k()), ground.n());
  if (region.per_type_bounds) {
    if (region.per_type_bounds->size() != caps.size()) {
      throw DimensionError("one cardinality bound per subset expected");
    }
    for (std::size_t q = 0; q < caps.size(); ++q) {
      caps[q] = std::min(caps[q], (*region.per_type_bounds)[q]);
    }
  }
  if (region.total_bound) {
    for (int& c : caps) c = std::min(c, *region.total_bound);
  }
  return caps;
}

}  // namespace ksubmax
