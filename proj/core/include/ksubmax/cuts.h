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

// k-submodular inequalities.
//
// For a k-submodular f and a generating k-set S, the inequality
//
//   eta <= f(S) + sum_{q} sum_{i unassigned in S} rho_{q,i}(S) x_i^q
//               + sum_{q} sum_{p != q} sum_{i in S_p} rho_{q,i}(empty) x_i^q
//               - sum_{q} sum_{i in S_q} xi_i^q (1 - x_i^q)
//
// holds at every binary (x, eta) with eta <= f(x), and is tight at x = S.
// For monotone f the last sum is dropped. Any lower bound on xi_i^q may
// replace it without losing validity.

#ifndef KSUBMAX_CUTS_H_
#define KSUBMAX_CUTS_H_

#include <nlohmann/json.hpp>

#include "ksubmax/kset.h"
#include "ksubmax/oracle.h"

namespace ksubmax {

// eta <= constant + sum_{q,i} coeffs(q, i) x_i^q.
struct Cut {
  double constant = 0.0;
  SubsetElementTable coeffs;
  KSet source;

  explicit Cut(GroundSet ground) : coeffs(ground), source(ground) {}
};

// Requires oracle.monotone(); throws std::invalid_argument otherwise.
Cut BuildMonotoneCut(const ValueOracle& oracle, const KSet& s);

// xi(q, i) must be <= the true xi_i^q; exact values from XiExactAll() or the
// scalar zeta from XiBound() both qualify.
Cut BuildGeneralCut(const ValueOracle& oracle, const KSet& s,
                    const XiTable& xi);
Cut BuildGeneralCut(const ValueOracle& oracle, const KSet& s, double zeta);

// constant + sum coeffs * x.
double CutRhs(const Cut& cut, const CharVector& x);
// Same, evaluated directly on a k-set.
double CutRhs(const Cut& cut, const KSet& s);

// f*(X) = f(X) - sum_q sum_{i in X_q} xi_i^q. With exact xi this is
// monotone and k-submodular whenever f is k-submodular.
OraclePtr MonotoneTransform(OraclePtr oracle, XiTable xi);

// {"c0": ..., "coeffs": [[...], ...], "source": [labels]}.
nlohmann::json CutToJson(const Cut& cut);
Cut CutFromJson(const nlohmann::json& j);

}  // namespace ksubmax

#endif  // KSUBMAX_CUTS_H_
