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

#include "ksubmax/cuts.h"

#include <algorithm>
#include <cmath>

namespace ksubmax {
namespace {

// Coefficients shared by both inequalities: rho_{q,i}(S) for unassigned i,
// rho_{q,i}(empty) for i in S_p with p != q, zero on i in S_q.
Cut BuildCommon(const ValueOracle& oracle, const KSet& s) {
  const GroundSet& g = oracle.ground();
  if (!(s.ground() == g)) {
    throw DimensionError("generator and oracle have different ground sets");
  }
  Cut cut(g);
  cut.source = s;
  const double f_s = oracle.Evaluate(s);
  cut.constant = f_s;
  const KSet empty(g);
  for (int i = 0; i < g.n(); ++i) {
    if (!s.assigned(i)) {
      for (int q = 1; q <= g.k(); ++q) {
        cut.coeffs.at(q, i) = oracle.Evaluate(s.With(i, q)) - f_s;
      }
    } else {
      for (int q = 1; q <= g.k(); ++q) {
        if (q == s.label(i)) continue;
        cut.coeffs.at(q, i) = oracle.Evaluate(empty.With(i, q));
      }
    }
  }
  return cut;
}

}  // namespace

Cut BuildMonotoneCut(const ValueOracle& oracle, const KSet& s) {
  if (!oracle.monotone()) {
    throw std::invalid_argument(
        "monotone k-submodular inequality requested for a non-monotone "
        "oracle");
  }
  return BuildCommon(oracle, s);
}

Cut BuildGeneralCut(const ValueOracle& oracle, const KSet& s,
                    const XiTable& xi) {
  if (!(xi.ground() == oracle.ground())) {
    throw DimensionError("xi table and oracle have different ground sets");
  }
  Cut cut = BuildCommon(oracle, s);
  for (int i = 0; i < s.n(); ++i) {
    if (!s.assigned(i)) continue;
    const int q = s.label(i);
    cut.constant -= xi.at(q, i);
    cut.coeffs.at(q, i) = xi.at(q, i);
  }
  return cut;
}

Cut BuildGeneralCut(const ValueOracle& oracle, const KSet& s, double zeta) {
  return BuildGeneralCut(oracle, s, XiTable(oracle.ground(), zeta));
}

double CutRhs(const Cut& cut, const CharVector& x) {
  if (!(x.ground() == cut.coeffs.ground())) {
    throw DimensionError("cut and point have different dimensions");
  }
  double rhs = cut.constant;
  const auto& c = cut.coeffs.values();
  const auto bits = x.bits();
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (bits[j]) rhs += c[j];
  }
  return rhs;
}

double CutRhs(const Cut& cut, const KSet& s) {
  if (!(s.ground() == cut.coeffs.ground())) {
    throw DimensionError("cut and point have different dimensions");
  }
  // Same summation order as the CharVector overload.
  double rhs = cut.constant;
  const GroundSet& g = s.ground();
  for (int q = 1; q <= g.k(); ++q) {
    for (int i = 0; i < g.n(); ++i) {
      if (s.label(i) == q) rhs += cut.coeffs.at(q, i);
    }
  }
  return rhs;
}

namespace {

class TransformedOracle final : public ValueOracle {
 public:
  TransformedOracle(OraclePtr base, XiTable xi, double lower, double upper)
      : ValueOracle(base->ground(), /*monotone=*/true, lower, upper),
        base_(std::move(base)),
        xi_(std::move(xi)) {}

  std::string kind() const override { return base_->kind() + "*"; }

 protected:
  double DoEvaluate(const KSet& s) const override {
    double value = base_->Evaluate(s);
    for (int i = 0; i < s.n(); ++i) {
      if (s.assigned(i)) value -= xi_.at(s.label(i), i);
    }
    return value;
  }

 private:
  OraclePtr base_;
  XiTable xi_;
};

}  // namespace

OraclePtr MonotoneTransform(OraclePtr oracle, XiTable xi) {
  if (!(xi.ground() == oracle->ground())) {
    throw DimensionError("xi table and oracle have different ground sets");
  }
  const GroundSet& g = oracle->ground();
  double lower = oracle->lower_bound();
  double upper = oracle->upper_bound();
  for (int i = 0; i < g.n(); ++i) {
    double most = 0.0;
    double least = 0.0;
    for (int q = 1; q <= g.k(); ++q) {
      most = std::max(most, xi.at(q, i));
      least = std::min(least, xi.at(q, i));
    }
    lower -= most;
    upper -= least;
  }
  return std::make_shared<TransformedOracle>(std::move(oracle), std::move(xi),
                                             lower, upper);
}

nlohmann::json CutToJson(const Cut& cut) {
  const GroundSet& g = cut.coeffs.ground();
  nlohmann::json coeffs = nlohmann::json::array();
  for (int q = 1; q <= g.k(); ++q) {
    nlohmann::json row = nlohmann::json::array();
    for (int i = 0; i < g.n(); ++i) row.push_back(cut.coeffs.at(q, i));
    coeffs.push_back(std::move(row));
  }
  const auto labels = cut.source.labels();
  return {{"c0", cut.constant},
          {"coeffs", std::move(coeffs)},
          {"source", std::vector<int>(labels.begin(), labels.end())}};
}

Cut CutFromJson(const nlohmann::json& j) {
  const auto& rows = j.at("coeffs");
  if (!rows.is_array() || rows.empty() || !rows[0].is_array()) {
    throw std::invalid_argument("cut coeffs must be a k x n array");
  }
  const GroundSet g(static_cast<int>(rows[0].size()),
                    static_cast<int>(rows.size()));
  Cut cut(g);
  cut.constant = j.at("c0").get<double>();
  for (int q = 1; q <= g.k(); ++q) {
    if (rows[q - 1].size() != static_cast<std::size_t>(g.n())) {
      throw DimensionError("ragged cut coefficient rows");
    }
    for (int i = 0; i < g.n(); ++i) {
      cut.coeffs.at(q, i) = rows[q - 1][i].get<double>();
    }
  }
  cut.source = KSet(g, j.at("source").get<std::vector<int>>());
  return cut;
}

}  // namespace ksubmax
