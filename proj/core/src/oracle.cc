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

#include "ksubmax/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ksubmax {

ValueOracle::ValueOracle(GroundSet ground, bool monotone, double lower_bound,
                         double upper_bound)
    : ground_(ground),
      monotone_(monotone),
      lower_bound_(lower_bound),
      upper_bound_(upper_bound) {}

double ValueOracle::Evaluate(const KSet& s) const {
  if (!(s.ground() == ground_)) {
    throw DimensionError("k-set and oracle have different ground sets");
  }
  evaluations_.fetch_add(1, std::memory_order_relaxed);
  return DoEvaluate(s);
}

double Marginal(const ValueOracle& oracle, const KSet& s, int q, int i) {
  if (s.assigned(i)) {
    throw std::invalid_argument("marginal of an element that is already "
                                "assigned");
  }
  return oracle.Evaluate(s.With(i, q)) - oracle.Evaluate(s);
}

SubsetElementTable::SubsetElementTable(GroundSet ground, double fill)
    : ground_(ground),
      values_(static_cast<std::size_t>(ground.dim()), fill) {}

double XiExact(const ValueOracle& oracle, int q, int i,
               const XiOptions& options) {
  const GroundSet& g = oracle.ground();
  if (q < 1 || q > g.k() || i < 0 || i >= g.n()) {
    throw std::out_of_range("xi index");
  }
  std::uint64_t partitions = 1;
  for (int e = 0; e + 1 < g.n(); ++e) {
    partitions *= static_cast<std::uint64_t>(g.k());
    if (partitions > options.max_partitions) {
      throw XiCapExceeded(
          "exact xi needs more than " +
          std::to_string(options.max_partitions) +
          " partitions; use the zeta lower bound (XiBound) instead");
    }
  }
  // Odometer over labels {1..k} for every element except i.
  KSet s(g);
  for (int e = 0; e < g.n(); ++e) {
    if (e != i) s.Assign(e, 1);
  }
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    best = std::min(best, Marginal(oracle, s, q, i));
    int e = 0;
    while (e < g.n() && (e == i || s.label(e) == g.k())) {
      if (e != i) s.Assign(e, 1);
      ++e;
    }
    if (e == g.n()) break;
    s.Assign(e, s.label(e) + 1);
  }
  return best;
}

XiTable XiExactAll(const ValueOracle& oracle, const XiOptions& options) {
  XiTable xi(oracle.ground());
  for (int q = 1; q <= oracle.ground().k(); ++q) {
    for (int i = 0; i < oracle.ground().n(); ++i) {
      xi.at(q, i) = XiExact(oracle, q, i, options);
    }
  }
  return xi;
}

double XiBound(const ValueOracle& oracle) {
  if (!std::isfinite(oracle.lower_bound()) ||
      !std::isfinite(oracle.upper_bound())) {
    throw std::domain_error("oracle value bounds are not finite");
  }
  return oracle.lower_bound() - oracle.upper_bound();
}

namespace {

class ModularOracle final : public ValueOracle {
 public:
  ModularOracle(GroundSet ground, SubsetElementTable weights, bool monotone,
                double lower, double upper)
      : ValueOracle(ground, monotone, lower, upper),
        weights_(std::move(weights)) {}

  std::string kind() const override { return "modular"; }

 protected:
  double DoEvaluate(const KSet& s) const override {
    double total = 0.0;
    for (int i = 0; i < s.n(); ++i) {
      if (s.assigned(i)) total += weights_.at(s.label(i), i);
    }
    return total;
  }

 private:
  SubsetElementTable weights_;
};

class CoverageOracle final : public ValueOracle {
 public:
  CoverageOracle(GroundSet ground, double upper,
                 std::vector<std::vector<int>> covers,
                 std::vector<double> item_weights)
      : ValueOracle(ground, /*monotone=*/true, 0.0, upper),
        covers_(std::move(covers)),
        item_weights_(std::move(item_weights)) {}

  std::string kind() const override { return "coverage"; }

 protected:
  double DoEvaluate(const KSet& s) const override {
    std::vector<char> covered(item_weights_.size(), 0);
    for (int i = 0; i < s.n(); ++i) {
      if (!s.assigned(i)) continue;
      for (int item : covers_[ground().VarIndex(s.label(i), i)]) {
        covered[item] = 1;
      }
    }
    double total = 0.0;
    for (std::size_t item = 0; item < covered.size(); ++item) {
      if (covered[item]) total += item_weights_[item];
    }
    return total;
  }

 private:
  std::vector<std::vector<int>> covers_;  // by GroundSet::VarIndex
  std::vector<double> item_weights_;
};

class TableOracle final : public ValueOracle {
 public:
  TableOracle(GroundSet ground, bool monotone, double lower, double upper,
              std::vector<double> values)
      : ValueOracle(ground, monotone, lower, upper),
        values_(std::move(values)) {}

  std::string kind() const override { return "table"; }

 protected:
  double DoEvaluate(const KSet& s) const override {
    return values_[s.Index()];
  }

 private:
  std::vector<double> values_;
};

}  // namespace

OraclePtr MakeModularOracle(const std::vector<std::vector<double>>& weights) {
  if (weights.empty() || weights.front().empty()) {
    throw std::invalid_argument("modular oracle needs a k x n weight array");
  }
  const GroundSet g(static_cast<int>(weights.front().size()),
                    static_cast<int>(weights.size()));
  SubsetElementTable table(g);
  bool monotone = true;
  double lower = 0.0;
  double upper = 0.0;
  for (int q = 1; q <= g.k(); ++q) {
    if (weights[q - 1].size() != static_cast<std::size_t>(g.n())) {
      throw DimensionError("modular weight rows must all have length n");
    }
    for (int i = 0; i < g.n(); ++i) {
      const double w = weights[q - 1][i];
      if (!std::isfinite(w)) throw std::invalid_argument("non-finite weight");
      table.at(q, i) = w;
      if (w < 0) monotone = false;
    }
  }
  for (int i = 0; i < g.n(); ++i) {
    double lo = 0.0;
    double hi = 0.0;
    for (int q = 1; q <= g.k(); ++q) {
      lo = std::min(lo, table.at(q, i));
      hi = std::max(hi, table.at(q, i));
    }
    lower += lo;
    upper += hi;
  }
  return std::make_shared<ModularOracle>(g, std::move(table), monotone, lower,
                                         upper);
}

OraclePtr MakeCoverageOracle(
    int universe_size, const std::vector<std::vector<std::vector<int>>>& covers,
    const std::vector<double>& item_weights) {
  if (universe_size < 0 ||
      item_weights.size() != static_cast<std::size_t>(universe_size)) {
    throw std::invalid_argument("one weight per universe item expected");
  }
  if (covers.empty() || covers.front().empty()) {
    throw std::invalid_argument("coverage oracle needs a k x n cover array");
  }
  const GroundSet g(static_cast<int>(covers.front().size()),
                    static_cast<int>(covers.size()));
  std::vector<std::vector<int>> flat(static_cast<std::size_t>(g.dim()));
  for (int q = 1; q <= g.k(); ++q) {
    if (covers[q - 1].size() != static_cast<std::size_t>(g.n())) {
      throw DimensionError("cover rows must all have length n");
    }
    for (int i = 0; i < g.n(); ++i) {
      for (int item : covers[q - 1][i]) {
        if (item < 0 || item >= universe_size) {
          throw std::out_of_range("cover item outside the universe");
        }
      }
      flat[g.VarIndex(q, i)] = covers[q - 1][i];
    }
  }
  double upper = 0.0;
  for (double w : item_weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("coverage weights must be finite and >= 0");
    }
    upper += w;
  }
  return std::make_shared<CoverageOracle>(g, upper, std::move(flat),
                                          item_weights);
}

OraclePtr MakeTableOracle(GroundSet ground, std::vector<double> values) {
  if (values.size() != ground.NumKSets()) {
    throw std::invalid_argument("table oracle needs (k+1)^n = " +
                                std::to_string(ground.NumKSets()) +
                                " entries, got " +
                                std::to_string(values.size()));
  }
  if (values[0] != 0.0) {
    throw std::invalid_argument("table value at the empty k-set must be 0");
  }
  double lower = values[0];
  double upper = values[0];
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite entry");
    lower = std::min(lower, v);
    upper = std::max(upper, v);
  }
  bool monotone = true;
  ForEachKSet(ground, [&](const KSet& s) {
    if (!monotone) return;
    for (int i = 0; i < ground.n() && monotone; ++i) {
      if (s.assigned(i)) continue;
      for (int q = 1; q <= ground.k(); ++q) {
        if (values[s.With(i, q).Index()] < values[s.Index()]) {
          monotone = false;
          break;
        }
      }
    }
  });
  return std::make_shared<TableOracle>(ground, monotone, lower, upper,
                                       std::move(values));
}

OraclePtr MakeTableOracle(GroundSet ground,
                          const std::function<double(const KSet&)>& f) {
  std::vector<double> values;
  values.reserve(ground.NumKSets());
  ForEachKSet(ground, [&](const KSet& s) { values.push_back(f(s)); });
  return MakeTableOracle(ground, std::move(values));
}

}  // namespace ksubmax
