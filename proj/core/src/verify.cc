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

#include "ksubmax/verify.h"

#include <random>
#include <vector>

namespace ksubmax {

const char* ToString(Witness::Kind kind) {
  switch (kind) {
    case Witness::Kind::kPairwise:
      return "def1";
    case Witness::Kind::kC1:
      return "c1";
    case Witness::Kind::kC2:
      return "c2";
    case Witness::Kind::kMonotone:
      return "monotone";
  }
  return "unknown";
}

namespace {

// All (k+1)^n values, with index arithmetic on KSet::Index().
class EnumeratedFunction {
 public:
  explicit EnumeratedFunction(const ValueOracle& oracle)
      : g_(oracle.ground()), base_(g_.k() + 1) {
    const std::uint64_t count = g_.NumKSets();
    values_.reserve(count);
    digits_.reserve(count * g_.n());
    ForEachKSet(g_, [&](const KSet& s) {
      values_.push_back(oracle.Evaluate(s));
      for (int i = 0; i < g_.n(); ++i) digits_.push_back(s.label(i));
    });
    pow_.resize(static_cast<std::size_t>(g_.n()));
    std::uint64_t p = 1;
    for (auto& v : pow_) {
      v = p;
      p *= base_;
    }
  }

  std::uint64_t size() const { return values_.size(); }
  double value(std::uint64_t idx) const { return values_[idx]; }
  int digit(std::uint64_t idx, int i) const {
    return digits_[idx * g_.n() + i];
  }
  std::uint64_t pow(int i) const { return pow_[i]; }
  KSet kset(std::uint64_t idx) const { return KSet::FromIndex(g_, idx); }

 private:
  GroundSet g_;
  std::uint64_t base_;
  std::vector<double> values_;
  std::vector<int> digits_;
  std::vector<std::uint64_t> pow_;
};

bool Enumerable(const ValueOracle& oracle, const VerifyOptions& options) {
  if (oracle.ground().NumKSets() <= options.max_ksets) return true;
  if (!options.allow_sampling) {
    throw EnumerationCapExceeded(
        "(k+1)^n exceeds the enumeration cap of " +
        std::to_string(options.max_ksets) +
        "; raise the cap or enable sampling");
  }
  return false;
}

KSet RandomKSet(const GroundSet& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> label(0, g.k());
  std::vector<int> labels(static_cast<std::size_t>(g.n()));
  for (int& l : labels) l = label(rng);
  return KSet(g, std::move(labels));
}

void Fail(VerificationReport& report, Witness w) {
  report.passed = false;
  report.witness = std::move(w);
}

}  // namespace

VerificationReport CheckKSubmodular(const ValueOracle& oracle,
                                    const VerifyOptions& options) {
  VerificationReport report;
  const GroundSet& g = oracle.ground();
  if (!Enumerable(oracle, options)) {
    report.sampled = true;
    std::mt19937_64 rng(options.seed);
    for (std::uint64_t s = 0; s < options.samples; ++s) {
      const KSet x = RandomKSet(g, rng);
      const KSet y = RandomKSet(g, rng);
      ++report.checked_pairs;
      const double slack = oracle.Evaluate(x) + oracle.Evaluate(y) -
                           oracle.Evaluate(Meet(x, y)) -
                           oracle.Evaluate(Join(x, y));
      if (slack < -options.tol) {
        Fail(report, {Witness::Kind::kPairwise, x, y, -1, -1, 0, 0, slack});
        return report;
      }
    }
    return report;
  }

  const EnumeratedFunction f(oracle);
  for (std::uint64_t a = 0; a < f.size(); ++a) {
    for (std::uint64_t b = a; b < f.size(); ++b) {
      std::uint64_t meet = 0;
      std::uint64_t join = 0;
      for (int i = 0; i < g.n(); ++i) {
        const int da = f.digit(a, i);
        const int db = f.digit(b, i);
        if (da == db) {
          meet += da * f.pow(i);
          join += da * f.pow(i);
        } else if (da == 0) {
          join += db * f.pow(i);
        } else if (db == 0) {
          join += da * f.pow(i);
        }
      }
      ++report.checked_pairs;
      const double slack =
          f.value(a) + f.value(b) - f.value(meet) - f.value(join);
      if (slack < -options.tol) {
        Fail(report, {Witness::Kind::kPairwise, f.kset(a), f.kset(b), -1,
                      -1, 0, 0, slack});
        return report;
      }
    }
  }
  return report;
}

VerificationReport CheckC1C2(const ValueOracle& oracle,
                             const VerifyOptions& options) {
  VerificationReport report;
  const GroundSet& g = oracle.ground();
  const int k = g.k();
  if (!Enumerable(oracle, options)) {
    report.sampled = true;
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<int> element(0, g.n() - 1);
    std::uniform_int_distribution<int> label(1, k);
    for (std::uint64_t s = 0; s < options.samples; ++s) {
      KSet x = RandomKSet(g, rng);
      const int i = element(rng);
      x.Assign(i, 0);
      const int q = label(rng);
      const int q2 = label(rng);
      if (g.n() > 1) {
        int j = element(rng);
        if (j != i) {
          x.Assign(j, 0);
          ++report.checked_pairs;
          const double fx = oracle.Evaluate(x);
          const double slack = oracle.Evaluate(x.With(i, q)) +
                               oracle.Evaluate(x.With(j, q2)) -
                               oracle.Evaluate(x.With(i, q).With(j, q2)) - fx;
          if (slack < -options.tol) {
            Fail(report, {Witness::Kind::kC1, x, std::nullopt, i, j, q, q2,
                          slack});
            return report;
          }
        }
      }
      if (q != q2) {
        ++report.checked_pairs;
        const double fx = oracle.Evaluate(x);
        const double slack = oracle.Evaluate(x.With(i, q)) +
                             oracle.Evaluate(x.With(i, q2)) - 2 * fx;
        if (slack < -options.tol) {
          Fail(report,
               {Witness::Kind::kC2, x, std::nullopt, i, -1, q, q2, slack});
          return report;
        }
      }
    }
    return report;
  }

  const EnumeratedFunction f(oracle);
  // C1 in local form: for every k-set x, unassigned i != j and labels q,
  // q2 (the labels a partition assigns to i and j), the set function over
  // that partition has decreasing marginals.
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    for (int i = 0; i < g.n(); ++i) {
      if (f.digit(x, i) != 0) continue;
      for (int j = i + 1; j < g.n(); ++j) {
        if (f.digit(x, j) != 0) continue;
        for (int q = 1; q <= k; ++q) {
          for (int q2 = 1; q2 <= k; ++q2) {
            const std::uint64_t xi = x + q * f.pow(i);
            const std::uint64_t xj = x + q2 * f.pow(j);
            const std::uint64_t xij = xi + q2 * f.pow(j);
            ++report.checked_pairs;
            const double slack =
                f.value(xi) + f.value(xj) - f.value(xij) - f.value(x);
            if (slack < -options.tol) {
              Fail(report, {Witness::Kind::kC1, f.kset(x), std::nullopt, i, j,
                            q, q2, slack});
              return report;
            }
          }
        }
      }
    }
  }
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    for (int i = 0; i < g.n(); ++i) {
      if (f.digit(x, i) != 0) continue;
      for (int q = 1; q <= k; ++q) {
        for (int q2 = q + 1; q2 <= k; ++q2) {
          ++report.checked_pairs;
          const double slack = f.value(x + q * f.pow(i)) +
                               f.value(x + q2 * f.pow(i)) - 2 * f.value(x);
          if (slack < -options.tol) {
            Fail(report, {Witness::Kind::kC2, f.kset(x), std::nullopt, i, -1,
                          q, q2, slack});
            return report;
          }
        }
      }
    }
  }
  return report;
}

VerificationReport CheckMonotone(const ValueOracle& oracle,
                                 const VerifyOptions& options) {
  VerificationReport report;
  const GroundSet& g = oracle.ground();
  if (!Enumerable(oracle, options)) {
    report.sampled = true;
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<int> element(0, g.n() - 1);
    std::uniform_int_distribution<int> label(1, g.k());
    for (std::uint64_t s = 0; s < options.samples; ++s) {
      KSet x = RandomKSet(g, rng);
      const int i = element(rng);
      x.Assign(i, 0);
      const int q = label(rng);
      ++report.checked_pairs;
      const double slack = Marginal(oracle, x, q, i);
      if (slack < -options.tol) {
        Fail(report,
             {Witness::Kind::kMonotone, x, std::nullopt, i, -1, q, 0, slack});
        return report;
      }
    }
    return report;
  }
  const EnumeratedFunction f(oracle);
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    for (int i = 0; i < g.n(); ++i) {
      if (f.digit(x, i) != 0) continue;
      for (int q = 1; q <= g.k(); ++q) {
        ++report.checked_pairs;
        const double slack = f.value(x + q * f.pow(i)) - f.value(x);
        if (slack < -options.tol) {
          Fail(report, {Witness::Kind::kMonotone, f.kset(x), std::nullopt, i,
                        -1, q, 0, slack});
          return report;
        }
      }
    }
  }
  return report;
}

bool WitnessViolates(const ValueOracle& oracle, const Witness& w, double tol) {
  double slack = 0.0;
  switch (w.kind) {
    case Witness::Kind::kPairwise: {
      if (!w.y) return false;
      slack = oracle.Evaluate(w.x) + oracle.Evaluate(*w.y) -
              oracle.Evaluate(Meet(w.x, *w.y)) -
              oracle.Evaluate(Join(w.x, *w.y));
      break;
    }
    case Witness::Kind::kC1: {
      if (w.element == w.other_element || w.x.assigned(w.element) ||
          w.x.assigned(w.other_element)) {
        return false;
      }
      const KSet xi = w.x.With(w.element, w.q);
      slack = oracle.Evaluate(xi) +
              oracle.Evaluate(w.x.With(w.other_element, w.q2)) -
              oracle.Evaluate(xi.With(w.other_element, w.q2)) -
              oracle.Evaluate(w.x);
      break;
    }
    case Witness::Kind::kC2: {
      if (w.q == w.q2 || w.x.assigned(w.element)) return false;
      slack = Marginal(oracle, w.x, w.q, w.element) +
              Marginal(oracle, w.x, w.q2, w.element);
      break;
    }
    case Witness::Kind::kMonotone: {
      if (w.x.assigned(w.element)) return false;
      slack = Marginal(oracle, w.x, w.q, w.element);
      break;
    }
  }
  return slack < -tol;
}

nlohmann::json ReportToJson(const VerificationReport& report) {
  nlohmann::json j;
  j["passed"] = report.passed;
  j["checked_pairs"] = report.checked_pairs;
  j["sampled"] = report.sampled;
  if (!report.witness) {
    j["witness"] = nullptr;
    return j;
  }
  const Witness& w = *report.witness;
  nlohmann::json wj;
  wj["kind"] = ToString(w.kind);
  wj["x"] = ToString(w.x);
  if (w.y) wj["y"] = ToString(*w.y);
  if (w.element >= 0) wj["i"] = w.element + 1;
  if (w.other_element >= 0) wj["j"] = w.other_element + 1;
  if (w.q > 0) wj["q"] = w.q;
  if (w.q2 > 0) wj["q2"] = w.q2;
  wj["slack"] = w.slack;
  j["witness"] = std::move(wj);
  return j;
}

ExhaustiveResult ExhaustiveMax(const ValueOracle& oracle,
                               const FeasibleRegion& region,
                               const ExhaustiveOptions& options) {
  const GroundSet& g = oracle.ground();
  ExhaustiveResult result(g);
  const std::vector<int> caps = EnumerationCaps(region, g);
  ForEachKSetWithin(g, caps, [&](const KSet& s) {
    if (!region.Admits(s)) return true;
    if (result.evaluations >= options.max_evaluations) {
      result.complete = false;
      return false;
    }
    ++result.feasible_visited;
    ++result.evaluations;
    const double v = oracle.Evaluate(s);
    if (!result.found || v > result.value) {
      result.found = true;
      result.value = v;
      result.best = s;
    }
    return true;
  });
  return result;
}

namespace {

BigCount Binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  BigCount c = 1;
  for (int j = 1; j <= r; ++j) {
    c *= n - r + j;
    c /= j;
  }
  return c;
}

void CheckCountArgs(int n, int k, std::span<const int> b) {
  if (n < 0 || k < 1 || b.size() != static_cast<std::size_t>(k)) {
    throw std::invalid_argument("count needs n >= 0, k >= 1 and k bounds");
  }
  for (int v : b) {
    if (v < 0) throw std::invalid_argument("bounds must be non-negative");
  }
}

BigCount CountWithin(int remaining, std::span<const int> bounds) {
  if (bounds.empty()) return 1;
  BigCount total = 0;
  for (int s = 0; s <= std::min(bounds.front(), remaining); ++s) {
    total += Binomial(remaining, s) *
             CountWithin(remaining - s, bounds.subspan(1));
  }
  return total;
}

}  // namespace

BigCount CountExactFeasible(int n, int k, std::span<const int> sizes) {
  CheckCountArgs(n, k, sizes);
  int remaining = n;
  BigCount count = 1;
  for (int b : sizes) {
    if (b > remaining) {
      throw std::invalid_argument("sum of subset sizes exceeds n");
    }
    count *= Binomial(remaining, b);
    remaining -= b;
  }
  return count;
}

BigCount CountFeasibleWithin(int n, int k, std::span<const int> bounds) {
  CheckCountArgs(n, k, bounds);
  return CountWithin(n, bounds);
}

}  // namespace ksubmax
