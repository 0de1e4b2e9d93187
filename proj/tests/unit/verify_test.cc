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

#include <gtest/gtest.h>

#include "ksubmax/entropy_oracle.h"
#include "test_oracles.h"

namespace ksubmax {
namespace {

using testing::Rng;

TEST(CheckKSubmodularTest, ModularPasses) {
  const OraclePtr f = MakeModularOracle({{1, 1, 1}, {2, 2, 2}});
  const VerificationReport r = CheckKSubmodular(*f);
  EXPECT_TRUE(r.passed);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_EQ(r.checked_pairs, 27u * 28u / 2u);
}

TEST(CheckKSubmodularTest, SquaredFailsWithWitness) {
  const OraclePtr f = testing::SquaredOracle(2);
  const VerificationReport r = CheckKSubmodular(*f);
  ASSERT_FALSE(r.passed);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->kind, Witness::Kind::kPairwise);
  EXPECT_TRUE(WitnessViolates(*f, *r.witness));
  // ({1},{}) and ({2},{}): 1 + 1 < 0 + 4.
  const Witness w{Witness::Kind::kPairwise, ParseKSet("({1},{})", 2),
                  ParseKSet("({2},{})", 2)};
  EXPECT_TRUE(WitnessViolates(*f, w));
}

TEST(CheckKSubmodularTest, ZeroPasses) {
  EXPECT_TRUE(CheckKSubmodular(*testing::ZeroOracle(3, 3)).passed);
  EXPECT_TRUE(CheckC1C2(*testing::ZeroOracle(3, 3)).passed);
  EXPECT_TRUE(CheckMonotone(*testing::ZeroOracle(3, 3)).passed);
}

TEST(CheckKSubmodularTest, CapAndSampling) {
  const OraclePtr f = testing::PlusMinusOracle(8);  // 3^8 > 4096
  EXPECT_THROW(CheckKSubmodular(*f), EnumerationCapExceeded);
  VerifyOptions options;
  options.allow_sampling = true;
  options.samples = 2000;
  const VerificationReport r = CheckKSubmodular(*f, options);
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.sampled);
  EXPECT_EQ(r.checked_pairs, 2000u);
}

TEST(CheckC1C2Test, PlusMinusPasses) {
  EXPECT_TRUE(CheckC1C2(*testing::PlusMinusOracle(3)).passed);
}

TEST(CheckC1C2Test, SquaredFailsAtC1) {
  const OraclePtr f = testing::SquaredOracle(2);
  const VerificationReport r = CheckC1C2(*f);
  ASSERT_FALSE(r.passed);
  EXPECT_EQ(r.witness->kind, Witness::Kind::kC1);
  EXPECT_TRUE(WitnessViolates(*f, *r.witness));
}

TEST(CheckC1C2Test, DetectsC2Violation) {
  // Submodular on each orthant but with negative cross marginals at empty.
  const GroundSet g(1, 2);
  const OraclePtr f = MakeTableOracle(g, std::vector<double>{0.0, -1.0, -1.0});
  const VerificationReport r = CheckC1C2(*f);
  ASSERT_FALSE(r.passed);
  EXPECT_EQ(r.witness->kind, Witness::Kind::kC2);
  EXPECT_TRUE(WitnessViolates(*f, *r.witness));
  EXPECT_FALSE(CheckKSubmodular(*f).passed);
}

TEST(CheckC1C2Test, AgreesWithPairwiseCheckOnRandomTables) {
  Rng rng(61);
  int failures = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const GroundSet g(2 + trial % 2, 2 + (trial / 2) % 2);
    const std::vector<double> values =
        trial % 3 == 0 ? testing::RandomKSubmodularValues(g, rng)
                       : testing::PerturbedValues(g, rng);
    const OraclePtr f = MakeTableOracle(g, values);
    const VerificationReport def = CheckKSubmodular(*f);
    const VerificationReport c = CheckC1C2(*f);
    EXPECT_EQ(def.passed, c.passed) << "trial " << trial;
    if (!def.passed) ++failures;
    for (const auto* r : {&def, &c}) {
      if (r->witness) EXPECT_TRUE(WitnessViolates(*f, *r->witness));
    }
  }
  EXPECT_GT(failures, 5);
  EXPECT_LT(failures, 50);
}

TEST(CheckMonotoneTest, Examples) {
  Rng rng(67);
  EXPECT_TRUE(
      CheckMonotone(*MakeEntropyOracle(testing::RandomObservations(4, 10, 2, 3,
                                                                   rng)))
          .passed);
  const OraclePtr pm = testing::PlusMinusOracle(3);
  const VerificationReport r = CheckMonotone(*pm);
  ASSERT_FALSE(r.passed);
  EXPECT_EQ(r.witness->kind, Witness::Kind::kMonotone);
  EXPECT_EQ(r.witness->q, 2);
  EXPECT_TRUE(WitnessViolates(*pm, *r.witness));
}

TEST(ReportJsonTest, Fields) {
  const nlohmann::json pass = ReportToJson(CheckKSubmodular(*testing::ZeroOracle(2, 2)));
  EXPECT_EQ(pass["passed"], true);
  EXPECT_TRUE(pass["witness"].is_null());
  EXPECT_EQ(pass["sampled"], false);
  const nlohmann::json fail =
      ReportToJson(CheckKSubmodular(*testing::SquaredOracle(2)));
  EXPECT_EQ(fail["passed"], false);
  EXPECT_EQ(fail["witness"]["kind"], "def1");
  EXPECT_LT(fail["witness"]["slack"].get<double>(), 0.0);
}

TEST(ExhaustiveMaxTest, WeightedCountTieBreak) {
  const OraclePtr f = MakeModularOracle({{1, 1}, {2, 2}});
  const ExhaustiveResult r = ExhaustiveMax(*f, FeasibleRegion::PerType({1, 1}));
  EXPECT_DOUBLE_EQ(r.value, 3.0);
  EXPECT_EQ(r.feasible_visited, 7u);
  EXPECT_EQ(r.evaluations, 7u);
  EXPECT_TRUE(r.complete);
  // Both ({1},{2}) and ({2},{1}) reach 3; label vector [1,2] < [2,1].
  EXPECT_EQ(ToString(r.best), "({1},{2})");
}

TEST(ExhaustiveMaxTest, ZeroUnconstrained) {
  const ExhaustiveResult r =
      ExhaustiveMax(*testing::ZeroOracle(3, 2), FeasibleRegion::Unconstrained());
  EXPECT_EQ(r.value, 0.0);
  EXPECT_EQ(r.evaluations, 27u);
  EXPECT_TRUE(r.best.IsEmpty());
}

TEST(ExhaustiveMaxTest, MatchesBruteForceAndDominatesSamples) {
  Rng rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 4;
    const int k = 2 + trial % 2;
    const OraclePtr f =
        MakeEntropyOracle(testing::RandomObservations(n, 15, k, 3, rng));
    std::vector<int> bounds(k);
    for (int& b : bounds) b = static_cast<int>(rng() % 3);
    const FeasibleRegion region = FeasibleRegion::PerType(bounds);
    const ExhaustiveResult r = ExhaustiveMax(*f, region);
    const testing::BruteForceMax ref = testing::BruteForceMaximum(*f, region);
    EXPECT_EQ(r.value, ref.value);
    EXPECT_EQ(r.best, ref.best);
    for (int rep = 0; rep < 50; ++rep) {
      const KSet s = testing::RandomFeasibleKSet(f->ground(), bounds, rng);
      EXPECT_GE(r.value, f->Evaluate(s));
    }
  }
}

TEST(ExhaustiveMaxTest, BudgetGivesPartialResult) {
  ExhaustiveOptions options;
  options.max_evaluations = 5;
  const ExhaustiveResult r = ExhaustiveMax(
      *testing::PlusMinusOracle(4), FeasibleRegion::Unconstrained(), options);
  EXPECT_FALSE(r.complete);
  EXPECT_EQ(r.evaluations, 5u);
  EXPECT_TRUE(r.found);
}

TEST(ExhaustiveMaxTest, RespectsTotalBoundAndExtras) {
  FeasibleRegion region;
  region.total_bound = 1;
  LinearConstraint no_first_in_two;
  no_first_in_two.terms = {{GroundSet(3, 2).VarIndex(1, 2), 1.0}};
  no_first_in_two.rhs = 0.0;
  region.extra.push_back(no_first_in_two);
  const OraclePtr f = MakeModularOracle({{1, 1, 5}, {2, 2, 2}});
  const ExhaustiveResult r = ExhaustiveMax(*f, region);
  EXPECT_DOUBLE_EQ(r.value, 2.0);
  EXPECT_EQ(ToString(r.best), "({},{3})");
}

TEST(CountTest, FiftyChooseFiveTwice) {
  const std::vector<int> b = {5, 5};
  const BigCount c = CountExactFeasible(50, 2, b);
  EXPECT_EQ(c.str(), "2588614098840");
  EXPECT_EQ(c, BigCount(2118760) * BigCount(1221759));
}

TEST(CountTest, SmallCases) {
  EXPECT_EQ(CountExactFeasible(2, 2, std::vector<int>{1, 1}), 2);
  EXPECT_EQ(CountExactFeasible(3, 3, std::vector<int>{1, 1, 1}), 6);
  EXPECT_THROW(CountExactFeasible(3, 2, std::vector<int>{2, 2}),
               std::invalid_argument);
  EXPECT_THROW(CountExactFeasible(3, 2, std::vector<int>{1}),
               std::invalid_argument);
  EXPECT_EQ(CountFeasibleWithin(2, 2, std::vector<int>{1, 1}), 7);
}

TEST(CountTest, MatchesEnumeration) {
  for (int n = 1; n <= 8; ++n) {
    for (int b1 = 0; b1 <= std::min(n, 3); ++b1) {
      for (int b2 = 0; b1 + b2 <= n && b2 <= 3; ++b2) {
        const std::vector<int> bounds = {b1, b2};
        std::uint64_t exact = 0;
        std::uint64_t within = 0;
        ForEachKSetWithin(GroundSet(n, 2), bounds, [&](const KSet& s) {
          ++within;
          if (s.SubsetSize(1) == b1 && s.SubsetSize(2) == b2) ++exact;
          return true;
        });
        EXPECT_EQ(CountExactFeasible(n, 2, bounds), exact);
        EXPECT_EQ(CountFeasibleWithin(n, 2, bounds), within);
      }
    }
  }
}

}  // namespace
}  // namespace ksubmax
