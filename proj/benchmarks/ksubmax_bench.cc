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

#include <random>

#include <benchmark/benchmark.h>

#include "ksubmax/cuts.h"
#include "ksubmax/dcg.h"
#include "ksubmax/entropy_oracle.h"
#include "ksubmax/instances.h"
#include "ksubmax/milp.h"
#include "ksubmax/verify.h"

namespace ksubmax {
namespace {

// Synthetic readings, sampled once per (n, t).
Instance SyntheticInstance(int n, int t, std::uint64_t seed = 1) {
  static const RawReadings raw = GenerateSynthetic({.samples = 300});
  InstanceSpec spec;
  spec.n = n;
  spec.t = t;
  spec.k = 2;
  spec.bins = {2, 3};
  spec.rng_seed = seed;
  return SampleInstance(raw, spec);
}

KSet RandomPlacement(const GroundSet& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> label(0, g.k());
  std::vector<int> labels(g.n());
  for (int& l : labels) l = label(rng);
  return KSet(g, labels);
}

void BM_EntropyEvaluate(benchmark::State& state) {
  const Instance inst = SyntheticInstance(static_cast<int>(state.range(0)),
                                          static_cast<int>(state.range(1)));
  const OraclePtr f = MakeEntropyOracle(inst.observations);
  std::mt19937_64 rng(3);
  std::vector<KSet> placements;
  for (int i = 0; i < 64; ++i) placements.push_back(RandomPlacement(f->ground(), rng));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f->Evaluate(placements[i++ % placements.size()]));
  }
}
BENCHMARK(BM_EntropyEvaluate)->Args({20, 50})->Args({20, 200})->Args({54, 200});

void BM_MonotoneCut(benchmark::State& state) {
  const Instance inst = SyntheticInstance(static_cast<int>(state.range(0)), 100);
  const OraclePtr f = MakeEntropyOracle(inst.observations);
  std::mt19937_64 rng(5);
  const KSet s = RandomPlacement(f->ground(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(BuildMonotoneCut(*f, s));
}
BENCHMARK(BM_MonotoneCut)->Arg(20)->Arg(40);

// A master holding `cuts` cuts from random generators under B = (2, 2).
MasterProblem EntropyMaster(int n, int cuts) {
  const Instance inst = SyntheticInstance(n, 50);
  const OraclePtr f = MakeEntropyOracle(inst.observations);
  const GroundSet& g = f->ground();
  MasterProblem master(g, CompileRegion(FeasibleRegion::PerType({2, 2}), g),
                       0.0);
  std::mt19937_64 rng(7);
  for (int c = 0; c < cuts; ++c) {
    master.AddCut(BuildMonotoneCut(*f, RandomPlacement(g, rng)));
  }
  return master;
}

void BM_MasterLp(benchmark::State& state) {
  const MasterProblem master = EntropyMaster(static_cast<int>(state.range(0)),
                                             static_cast<int>(state.range(1)));
  const std::vector<VarBounds> bounds(master.ground().dim());
  for (auto _ : state) benchmark::DoNotOptimize(LpSolve(master, bounds));
}
BENCHMARK(BM_MasterLp)->Args({20, 10})->Args({20, 50})->Args({20, 200});

void BM_MasterBranchAndBound(benchmark::State& state) {
  const MasterProblem master = EntropyMaster(static_cast<int>(state.range(0)),
                                             static_cast<int>(state.range(1)));
  std::int64_t nodes = 0;
  for (auto _ : state) {
    const BbResult r = BbSolve(master);
    nodes = r.nodes;
    benchmark::DoNotOptimize(r.eta);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_MasterBranchAndBound)->Args({12, 10})->Args({20, 20})
    ->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
  const Instance inst = SyntheticInstance(static_cast<int>(state.range(0)), 50);
  const OraclePtr f = MakeEntropyOracle(inst.observations);
  std::int64_t cuts = 0;
  for (auto _ : state) {
    const SolveReport r = Solve(*f, inst.Region());
    cuts = r.cuts_added;
    benchmark::DoNotOptimize(r.lb);
  }
  state.counters["cuts"] = static_cast<double>(cuts);
}
BENCHMARK(BM_Solve)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Exhaustive(benchmark::State& state) {
  const Instance inst = SyntheticInstance(static_cast<int>(state.range(0)), 50);
  const OraclePtr f = MakeEntropyOracle(inst.observations);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ExhaustiveMax(*f, inst.Region()).value);
  }
}
BENCHMARK(BM_Exhaustive)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace ksubmax

BENCHMARK_MAIN();
