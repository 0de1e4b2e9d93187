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

#include "commands.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ksubmax/dcg.h"
#include "ksubmax/entropy_oracle.h"
#include "ksubmax/instances.h"
#include "ksubmax/verify.h"
#include "problem.h"

namespace ksubmax::cli {
namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

json Finite(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

std::string JoinInts(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

std::vector<int> Labels(const KSet& s) {
  std::vector<int> labels;
  for (int i = 0; i < s.n(); ++i) labels.push_back(s.label(i));
  return labels;
}

std::vector<int> DefaultBins(int k) {
  std::vector<int> bins = {2, 3, 2};
  bins.resize(static_cast<std::size_t>(k), 2);
  return bins;
}

// Options shared by every subcommand.
struct Common {
  std::string format = "json";
  std::uint64_t seed = 0;
};

void AddCommon(CLI::App* cmd, Common& c, const std::string& default_format) {
  c.format = default_format;
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "human"}))
      ->envname("KSUBMAX_FORMAT")
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, "Seed for every random choice")
      ->envname("KSUBMAX_SEED")
      ->capture_default_str();
}

// Options naming a problem file and optional region overrides.
struct ProblemArgs {
  std::string instance;
  std::string oracle = "entropy";
  std::vector<int> bounds;
  int total_bound = -1;
};

void AddProblem(CLI::App* cmd, ProblemArgs& p) {
  cmd->add_option("--instance", p.instance,
                  "Instance file (entropy) or problem file (other kinds)")
      ->required()
      ->envname("KSUBMAX_INSTANCE");
  cmd->add_option("--oracle", p.oracle, "Oracle kind")
      ->check(CLI::IsMember({"entropy", "modular", "coverage", "table"}))
      ->envname("KSUBMAX_ORACLE")
      ->capture_default_str();
  cmd->add_option("--B", p.bounds,
                  "Per-subset cardinality bounds, overriding the file")
      ->delimiter(',');
  cmd->add_option("--total-bound", p.total_bound,
                  "Bound on the total number of assigned elements");
}

Problem Load(const ProblemArgs& a) {
  Problem p = LoadProblem(a.instance, a.oracle);
  if (!a.bounds.empty()) p.region.per_type_bounds = a.bounds;
  if (a.total_bound >= 0) p.region.total_bound = a.total_bound;
  if (p.region.per_type_bounds &&
      p.region.per_type_bounds->size() !=
          static_cast<std::size_t>(p.oracle->ground().k())) {
    throw std::invalid_argument("--B needs one bound per subset (k = " +
                                std::to_string(p.oracle->ground().k()) + ")");
  }
  return p;
}

json ProblemConfig(const std::string& command, const Common& c,
                   const ProblemArgs& a, const Problem& p) {
  json j;
  j["command"] = command;
  j["instance"] = a.instance;
  j["oracle"] = a.oracle;
  j["format"] = c.format;
  j["seed"] = c.seed;
  j["n"] = p.oracle->ground().n();
  j["k"] = p.oracle->ground().k();
  j["B"] = p.region.per_type_bounds ? json(*p.region.per_type_bounds)
                                    : json(nullptr);
  j["total_bound"] =
      p.region.total_bound ? json(*p.region.total_bound) : json(nullptr);
  return j;
}

void EmitJson(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// ---------------------------------------------------------------- solve

struct SolveArgs {
  Common common;
  ProblemArgs problem;
  double epsilon = 1e-6;
  double time_limit = 3600.0;
  std::string xi_policy = "auto";
  std::int64_t max_iterations = 0;
  std::int64_t node_limit = 5'000'000;
};

void AddSolveOptions(CLI::App* cmd, SolveArgs& a) {
  cmd->add_option("--epsilon", a.epsilon, "Relative gap (UB - LB) / UB")
      ->check(CLI::PositiveNumber)
      ->envname("KSUBMAX_EPSILON")
      ->capture_default_str();
  cmd->add_option("--time-limit", a.time_limit, "Wall-clock limit in seconds")
      ->check(CLI::PositiveNumber)
      ->envname("KSUBMAX_TIME_LIMIT")
      ->capture_default_str();
  cmd->add_option("--xi-policy", a.xi_policy,
                  "Removal penalties for non-monotone oracles")
      ->check(CLI::IsMember({"exact", "zeta", "auto"}))
      ->envname("KSUBMAX_XI_POLICY")
      ->capture_default_str();
  cmd->add_option("--max-iterations", a.max_iterations,
                  "Stop after this many master solves (0: no limit)")
      ->capture_default_str();
  cmd->add_option("--node-limit", a.node_limit,
                  "Branch-and-bound nodes per master solve")
      ->capture_default_str();
}

SolveConfig ToConfig(const SolveArgs& a) {
  SolveConfig config;
  config.epsilon = a.epsilon;
  config.time_limit_s = a.time_limit;
  config.xi_policy = *ParseXiPolicy(a.xi_policy);
  config.max_iterations = a.max_iterations;
  config.milp.node_limit = a.node_limit;
  return config;
}

int SolveExit(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return kExitOk;
    case SolveStatus::kGapLimit:
    case SolveStatus::kTimeLimit:
      return kExitPartial;
    case SolveStatus::kInfeasible:
      return kExitError;
  }
  return kExitError;
}

int RunSolve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const Problem p = Load(a.problem);
  const SolveConfig config = ToConfig(a);
  const SolveReport report = Solve(*p.oracle, p.region, config);

  json cfg = ProblemConfig("solve", a.common, a.problem, p);
  cfg.update(ConfigToJson(config));
  const int t = p.spec ? p.spec->t : 0;
  const std::vector<int> bounds =
      p.region.per_type_bounds.value_or(std::vector<int>{});

  if (a.common.format == "json") {
    json j = ReportToJson(report);
    j["config"] = std::move(cfg);
    EmitJson(out, j);
  } else if (a.common.format == "csv") {
    err << "# config " << cfg.dump() << '\n';
    out << ReportCsvHeader() << '\n'
        << ReportCsvRow(report, p.oracle->ground().n(), t, bounds) << '\n';
  } else {
    out << "status      " << ToString(report.status) << '\n'
        << "incumbent   "
        << (report.incumbent ? ToString(*report.incumbent) : "-") << '\n'
        << "value (LB)  " << Num(report.lb) << '\n'
        << "bound (UB)  " << Num(report.ub) << '\n'
        << "gap         " << Num(report.gap) << '\n'
        << "cuts        " << report.cuts_added << " (" << report.weak_cuts
        << " weak)\n"
        << "iterations  " << report.iterations << '\n'
        << "nodes       " << report.total_bb_nodes << '\n'
        << "xi source   " << report.xi_source << '\n'
        << "time (s)    " << Num(report.wall_time_s) << '\n';
  }
  return SolveExit(report.status);
}

// --------------------------------------------------------------- verify

struct VerifyArgs {
  Common common;
  ProblemArgs problem;
  std::vector<std::string> checks = {"def1", "c1c2", "monotone"};
  bool sample = false;
  std::uint64_t samples = 200000;
  std::uint64_t max_ksets = 4096;
  double tol = 1e-9;
};

int RunVerify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const Problem p = Load(a.problem);
  VerifyOptions options;
  options.allow_sampling = a.sample;
  options.samples = a.samples;
  options.max_ksets = a.max_ksets;
  options.seed = a.common.seed;
  options.tol = a.tol;

  json results = json::object();
  bool passed = true;
  for (const std::string& check : a.checks) {
    VerificationReport r;
    try {
      if (check == "def1") {
        r = CheckKSubmodular(*p.oracle, options);
      } else if (check == "c1c2") {
        r = CheckC1C2(*p.oracle, options);
      } else {
        r = CheckMonotone(*p.oracle, options);
      }
    } catch (const EnumerationCapExceeded& e) {
      err << "error: " << e.what() << "; pass --sample to check a random "
          << "subset instead\n";
      return kExitPartial;
    }
    passed = passed && r.passed;
    results[check] = ReportToJson(r);
  }

  json cfg = ProblemConfig("verify", a.common, a.problem, p);
  cfg["checks"] = a.checks;
  cfg["sample"] = a.sample;
  cfg["samples"] = a.samples;
  cfg["max_ksets"] = a.max_ksets;
  cfg["tol"] = a.tol;

  if (a.common.format == "json") {
    EmitJson(out, {{"passed", passed}, {"checks", results}, {"config", cfg}});
  } else if (a.common.format == "csv") {
    err << "# config " << cfg.dump() << '\n';
    out << "check,passed,checked_pairs,sampled,witness_kind,slack\n";
    for (const std::string& check : a.checks) {
      const json& r = results[check];
      out << check << ',' << (r["passed"].get<bool>() ? "true" : "false")
          << ',' << r["checked_pairs"] << ','
          << (r["sampled"].get<bool>() ? "true" : "false") << ',';
      if (!r["witness"].is_null()) {
        out << r["witness"]["kind"].get<std::string>() << ','
            << Num(r["witness"]["slack"].get<double>());
      } else {
        out << ',';
      }
      out << '\n';
    }
  } else {
    for (const std::string& check : a.checks) {
      const json& r = results[check];
      out << std::left << std::setw(10) << check
          << (r["passed"].get<bool>() ? "pass" : "FAIL") << "  ("
          << r["checked_pairs"] << (r["sampled"].get<bool>() ? " sampled" : "")
          << " checks)\n";
      if (!r["witness"].is_null()) {
        const json& w = r["witness"];
        out << "  witness " << w["kind"].get<std::string>() << " X = "
            << w["x"].get<std::string>();
        if (w.contains("y")) out << ", Y = " << w["y"].get<std::string>();
        for (const char* key : {"i", "j", "q", "q2"}) {
          if (w.contains(key)) out << ", " << key << " = " << w[key];
        }
        out << ", slack " << Num(w["slack"].get<double>()) << '\n';
      }
    }
  }
  return passed ? kExitOk : kExitError;
}

// ------------------------------------------------------------ enumerate

struct EnumerateArgs {
  Common common;
  ProblemArgs problem;
  std::uint64_t max_evaluations = 100'000'000;
};

int RunEnumerate(const EnumerateArgs& a, std::ostream& out,
                 std::ostream& err) {
  const Problem p = Load(a.problem);
  ExhaustiveOptions options;
  options.max_evaluations = a.max_evaluations;
  const auto start = Clock::now();
  const ExhaustiveResult r = ExhaustiveMax(*p.oracle, p.region, options);
  const double elapsed = Seconds(start);

  std::string status = "complete";
  int code = kExitOk;
  if (!r.complete) {
    status = "budget_exceeded";
    code = kExitPartial;
  } else if (!r.found) {
    status = "infeasible";
    code = kExitError;
  }
  json cfg = ProblemConfig("enumerate", a.common, a.problem, p);
  cfg["max_evaluations"] = a.max_evaluations;

  if (a.common.format == "json") {
    json j;
    j["status"] = status;
    j["complete"] = r.complete;
    j["value"] = r.found ? Finite(r.value) : json(nullptr);
    j["best"] = r.found ? json(ToString(r.best)) : json(nullptr);
    j["best_labels"] = r.found ? json(Labels(r.best)) : json(nullptr);
    j["evaluations"] = r.evaluations;
    j["feasible_visited"] = r.feasible_visited;
    j["wall_time_s"] = elapsed;
    j["config"] = std::move(cfg);
    EmitJson(out, j);
  } else if (a.common.format == "csv") {
    err << "# config " << cfg.dump() << '\n';
    out << "status,value,best,evaluations,time_s\n"
        << status << ',' << (r.found ? Num(r.value) : "") << ",\""
        << (r.found ? ToString(r.best) : "") << "\"," << r.evaluations << ','
        << Num(elapsed) << '\n';
  } else {
    out << "status       " << status << '\n'
        << "best         " << (r.found ? ToString(r.best) : "-") << '\n'
        << "value        " << (r.found ? Num(r.value) : "-") << '\n'
        << "evaluations  " << r.evaluations << '\n'
        << "time (s)     " << Num(elapsed) << '\n';
  }
  return code;
}

// ---------------------------------------------------------------- count

struct CountArgs {
  Common common;
  int n = 0;
  int k = 0;
  std::vector<int> bounds;
  bool within = false;
};

int RunCount(const CountArgs& a, std::ostream& out, std::ostream& /*err*/) {
  const BigCount c = a.within ? CountFeasibleWithin(a.n, a.k, a.bounds)
                              : CountExactFeasible(a.n, a.k, a.bounds);
  const std::string digits = c.str();
  const double approx = c.convert_to<double>();
  char sci[32];
  std::snprintf(sci, sizeof sci, "%.2e", approx);
  const std::string mode = a.within ? "within" : "exact";
  if (a.common.format == "json") {
    EmitJson(out, {{"count", digits},
                   {"approx", approx},
                   {"approx_3sf", sci},
                   {"config",
                    {{"command", "count"},
                     {"n", a.n},
                     {"k", a.k},
                     {"B", a.bounds},
                     {"mode", mode},
                     {"format", a.common.format},
                     {"seed", a.common.seed}}}});
  } else if (a.common.format == "csv") {
    out << "n,k,B,mode,count\n"
        << a.n << ',' << a.k << ",\"" << JoinInts(a.bounds) << "\"," << mode
        << ',' << digits << '\n';
  } else {
    out << digits << "  (~" << sci << ")\n";
  }
  return kExitOk;
}

// ----------------------------------------------------- discretize / gen

struct SampleArgs {
  int n = 0;
  int t = 0;
  int k = 0;
  std::vector<int> bins;
  std::vector<int> bounds;
};

void AddSampleOptions(CLI::App* cmd, SampleArgs& s, bool defaults) {
  cmd->add_option("--n", s.n, defaults ? "Locations to sample"
                                       : "Locations to sample (0: all)")
      ->capture_default_str();
  cmd->add_option("--t", s.t, defaults ? "Samples to draw"
                                       : "Samples to draw (0: all)")
      ->capture_default_str();
  cmd->add_option("--k", s.k, "Sensor types (0: one per bin count)")
      ->capture_default_str();
  cmd->add_option("--bins", s.bins, "Equal-width bin count per feature")
      ->delimiter(',');
  cmd->add_option("--B", s.bounds,
                  "Per-type cardinality bounds (default floor(n/10))")
      ->delimiter(',');
}

Instance BuildInstance(const RawReadings& raw, const SampleArgs& s,
                       std::uint64_t seed) {
  InstanceSpec spec;
  spec.k = s.k > 0 ? s.k
                   : (s.bins.empty() ? std::min(2, raw.num_features())
                                     : static_cast<int>(s.bins.size()));
  spec.n = s.n > 0 ? s.n : raw.num_locations();
  spec.t = s.t > 0 ? s.t : raw.num_samples;
  spec.bins = s.bins.empty() ? DefaultBins(spec.k) : s.bins;
  spec.bounds = s.bounds;
  spec.rng_seed = seed;
  return SampleInstance(raw, spec);
}

void WriteInstance(const Instance& inst, const std::string& format,
                   std::ostream& out) {
  if (format == "json") {
    out << InstanceToJson(inst).dump(1) << '\n';
  } else if (format == "csv") {
    WriteObservationCsv(inst.observations, out);
  } else {
    out << "locations  " << inst.spec.n << " of which ids "
        << JoinInts(inst.observations.location_ids()) << '\n'
        << "samples    " << inst.spec.t << '\n'
        << "types      " << inst.spec.k << " with bins "
        << JoinInts(inst.spec.bins) << '\n'
        << "B          " << JoinInts(inst.spec.bounds) << '\n'
        << "seed       " << inst.spec.rng_seed << '\n';
  }
}

// Writes to `path`, or to `out` when the path is empty.
void Deliver(const std::string& path, std::ostream& out,
             const std::function<void(std::ostream&)>& write) {
  if (path.empty()) {
    write(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write " + path);
  write(file);
  if (!file) throw std::runtime_error("write failed for " + path);
}

struct DiscretizeArgs {
  Common common;
  SampleArgs sample;
  std::string raw;
  std::string output;
};

int RunDiscretize(const DiscretizeArgs& a, std::ostream& out,
                  std::ostream& /*err*/) {
  std::ifstream in(a.raw);
  if (!in) throw InstanceFormatError("cannot open " + a.raw);
  const RawReadings raw = ReadRawCsv(in);
  const Instance inst = BuildInstance(raw, a.sample, a.common.seed);
  Deliver(a.output, out,
          [&](std::ostream& o) { WriteInstance(inst, a.common.format, o); });
  return kExitOk;
}

struct GenArgs {
  Common common;
  SyntheticOptions synthetic;
  std::string output;
  std::string instance_out;
  SampleArgs sample;
  std::uint64_t instance_seed = 0;
};

int RunGen(const GenArgs& a, std::ostream& out, std::ostream& /*err*/) {
  SyntheticOptions options = a.synthetic;
  options.seed = a.common.seed;
  const RawReadings raw = GenerateSynthetic(options);
  if (!a.instance_out.empty()) {
    SaveInstance(BuildInstance(raw, a.sample, a.instance_seed),
                 a.instance_out);
  }
  if (a.instance_out.empty() || !a.output.empty()) {
    Deliver(a.output, out, [&](std::ostream& o) { WriteRawCsv(raw, o); });
  }
  return kExitOk;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  Common common;
  std::vector<int> ns = {10, 12};
  std::vector<int> ts = {20};
  int k = 2;
  std::vector<int> bounds;
  std::vector<int> bins;
  int trials = 1;
  double time_limit = 60.0;
  double epsilon = 1e-6;
  std::string xi_policy = "auto";
  bool es = false;
  std::uint64_t es_max_evaluations = 100'000'000;
  int threads = 1;
  std::string raw;
  SyntheticOptions synthetic;
};

struct BenchRow {
  int n = 0;
  int t = 0;
  std::vector<int> bounds;
  int trial = 0;
  std::uint64_t seed = 0;
  std::string status;
  double time_s = 0.0;
  std::int64_t cuts = 0;
  std::int64_t nodes = 0;
  double end_gap = 0.0;
  std::optional<double> es_time_s;
  std::optional<double> value;
  std::optional<double> es_value;
  std::string error;
};

BenchRow RunCell(const RawReadings& raw, const BenchArgs& a, int n, int t,
                 int trial, std::uint64_t seed) {
  BenchRow row;
  row.n = n;
  row.t = t;
  row.trial = trial;
  row.seed = seed;
  try {
    InstanceSpec spec;
    spec.n = n;
    spec.t = t;
    spec.k = a.k;
    spec.bins = a.bins.empty() ? DefaultBins(a.k) : a.bins;
    spec.bounds = a.bounds;
    spec.rng_seed = seed;
    const Instance inst = SampleInstance(raw, spec);
    row.bounds = inst.spec.bounds;
    const OraclePtr f = MakeEntropyOracle(inst.observations);
    SolveConfig config;
    config.epsilon = a.epsilon;
    config.time_limit_s = a.time_limit;
    config.xi_policy = *ParseXiPolicy(a.xi_policy);
    const SolveReport r = Solve(*f, inst.Region(), config);
    row.status = ToString(r.status);
    row.time_s = r.status == SolveStatus::kTimeLimit ? a.time_limit
                                                     : r.wall_time_s;
    row.cuts = r.cuts_added;
    row.nodes = r.total_bb_nodes;
    row.end_gap = r.gap;
    if (r.incumbent) row.value = r.lb;
    if (a.es) {
      ExhaustiveOptions es;
      es.max_evaluations = a.es_max_evaluations;
      const auto start = Clock::now();
      const ExhaustiveResult e = ExhaustiveMax(*f, inst.Region(), es);
      if (e.complete) {
        row.es_time_s = Seconds(start);
        if (e.found) row.es_value = e.value;
      }
    }
  } catch (const std::exception& e) {
    row.status = "error";
    row.error = e.what();
  }
  return row;
}

int RunBench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  RawReadings raw;
  if (!a.raw.empty()) {
    std::ifstream in(a.raw);
    if (!in) throw InstanceFormatError("cannot open " + a.raw);
    raw = ReadRawCsv(in);
  } else {
    raw = GenerateSynthetic(a.synthetic);
  }

  struct Job {
    int n, t, trial;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (int n : a.ns) {
    for (int t : a.ts) {
      for (int trial = 0; trial < a.trials; ++trial) {
        // Each trial resamples locations and samples under its own seed.
        jobs.push_back({n, t, trial,
                        a.common.seed + static_cast<std::uint64_t>(jobs.size())});
      }
    }
  }
  std::vector<BenchRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      rows[i] = RunCell(raw, a, jobs[i].n, jobs[i].t, jobs[i].trial,
                        jobs[i].seed);
    }
  };
  const int threads =
      std::max(1, std::min<int>(a.threads, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (const BenchRow& row : rows) {
    if (!row.error.empty()) {
      err << "cell n=" << row.n << " t=" << row.t << " trial=" << row.trial
          << ": " << row.error << '\n';
    }
  }

  json cfg = {{"command", "bench"},
              {"n", a.ns},
              {"t", a.ts},
              {"k", a.k},
              {"B", a.bounds.empty() ? json("floor(n/10)") : json(a.bounds)},
              {"bins", a.bins.empty() ? DefaultBins(a.k) : a.bins},
              {"trials", a.trials},
              {"seed", a.common.seed},
              {"time_limit_s", a.time_limit},
              {"epsilon", a.epsilon},
              {"xi_policy", a.xi_policy},
              {"es", a.es},
              {"threads", a.threads},
              {"raw", a.raw.empty() ? json(nullptr) : json(a.raw)},
              {"synthetic",
               {{"locations", a.synthetic.locations},
                {"samples", a.synthetic.samples},
                {"seed", a.synthetic.seed},
                {"regimes", a.synthetic.regimes}}}};

  if (a.common.format == "json") {
    json list = json::array();
    for (const BenchRow& row : rows) {
      list.push_back({{"n", row.n},
                      {"t", row.t},
                      {"B", row.bounds},
                      {"trial", row.trial},
                      {"seed", row.seed},
                      {"status", row.status},
                      {"time_s", row.error.empty() ? json(row.time_s) : json(nullptr)},
                      {"cuts", row.cuts},
                      {"nodes", row.nodes},
                      {"end_gap", Finite(row.end_gap)},
                      {"es_time_s", row.es_time_s ? json(*row.es_time_s)
                                                  : json(nullptr)},
                      {"value", row.value ? json(*row.value) : json(nullptr)},
                      {"es_value",
                       row.es_value ? json(*row.es_value) : json(nullptr)},
                      {"error", row.error.empty() ? json(nullptr)
                                                  : json(row.error)}});
    }
    EmitJson(out, {{"rows", list}, {"config", cfg}});
    return kExitOk;
  }

  err << "# config " << cfg.dump() << '\n';
  const bool human = a.common.format == "human";
  const char sep = human ? ' ' : ',';
  auto cell = [&](const std::string& s, int width) {
    std::ostringstream o;
    if (human) {
      o << std::left << std::setw(width) << s;
    } else {
      o << s;
    }
    return o.str();
  };
  const std::vector<std::pair<std::string, int>> header = {
      {"n", 4},      {"t", 5},    {"B", 8},     {"trial", 6},    {"seed", 6},
      {"time_s", 11}, {"cuts", 6}, {"nodes", 10}, {"end_gap", 12}, {"es_time_s", 10}};
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c) out << sep;
    out << cell(header[c].first, header[c].second);
  }
  out << '\n';
  for (const BenchRow& row : rows) {
    const bool failed = !row.error.empty();
    const std::string b = human ? JoinInts(row.bounds)
                                : "\"" + JoinInts(row.bounds) + "\"";
    const std::vector<std::string> fields = {
        std::to_string(row.n),
        std::to_string(row.t),
        b,
        std::to_string(row.trial),
        std::to_string(row.seed),
        failed ? "" : Num(row.time_s),
        failed ? "" : std::to_string(row.cuts),
        failed ? "" : std::to_string(row.nodes),
        failed ? "error" : Num(row.end_gap),
        row.es_time_s ? Num(*row.es_time_s) : ""};
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (c) out << sep;
      out << cell(fields[c], header[c].second);
    }
    out << '\n';
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"k-submodular maximization by delayed constraint generation",
               "ksubmax"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ksubmax 0.1.0");
  std::function<int()> action;

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Maximize an oracle exactly");
  AddCommon(solve_cmd, solve.common, "json");
  AddProblem(solve_cmd, solve.problem);
  AddSolveOptions(solve_cmd, solve);
  solve_cmd->callback([&] { action = [&] { return RunSolve(solve, out, err); }; });

  VerifyArgs verify;
  auto* verify_cmd =
      app.add_subcommand("verify", "Check k-submodularity and monotonicity");
  AddCommon(verify_cmd, verify.common, "json");
  AddProblem(verify_cmd, verify.problem);
  verify_cmd->add_option("--checks", verify.checks, "Checks to run")
      ->delimiter(',')
      ->check(CLI::IsMember({"def1", "c1c2", "monotone"}))
      ->capture_default_str();
  verify_cmd->add_flag("--sample", verify.sample,
                       "Sample random instances past the enumeration cap");
  verify_cmd->add_option("--samples", verify.samples, "Samples per check")
      ->capture_default_str();
  verify_cmd->add_option("--max-ksets", verify.max_ksets,
                         "Largest (k+1)^n enumerated exhaustively")
      ->capture_default_str();
  verify_cmd->add_option("--tol", verify.tol, "Violation tolerance")
      ->capture_default_str();
  verify_cmd->callback(
      [&] { action = [&] { return RunVerify(verify, out, err); }; });

  EnumerateArgs enumerate;
  auto* enumerate_cmd = app.add_subcommand(
      "enumerate", "Exhaustive search over every feasible k-set");
  AddCommon(enumerate_cmd, enumerate.common, "json");
  AddProblem(enumerate_cmd, enumerate.problem);
  enumerate_cmd
      ->add_option("--max-evaluations", enumerate.max_evaluations,
                   "Oracle evaluation budget")
      ->capture_default_str();
  enumerate_cmd->callback(
      [&] { action = [&] { return RunEnumerate(enumerate, out, err); }; });

  CountArgs count;
  auto* count_cmd =
      app.add_subcommand("count", "Count k-sets with the given subset sizes");
  AddCommon(count_cmd, count.common, "json");
  count_cmd->add_option("--n", count.n, "Ground set size")
      ->required()
      ->check(CLI::NonNegativeNumber);
  count_cmd->add_option("--k", count.k, "Number of subsets")
      ->required()
      ->check(CLI::PositiveNumber);
  count_cmd->add_option("--B", count.bounds, "Subset sizes")
      ->required()
      ->delimiter(',');
  count_cmd->add_flag("--within", count.within,
                      "Count sizes up to B instead of exactly B");
  count_cmd->callback(
      [&] { action = [&] { return RunCount(count, out, err); }; });

  DiscretizeArgs discretize;
  auto* discretize_cmd = app.add_subcommand(
      "discretize", "Bin raw readings and write an instance");
  AddCommon(discretize_cmd, discretize.common, "json");
  AddSampleOptions(discretize_cmd, discretize.sample, false);
  discretize_cmd
      ->add_option("--raw", discretize.raw,
                   "CSV with header location,sample,feature,value")
      ->required();
  discretize_cmd->add_option("--output", discretize.output,
                             "Output file (default stdout)");
  discretize_cmd->callback(
      [&] { action = [&] { return RunDiscretize(discretize, out, err); }; });

  GenArgs gen;
  gen.common.seed = 1;
  auto* gen_cmd = app.add_subcommand("gen", "Generate synthetic readings");
  AddCommon(gen_cmd, gen.common, "csv");
  gen_cmd->add_option("--locations", gen.synthetic.locations)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen_cmd->add_option("--samples", gen.synthetic.samples)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen_cmd->add_option("--regimes", gen.synthetic.regimes,
                      "Mixture components per location")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen_cmd->add_option("--output", gen.output, "Raw CSV file (default stdout)");
  gen_cmd->add_option("--instance-out", gen.instance_out,
                      "Also sample an instance into this file");
  gen_cmd->add_option("--instance-seed", gen.instance_seed,
                      "Seed for the instance sample")
      ->capture_default_str();
  gen.sample.n = 20;
  gen.sample.t = 50;
  AddSampleOptions(gen_cmd, gen.sample, true);
  gen_cmd->callback([&] { action = [&] { return RunGen(gen, out, err); }; });

  BenchArgs bench;
  bench.common.seed = 1;
  auto* bench_cmd =
      app.add_subcommand("bench", "Run a grid of sampled entropy instances");
  AddCommon(bench_cmd, bench.common, "csv");
  bench_cmd->add_option("--n", bench.ns, "Location counts")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--t", bench.ts, "Sample counts")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--k", bench.k, "Sensor types")
      ->check(CLI::Range(1, 3))
      ->capture_default_str();
  bench_cmd->add_option("--B", bench.bounds, "Fixed bounds for every cell")
      ->delimiter(',');
  bench_cmd->add_option("--bins", bench.bins, "Bin count per feature")
      ->delimiter(',');
  bench_cmd->add_option("--trials", bench.trials, "Trials per cell")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--time-limit", bench.time_limit, "Seconds per solve")
      ->check(CLI::PositiveNumber)
      ->envname("KSUBMAX_TIME_LIMIT")
      ->capture_default_str();
  bench_cmd->add_option("--epsilon", bench.epsilon, "Relative gap")
      ->check(CLI::PositiveNumber)
      ->envname("KSUBMAX_EPSILON")
      ->capture_default_str();
  bench_cmd->add_option("--xi-policy", bench.xi_policy)
      ->check(CLI::IsMember({"exact", "zeta", "auto"}))
      ->capture_default_str();
  bench_cmd->add_flag("--es", bench.es, "Also time exhaustive search");
  bench_cmd->add_option("--es-max-evaluations", bench.es_max_evaluations)
      ->capture_default_str();
  bench_cmd->add_option("--threads", bench.threads, "Cells run in parallel")
      ->check(CLI::PositiveNumber)
      ->envname("KSUBMAX_THREADS")
      ->capture_default_str();
  bench_cmd->add_option("--raw", bench.raw,
                        "Raw CSV (default: synthetic readings)");
  bench_cmd->add_option("--data-seed", bench.synthetic.seed,
                        "Seed of the synthetic readings")
      ->capture_default_str();
  bench_cmd->callback(
      [&] { action = [&] { return RunBench(bench, out, err); }; });

  std::vector<std::string> argv_storage = {"ksubmax"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& s : argv_storage) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    return action();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace ksubmax::cli
