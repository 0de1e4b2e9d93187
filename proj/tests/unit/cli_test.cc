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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "ksubmax/instances.h"
#include "problem.h"

namespace ksubmax::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ksubmax_cli_" +
            std::string(::testing::UnitTest::GetInstance()
                            ->current_test_info()
                            ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& body) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << body;
    return p.string();
  }
  std::string Path(const std::string& name) { return (dir_ / name).string(); }

  fs::path dir_;
};

// |S1| - |S2| on three elements.
const char* kPlusMinus =
    R"({"kind": "modular", "weights": [[1, 1, 1], [-1, -1, -1]], "B": [1, 1]})";

TEST_F(CliTest, CountPrintsExactDigits) {
  const CliRun r = Cli({"count", "--n", "50", "--k", "2", "--B", "5,5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["count"], "2588614098840");
  EXPECT_EQ(j["approx_3sf"], "2.59e+12");
}

TEST_F(CliTest, CountHumanAndCsv) {
  EXPECT_EQ(Cli({"count", "--n", "3", "--k", "2", "--B", "1,1", "--format",
                 "human"})
                .out,
            "6  (~6.00e+00)\n");
  const CliRun csv = Cli({"count", "--n", "2", "--k", "2", "--B", "1,1",
                       "--within", "--format", "csv"});
  EXPECT_EQ(csv.out, "n,k,B,mode,count\n2,2,\"1,1\",within,7\n");
}

TEST_F(CliTest, SolveModularProblem) {
  const std::string f = Write("pm.json", kPlusMinus);
  const CliRun r = Cli({"solve", "--instance", f, "--oracle", "modular"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["status"], "optimal");
  EXPECT_DOUBLE_EQ(j["lb"].get<double>(), 1.0);
  EXPECT_EQ(j["incumbent"], "({1},{})");
  EXPECT_EQ(j["config"]["oracle"], "modular");
  EXPECT_EQ(j["config"]["B"], json({1, 1}));
}

TEST_F(CliTest, SolveBoundOverride) {
  const std::string f = Write("pm.json", kPlusMinus);
  const CliRun r = Cli({"solve", "--instance", f, "--oracle", "modular", "--B",
                     "3,0", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header, "n,t,B,time_s,cuts,nodes,end_gap");
  EXPECT_EQ(row.rfind("3,0,\"3,0\",", 0), 0u) << row;
  EXPECT_NE(r.err.find("# config"), std::string::npos);
}

TEST_F(CliTest, SolveIterationLimitIsPartial) {
  const std::string inst = Path("inst.json");
  ASSERT_EQ(Cli({"gen", "--locations", "12", "--samples", "60",
                 "--instance-out", inst, "--n", "10", "--t", "40", "--B",
                 "2,2"})
                .code,
            kExitOk);
  const CliRun r = Cli({"solve", "--instance", inst, "--max-iterations", "1"});
  EXPECT_EQ(r.code, kExitPartial) << r.out << r.err;
  EXPECT_EQ(json::parse(r.out)["status"], "gap_limit");
}

TEST_F(CliTest, OracleKindMismatch) {
  const std::string f = Write("pm.json", kPlusMinus);
  const CliRun r = Cli({"solve", "--instance", f, "--oracle", "coverage"});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.err.find("modular"), std::string::npos) << r.err;
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Cli({}).code, kExitError);
  EXPECT_EQ(Cli({"solve"}).code, kExitError);
  EXPECT_EQ(Cli({"count", "--n", "3", "--k", "2", "--B", "1,1", "--format",
                 "yaml"})
                .code,
            kExitError);
  EXPECT_EQ(Cli({"frobnicate"}).code, kExitError);
  const CliRun missing = Cli({"solve", "--instance", Path("nope.json")});
  EXPECT_EQ(missing.code, kExitError);
  EXPECT_NE(missing.err.find("nope.json"), std::string::npos);
}

TEST_F(CliTest, HelpExitsZero) {
  const CliRun r = Cli({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("solve"), std::string::npos);
}

TEST_F(CliTest, VerifyPassAndFail) {
  const std::string ok = Write("pm.json", kPlusMinus);
  CliRun r = Cli({"verify", "--instance", ok, "--oracle", "modular"});
  EXPECT_EQ(r.code, kExitError);  // |S1| - |S2| is not monotone.
  json j = json::parse(r.out);
  EXPECT_TRUE(j["checks"]["def1"]["passed"].get<bool>());
  EXPECT_TRUE(j["checks"]["c1c2"]["passed"].get<bool>());
  EXPECT_FALSE(j["checks"]["monotone"]["passed"].get<bool>());
  EXPECT_FALSE(j["checks"]["monotone"]["witness"].is_null());

  r = Cli({"verify", "--instance", ok, "--oracle", "modular", "--checks",
           "def1,c1c2"});
  EXPECT_EQ(r.code, kExitOk);

  // f(S) = |S1|^2 on two elements, n = 2 k = 2: 9 entries.
  const std::string sq = Write(
      "sq.json",
      R"({"kind": "table", "n": 2, "k": 2,
          "values": [0, 1, 0, 1, 4, 1, 0, 1, 0]})");
  r = Cli({"verify", "--instance", sq, "--oracle", "table", "--checks",
           "def1", "--format", "human"});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("witness"), std::string::npos) << r.out;
}

TEST_F(CliTest, VerifyCapNeedsSample) {
  std::ostringstream weights;
  weights << R"({"weights": [[)";
  for (int i = 0; i < 12; ++i) weights << (i ? "," : "") << 1;
  weights << "],[";
  for (int i = 0; i < 12; ++i) weights << (i ? "," : "") << 2;
  weights << "]]}";
  const std::string f = Write("big.json", weights.str());
  CliRun r = Cli({"verify", "--instance", f, "--oracle", "modular"});
  EXPECT_EQ(r.code, kExitPartial);
  EXPECT_NE(r.err.find("--sample"), std::string::npos);
  r = Cli({"verify", "--instance", f, "--oracle", "modular", "--sample",
           "--samples", "500"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(json::parse(r.out)["checks"]["def1"]["sampled"].get<bool>());
}

TEST_F(CliTest, EnumerateMatchesSolve) {
  const std::string f = Write("pm.json", kPlusMinus);
  CliRun r = Cli({"enumerate", "--instance", f, "--oracle", "modular"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["status"], "complete");
  EXPECT_DOUBLE_EQ(j["value"].get<double>(), 1.0);
  // Ties go to the smallest label vector.
  EXPECT_EQ(j["best"], "({3},{})");
  EXPECT_EQ(j["best_labels"], json({0, 0, 1}));

  r = Cli({"enumerate", "--instance", f, "--oracle", "modular",
           "--max-evaluations", "2"});
  EXPECT_EQ(r.code, kExitPartial);
  EXPECT_EQ(json::parse(r.out)["status"], "budget_exceeded");
}

TEST_F(CliTest, GenDiscretizeSolveRoundTrip) {
  const std::string raw = Path("raw.csv");
  CliRun r = Cli({"gen", "--locations", "8", "--samples", "30", "--seed", "5",
               "--output", raw});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream in(raw);
  const RawReadings readings = ReadRawCsv(in);
  EXPECT_EQ(readings.num_locations(), 8);
  EXPECT_EQ(readings.num_samples, 30);

  const std::string inst = Path("inst.json");
  r = Cli({"discretize", "--raw", raw, "--n", "5", "--t", "20", "--k", "2",
           "--B", "1,1", "--seed", "3", "--output", inst});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Instance loaded = LoadInstance(inst);
  EXPECT_EQ(loaded.spec.n, 5);
  EXPECT_EQ(loaded.spec.t, 20);
  EXPECT_EQ(loaded.spec.bins, (std::vector<int>{2, 3}));

  // Same seed, same instance.
  const CliRun again = Cli({"discretize", "--raw", raw, "--n", "5", "--t", "20",
                         "--k", "2", "--B", "1,1", "--seed", "3"});
  std::ifstream saved(inst);
  std::stringstream buffer;
  buffer << saved.rdbuf();
  EXPECT_EQ(again.out, buffer.str());

  const CliRun solved = Cli({"solve", "--instance", inst});
  ASSERT_EQ(solved.code, kExitOk) << solved.err;
  const CliRun es = Cli({"enumerate", "--instance", inst});
  EXPECT_NEAR(json::parse(solved.out)["lb"].get<double>(),
              json::parse(es.out)["value"].get<double>(), 1e-9);
}

TEST_F(CliTest, GenWritesInstance) {
  const std::string inst = Path("inst.json");
  const CliRun r = Cli({"gen", "--locations", "10", "--samples", "40",
                     "--instance-out", inst, "--n", "6", "--t", "25"});
  // floor(6 / 10) per type unless --B is given.
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  const Instance loaded = LoadInstance(inst);
  EXPECT_EQ(loaded.spec.n, 6);
  EXPECT_EQ(loaded.spec.bounds, (std::vector<int>{0, 0}));
}

TEST_F(CliTest, EnvironmentOverridesDefault) {
  ::setenv("KSUBMAX_FORMAT", "csv", 1);
  const CliRun r = Cli({"count", "--n", "2", "--k", "1", "--B", "1"});
  ::unsetenv("KSUBMAX_FORMAT");
  EXPECT_EQ(r.out, "n,k,B,mode,count\n2,1,\"1\",exact,2\n");
}

TEST_F(CliTest, BenchCsvColumnsAndOrder) {
  const CliRun r = Cli({"bench", "--n", "4,5", "--t", "10", "--B", "1,1",
                     "--trials", "2", "--seed", "7", "--es", "--threads", "3",
                     "--time-limit", "30"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "n,t,B,trial,seed,time_s,cuts,nodes,end_gap,es_time_s");
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].rfind("4,10,\"1,1\",0,7,", 0), 0u) << rows[0];
  EXPECT_EQ(rows[1].rfind("4,10,\"1,1\",1,8,", 0), 0u) << rows[1];
  EXPECT_EQ(rows[3].rfind("5,10,\"1,1\",1,10,", 0), 0u) << rows[3];
  EXPECT_NE(r.err.find("# config"), std::string::npos);
}

TEST_F(CliTest, BenchJsonAgreesWithEnumeration) {
  const CliRun r = Cli({"bench", "--n", "5", "--t", "15", "--B", "2,1",
                     "--trials", "3", "--es", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const json& row : json::parse(r.out)["rows"]) {
    EXPECT_EQ(row["status"], "optimal");
    EXPECT_NEAR(row["value"].get<double>(), row["es_value"].get<double>(),
                1e-9);
  }
}

TEST_F(CliTest, SmallExamples) {
  EXPECT_EQ(json::parse(Cli({"count", "--n", "3", "--k", "3", "--B",
                             "1,1,1"})
                            .out)["count"],
            "6");
  const std::string zero = Write(
      "zero.json", R"({"kind": "table", "n": 2, "k": 2,
                       "values": [0, 0, 0, 0, 0, 0, 0, 0, 0]})");
  EXPECT_EQ(Cli({"verify", "--instance", zero, "--oracle", "table"}).code,
            kExitOk);
  const CliRun r = Cli({"solve", "--instance", zero, "--oracle", "table",
                        "--B", "0,0", "--format", "human"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("({},{})"), std::string::npos) << r.out;
}

TEST_F(CliTest, TinyTimeLimit) {
  const std::string inst = Path("big.json");
  ASSERT_EQ(Cli({"gen", "--locations", "40", "--samples", "120",
                 "--instance-out", inst, "--n", "36", "--t", "100", "--B",
                 "4,4"})
                .code,
            kExitOk);
  const CliRun r = Cli({"solve", "--instance", inst, "--time-limit", "0.001"});
  EXPECT_EQ(r.code, kExitPartial) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["status"], "time_limit");
  if (j["lb"].is_number()) EXPECT_LE(j["lb"].get<double>(), j["ub"].get<double>());
}

TEST(ProblemTest, MalformedFiles) {
  const fs::path p = fs::temp_directory_path() / "ksubmax_bad_problem.json";
  std::ofstream(p) << R"({"kind": "table", "n": 1, "k": 1, "values": [0]})";
  EXPECT_THROW(LoadProblem(p, "table"), InstanceFormatError);
  std::ofstream(p) << R"({"weights": "x"})";
  EXPECT_THROW(LoadProblem(p, "modular"), InstanceFormatError);
  std::ofstream(p) << "[1, 2";
  EXPECT_THROW(LoadProblem(p, "coverage"), InstanceFormatError);
  EXPECT_THROW(LoadProblem(p, "quadratic"), std::invalid_argument);
  fs::remove(p);
}

}  // namespace
}  // namespace ksubmax::cli
