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

#ifndef KSUBMAX_TOOLS_CLI_PROBLEM_H_
#define KSUBMAX_TOOLS_CLI_PROBLEM_H_

#include <filesystem>
#include <optional>
#include <string>

#include "ksubmax/instances.h"
#include "ksubmax/oracle.h"
#include "ksubmax/region.h"

namespace ksubmax::cli {

// Oracle kinds the command line understands.
inline constexpr const char* kOracleKinds[] = {"entropy", "modular",
                                               "coverage", "table"};

bool IsOracleKind(const std::string& kind);

// A loaded oracle plus the feasible region stored alongside it.
struct Problem {
  std::string kind;
  OraclePtr oracle;
  FeasibleRegion region;
  // Set for entropy instances.
  std::optional<InstanceSpec> spec;
};

// Entropy problems are instance files written by `discretize` or `gen`.
// The other kinds read a JSON object:
//   modular:  {"kind": "modular", "weights": [[w_1i...], ...]}
//   coverage: {"kind": "coverage", "universe": U, "covers": [[[items]...]...],
//              "item_weights": [...]}
//   table:    {"kind": "table", "n": n, "k": k, "values": [...]}
// each with optional "B" (per-subset bounds) and "total_bound".
// Throws InstanceFormatError on malformed input.
Problem LoadProblem(const std::filesystem::path& path, const std::string& kind);

}  // namespace ksubmax::cli

#endif  // KSUBMAX_TOOLS_CLI_PROBLEM_H_
