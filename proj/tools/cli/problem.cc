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

#include "problem.h"

#include <algorithm>
#include <fstream>
#include <iterator>

namespace ksubmax::cli {

bool IsOracleKind(const std::string& kind) {
  return std::find(std::begin(kOracleKinds), std::end(kOracleKinds), kind) !=
         std::end(kOracleKinds);
}

namespace {

nlohmann::json ReadJson(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InstanceFormatError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InstanceFormatError(path.string() + ": " + e.what());
  }
}

template <typename T>
T Get(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) {
    throw InstanceFormatError(std::string("problem file: missing '") + key +
                              "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InstanceFormatError(std::string("problem file: malformed '") + key +
                              "'");
  }
}

FeasibleRegion RegionFrom(const nlohmann::json& j) {
  FeasibleRegion region;
  if (j.contains("B")) region.per_type_bounds = Get<std::vector<int>>(j, "B");
  if (j.contains("total_bound")) region.total_bound = Get<int>(j, "total_bound");
  return region;
}

}  // namespace

Problem LoadProblem(const std::filesystem::path& path,
                    const std::string& kind) {
  if (!IsOracleKind(kind)) {
    throw std::invalid_argument("unknown oracle kind '" + kind + "'");
  }
  Problem p;
  p.kind = kind;
  if (kind == "entropy") {
    Instance inst = LoadInstance(path);
    p.oracle = MakeEntropyOracle(inst.observations);
    p.region = inst.Region();
    p.spec = std::move(inst.spec);
    return p;
  }

  const nlohmann::json j = ReadJson(path);
  if (!j.is_object()) throw InstanceFormatError("problem file: not an object");
  if (j.contains("kind") && j["kind"] != kind) {
    throw InstanceFormatError("problem file holds a '" +
                              j["kind"].get<std::string>() +
                              "' oracle, not '" + kind + "'");
  }
  try {
    if (kind == "modular") {
      p.oracle = MakeModularOracle(
          Get<std::vector<std::vector<double>>>(j, "weights"));
    } else if (kind == "coverage") {
      p.oracle = MakeCoverageOracle(
          Get<int>(j, "universe"),
          Get<std::vector<std::vector<std::vector<int>>>>(j, "covers"),
          Get<std::vector<double>>(j, "item_weights"));
    } else {
      p.oracle = MakeTableOracle(GroundSet(Get<int>(j, "n"), Get<int>(j, "k")),
                                 Get<std::vector<double>>(j, "values"));
    }
  } catch (const InstanceFormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw InstanceFormatError(std::string("problem file: ") + e.what());
  }
  p.region = RegionFrom(j);
  return p;
}

}  // namespace ksubmax::cli
