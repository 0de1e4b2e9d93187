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

#include "ksubmax/instances.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

namespace ksubmax {
namespace {

RawReadings OneFeature(std::vector<double> series) {
  RawReadings raw;
  raw.feature_names = {"light"};
  raw.location_ids = {1};
  raw.num_samples = static_cast<int>(series.size());
  raw.values = {{std::move(series)}};
  return raw;
}

std::vector<int> Bins(const ObservationMatrix& obs) {
  std::vector<int> out;
  for (int s = 0; s < obs.t_samples(); ++s) out.push_back(obs.at(0, 0, s));
  return out;
}

TEST(DiscretizeTest, Examples) {
  EXPECT_EQ(Bins(Discretize(OneFeature({0, 5, 10}), {2})),
            (std::vector<int>{0, 1, 1}));
  EXPECT_EQ(Bins(Discretize(OneFeature({4, 4, 4}), {3})),
            (std::vector<int>{0, 0, 0}));
  EXPECT_EQ(Bins(Discretize(OneFeature({0, 1, 2}), {3})),
            (std::vector<int>{0, 1, 2}));
}

TEST(DiscretizeTest, MonotoneInValue) {
  const RawReadings raw = GenerateSynthetic({.locations = 6, .samples = 40});
  const ObservationMatrix obs = Discretize(raw, {2, 3, 2});
  for (int f = 0; f < 3; ++f) {
    for (int a = 0; a < 6; ++a) {
      for (int s = 0; s < 40; ++s) {
        for (int b = 0; b < 6; ++b) {
          if (raw.values[f][a][s] <= raw.values[f][b][s]) {
            EXPECT_LE(obs.at(f, a, s), obs.at(f, b, s));
          }
        }
      }
    }
  }
}

TEST(DiscretizeTest, RejectsBadBins) {
  const RawReadings raw = OneFeature({0, 1});
  EXPECT_THROW(Discretize(raw, {}), std::invalid_argument);
  EXPECT_THROW(Discretize(raw, {0}), std::invalid_argument);
  EXPECT_THROW(Discretize(raw, {2, 2}), std::invalid_argument);
}

TEST(SyntheticTest, ShapeAndDeterminism) {
  const RawReadings a = GenerateSynthetic({});
  EXPECT_EQ(a.num_features(), 3);
  EXPECT_EQ(a.num_locations(), 54);
  EXPECT_EQ(a.num_samples, 500);
  EXPECT_EQ(a.feature_names,
            (std::vector<std::string>{"light", "temperature", "humidity"}));
  EXPECT_EQ(a.values, GenerateSynthetic({}).values);
  EXPECT_NE(a.values, GenerateSynthetic({.seed = 2}).values);
}

TEST(SampleInstanceTest, Deterministic) {
  const RawReadings raw = GenerateSynthetic({});
  InstanceSpec spec{.n = 20, .t = 50, .k = 2, .bins = {2, 3}, .rng_seed = 7};
  const Instance a = SampleInstance(raw, spec);
  const Instance b = SampleInstance(raw, spec);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.spec.bounds, (std::vector<int>{2, 2}));
  EXPECT_EQ(a.spec.selected_locations.size(), 20u);
  EXPECT_EQ(a.spec.selected_samples.size(), 50u);
  EXPECT_TRUE(std::is_sorted(a.spec.selected_locations.begin(),
                             a.spec.selected_locations.end()));
  EXPECT_EQ(a.observations.n_locations(), 20);
  EXPECT_EQ(a.observations.t_samples(), 50);
  EXPECT_EQ(a.observations.k_features(), 2);
  spec.rng_seed = 8;
  EXPECT_NE(SampleInstance(raw, spec).spec.selected_locations,
            a.spec.selected_locations);
}

TEST(SampleInstanceTest, FullSelectionIsIdentity) {
  const RawReadings raw = GenerateSynthetic({.locations = 5, .samples = 12});
  const Instance inst = SampleInstance(
      raw, InstanceSpec{.n = 5, .t = 12, .k = 3, .bins = {2, 3, 2}});
  EXPECT_EQ(inst.observations, Discretize(raw, {2, 3, 2}));
  EXPECT_EQ(inst.spec.bounds, (std::vector<int>{0, 0, 0}));
}

TEST(SampleInstanceTest, SelectionMatchesFullDiscretization) {
  const RawReadings raw = GenerateSynthetic({.locations = 10, .samples = 30});
  const ObservationMatrix full = Discretize(raw, {2, 3});
  const Instance inst =
      SampleInstance(raw, InstanceSpec{.n = 4, .t = 9, .k = 2, .bins = {2, 3},
                                       .rng_seed = 3});
  for (int f = 0; f < 2; ++f) {
    for (int i = 0; i < 4; ++i) {
      for (int s = 0; s < 9; ++s) {
        EXPECT_EQ(inst.observations.at(f, i, s),
                  full.at(f, inst.spec.selected_locations[i],
                          inst.spec.selected_samples[s]));
      }
    }
  }
}

TEST(SampleInstanceTest, RejectsOversizedRequests) {
  const RawReadings raw = GenerateSynthetic({.locations = 5, .samples = 12});
  EXPECT_THROW(SampleInstance(raw, InstanceSpec{.n = 6, .t = 5, .k = 2,
                                                .bins = {2, 3}}),
               std::invalid_argument);
  EXPECT_THROW(SampleInstance(raw, InstanceSpec{.n = 3, .t = 13, .k = 2,
                                                .bins = {2, 3}}),
               std::invalid_argument);
}

TEST(InstanceJsonTest, RoundTripIsByteStable) {
  const RawReadings raw = GenerateSynthetic({.locations = 12, .samples = 40});
  const Instance inst = SampleInstance(
      raw, InstanceSpec{.n = 6, .t = 20, .k = 2, .bins = {2, 3}, .rng_seed = 5});
  const auto dir = std::filesystem::temp_directory_path() / "ksubmax_inst_test";
  std::filesystem::create_directories(dir);
  const auto first = dir / "a.json";
  const auto second = dir / "b.json";
  SaveInstance(inst, first);
  const Instance back = LoadInstance(first);
  EXPECT_EQ(back, inst);
  SaveInstance(back, second);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  EXPECT_EQ(slurp(first), slurp(second));
  std::filesystem::remove_all(dir);
}

TEST(InstanceJsonTest, MissingSectionIsNamed) {
  const RawReadings raw = GenerateSynthetic({.locations = 4, .samples = 8});
  const Instance inst =
      SampleInstance(raw, InstanceSpec{.n = 3, .t = 5, .k = 2, .bins = {2, 3}});
  nlohmann::json j = InstanceToJson(inst);
  j.erase("observations");
  try {
    InstanceFromJson(j);
    FAIL() << "expected InstanceFormatError";
  } catch (const InstanceFormatError& e) {
    EXPECT_NE(std::string(e.what()).find("observations"), std::string::npos);
  }
  j = InstanceToJson(inst);
  j["spec"].erase("n");
  try {
    InstanceFromJson(j);
    FAIL() << "expected InstanceFormatError";
  } catch (const InstanceFormatError& e) {
    EXPECT_NE(std::string(e.what()).find("spec.n"), std::string::npos);
  }
}

TEST(InstanceJsonTest, TruncatedFile) {
  const RawReadings raw = GenerateSynthetic({.locations = 4, .samples = 8});
  const Instance inst =
      SampleInstance(raw, InstanceSpec{.n = 3, .t = 5, .k = 2, .bins = {2, 3}});
  const auto path =
      std::filesystem::temp_directory_path() / "ksubmax_truncated.json";
  const std::string text = InstanceToJson(inst).dump(1);
  {
    std::ofstream out(path);
    out << text.substr(0, text.size() / 2);
  }
  EXPECT_THROW(LoadInstance(path), InstanceFormatError);
  std::filesystem::remove(path);
}

TEST(RawCsvTest, RoundTripWithSparseIds) {
  RawReadings raw;
  raw.feature_names = {"light", "temperature"};
  raw.location_ids = {3, 17, 40};
  raw.num_samples = 2;
  raw.values = {{{1.5, 2}, {0, -1}, {7, 7}}, {{20, 21.25}, {19, 18}, {0, 1}}};
  std::stringstream buffer;
  WriteRawCsv(raw, buffer);
  const RawReadings back = ReadRawCsv(buffer);
  EXPECT_EQ(back.location_ids, raw.location_ids);
  EXPECT_EQ(back.feature_names, raw.feature_names);
  EXPECT_EQ(back.values, raw.values);
  const ObservationMatrix obs = Discretize(back, {2, 2});
  EXPECT_EQ(obs.location_ids(), (std::vector<int>{3, 17, 40}));
}

TEST(RawCsvTest, Errors) {
  std::stringstream bad_header("loc,sample,feature,value\n");
  EXPECT_THROW(ReadRawCsv(bad_header), InstanceFormatError);
  std::stringstream missing(
      "location,sample,feature,value\n1,0,light,1\n1,1,light,2\n2,0,light,3\n");
  EXPECT_THROW(ReadRawCsv(missing), InstanceFormatError);
  std::stringstream bad_value(
      "location,sample,feature,value\n1,0,light,1\n1,1,light,abc\n");
  try {
    ReadRawCsv(bad_value);
    FAIL();
  } catch (const InstanceFormatError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos)
        << e.what();
  }
}

TEST(DefaultBoundsTest, TenthOfN) {
  EXPECT_EQ(DefaultBounds(20, 2), (std::vector<int>{2, 2}));
  EXPECT_EQ(DefaultBounds(50, 3), (std::vector<int>{5, 5, 5}));
  EXPECT_EQ(DefaultBounds(9, 2), (std::vector<int>{0, 0}));
}

}  // namespace
}  // namespace ksubmax
