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

// Sensor-placement instances: raw readings, equal-width discretization,
// seeded sub-sampling and the instance file format.

#ifndef KSUBMAX_INSTANCES_H_
#define KSUBMAX_INSTANCES_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ksubmax/entropy_oracle.h"
#include "ksubmax/region.h"

namespace ksubmax {

class InstanceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Real-valued readings, values[feature][location][sample].
struct RawReadings {
  std::vector<std::string> feature_names;
  std::vector<int> location_ids;
  int num_samples = 0;
  std::vector<std::vector<std::vector<double>>> values;

  int num_features() const { return static_cast<int>(values.size()); }
  int num_locations() const { return static_cast<int>(location_ids.size()); }

  // Throws std::invalid_argument unless every feature is locations x
  // samples and every value is finite.
  void Validate() const;
};

// Long format, header "location,sample,feature,value". Features appear in
// first-seen order, locations sorted by id, samples 0-based and dense.
// Every (location, sample, feature) must appear exactly once.
RawReadings ReadRawCsv(std::istream& in);
void WriteRawCsv(const RawReadings& raw, std::ostream& out);

// bins[f] equal-width bins over the global min/max of feature f. Intervals
// are half-open except the top one, which also takes the maximum. A
// constant feature maps to bin 0. Uses features 0..bins.size()-1.
ObservationMatrix Discretize(const RawReadings& raw,
                             const std::vector<int>& bins);

struct InstanceSpec {
  int n = 0;
  int t = 0;
  int k = 0;
  std::vector<int> bounds;
  std::vector<int> bins;
  std::uint64_t rng_seed = 0;
  // Indices into the raw data, ascending. Filled in by SampleInstance.
  std::vector<int> selected_locations;
  std::vector<int> selected_samples;

  friend bool operator==(const InstanceSpec&, const InstanceSpec&) = default;
};

// floor(n / 10) per subset.
std::vector<int> DefaultBounds(int n, int k);

struct Instance {
  InstanceSpec spec;
  ObservationMatrix observations;

  FeasibleRegion Region() const { return FeasibleRegion::PerType(spec.bounds); }
  friend bool operator==(const Instance&, const Instance&) = default;
};

// Discretizes with spec.bins (global bounds) and keeps n locations and t
// samples drawn uniformly without replacement from a generator seeded with
// spec.rng_seed. Empty spec.bounds are replaced by DefaultBounds. Throws
// std::invalid_argument when the raw data is too small.
Instance SampleInstance(const RawReadings& raw, InstanceSpec spec);

nlohmann::json InstanceToJson(const Instance& instance);
// Throws InstanceFormatError naming the missing or malformed field.
Instance InstanceFromJson(const nlohmann::json& j);
void SaveInstance(const Instance& instance, const std::filesystem::path& path);
Instance LoadInstance(const std::filesystem::path& path);

struct SyntheticOptions {
  int locations = 54;
  int samples = 500;
  std::uint64_t seed = 1;
  // Mixture components per location.
  int regimes = 3;
};

// Light, temperature and humidity readings from a seeded Gaussian mixture
// per location, with a shared daily cycle.
RawReadings GenerateSynthetic(const SyntheticOptions& options);

}  // namespace ksubmax

#endif  // KSUBMAX_INSTANCES_H_
