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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <tuple>

namespace ksubmax {

void RawReadings::Validate() const {
  if (feature_names.size() != values.size()) {
    throw std::invalid_argument("one name per feature expected");
  }
  if (num_samples < 1 || location_ids.empty()) {
    throw std::invalid_argument("raw readings need locations and samples");
  }
  for (const auto& feature : values) {
    if (feature.size() != location_ids.size()) {
      throw std::invalid_argument("feature is not rectangular in locations");
    }
    for (const auto& series : feature) {
      if (series.size() != static_cast<std::size_t>(num_samples)) {
        throw std::invalid_argument("feature is not rectangular in samples");
      }
      for (double v : series) {
        if (!std::isfinite(v)) {
          throw std::invalid_argument("non-finite reading");
        }
      }
    }
  }
}

namespace {

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

[[noreturn]] void CsvError(int line, const std::string& what) {
  throw InstanceFormatError("raw CSV line " + std::to_string(line) + ": " +
                            what);
}

}  // namespace

RawReadings ReadRawCsv(std::istream& in) {
  std::string line;
  int line_no = 1;
  if (!std::getline(in, line)) CsvError(line_no, "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "location,sample,feature,value") {
    CsvError(line_no, "expected header location,sample,feature,value");
  }
  std::vector<std::string> features;
  std::map<std::string, int> feature_index;
  // (feature, location id, sample) -> value
  std::map<std::tuple<int, int, int>, double> cells;
  std::map<int, int> locations;
  int max_sample = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = SplitCsv(line);
    if (fields.size() != 4) CsvError(line_no, "expected 4 fields");
    int location;
    int sample;
    double value;
    try {
      std::size_t used = 0;
      location = std::stoi(fields[0], &used);
      if (used != fields[0].size()) throw std::invalid_argument("location");
      sample = std::stoi(fields[1], &used);
      if (used != fields[1].size()) throw std::invalid_argument("sample");
      value = std::stod(fields[3], &used);
      if (used != fields[3].size()) throw std::invalid_argument("value");
    } catch (const std::exception&) {
      CsvError(line_no, "malformed number");
    }
    if (sample < 0) CsvError(line_no, "negative sample index");
    if (!std::isfinite(value)) CsvError(line_no, "non-finite value");
    auto [it, inserted] =
        feature_index.emplace(fields[2], static_cast<int>(features.size()));
    if (inserted) features.push_back(fields[2]);
    if (!cells.emplace(std::make_tuple(it->second, location, sample), value)
             .second) {
      CsvError(line_no, "duplicate reading");
    }
    locations.emplace(location, 0);
    max_sample = std::max(max_sample, sample);
  }
  if (features.empty()) CsvError(line_no, "no readings");

  RawReadings raw;
  raw.feature_names = features;
  raw.num_samples = max_sample + 1;
  int idx = 0;
  for (auto& [id, pos] : locations) {
    pos = idx++;
    raw.location_ids.push_back(id);
  }
  const std::size_t expected = features.size() * locations.size() *
                               static_cast<std::size_t>(raw.num_samples);
  if (cells.size() != expected) {
    throw InstanceFormatError(
        "raw CSV is incomplete: expected " + std::to_string(expected) +
        " readings, found " + std::to_string(cells.size()));
  }
  raw.values.assign(
      features.size(),
      std::vector<std::vector<double>>(
          locations.size(),
          std::vector<double>(static_cast<std::size_t>(raw.num_samples))));
  for (const auto& [key, value] : cells) {
    const auto& [f, loc, s] = key;
    raw.values[f][locations.at(loc)][s] = value;
  }
  return raw;
}

void WriteRawCsv(const RawReadings& raw, std::ostream& out) {
  raw.Validate();
  out << "location,sample,feature,value\n" << std::setprecision(17);
  for (int loc = 0; loc < raw.num_locations(); ++loc) {
    for (int s = 0; s < raw.num_samples; ++s) {
      for (int f = 0; f < raw.num_features(); ++f) {
        out << raw.location_ids[loc] << ',' << s << ',' << raw.feature_names[f]
            << ',' << raw.values[f][loc][s] << '\n';
      }
    }
  }
}

ObservationMatrix Discretize(const RawReadings& raw,
                             const std::vector<int>& bins) {
  raw.Validate();
  if (bins.empty() || bins.size() > raw.values.size()) {
    throw std::invalid_argument("need between 1 and " +
                                std::to_string(raw.values.size()) +
                                " bin counts");
  }
  const int k = static_cast<int>(bins.size());
  const int n = raw.num_locations();
  const int t = raw.num_samples;
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(k) * n * t);
  for (int f = 0; f < k; ++f) {
    if (bins[f] < 1) throw std::invalid_argument("bin count must be >= 1");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& series : raw.values[f]) {
      for (double v : series) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    const double width = (hi - lo) / bins[f];
    for (const auto& series : raw.values[f]) {
      for (double v : series) {
        int b = 0;
        if (hi > lo) {
          b = static_cast<int>(std::floor((v - lo) / width));
          b = std::clamp(b, 0, bins[f] - 1);
        }
        out.push_back(b);
      }
    }
  }
  return ObservationMatrix(k, n, t, std::move(out), bins, raw.location_ids);
}

std::vector<int> DefaultBounds(int n, int k) {
  return std::vector<int>(static_cast<std::size_t>(k), n / 10);
}

Instance SampleInstance(const RawReadings& raw, InstanceSpec spec) {
  raw.Validate();
  if (spec.k < 1 || spec.k > raw.num_features()) {
    throw std::invalid_argument("k must be between 1 and the feature count");
  }
  if (spec.n < 1 || spec.n > raw.num_locations()) {
    throw std::invalid_argument("n must be between 1 and " +
                                std::to_string(raw.num_locations()));
  }
  if (spec.t < 1 || spec.t > raw.num_samples) {
    throw std::invalid_argument("t must be between 1 and " +
                                std::to_string(raw.num_samples));
  }
  if (spec.bins.size() != static_cast<std::size_t>(spec.k)) {
    throw std::invalid_argument("one bin count per feature expected");
  }
  if (spec.bounds.empty()) spec.bounds = DefaultBounds(spec.n, spec.k);
  if (spec.bounds.size() != static_cast<std::size_t>(spec.k)) {
    throw std::invalid_argument("one cardinality bound per type expected");
  }
  const ObservationMatrix full = Discretize(raw, spec.bins);

  std::mt19937_64 rng(spec.rng_seed);
  auto pick = [&rng](int population, int count) {
    std::vector<int> all(static_cast<std::size_t>(population));
    std::iota(all.begin(), all.end(), 0);
    std::vector<int> chosen;
    chosen.reserve(static_cast<std::size_t>(count));
    std::sample(all.begin(), all.end(), std::back_inserter(chosen), count, rng);
    return chosen;
  };
  spec.selected_locations = pick(raw.num_locations(), spec.n);
  spec.selected_samples = pick(raw.num_samples, spec.t);

  std::vector<int> values;
  values.reserve(static_cast<std::size_t>(spec.k) * spec.n * spec.t);
  std::vector<int> ids;
  for (int loc : spec.selected_locations) ids.push_back(raw.location_ids[loc]);
  for (int f = 0; f < spec.k; ++f) {
    for (int loc : spec.selected_locations) {
      for (int s : spec.selected_samples) values.push_back(full.at(f, loc, s));
    }
  }
  Instance instance;
  instance.observations = ObservationMatrix(spec.k, spec.n, spec.t,
                                            std::move(values), spec.bins, ids);
  instance.spec = std::move(spec);
  return instance;
}

nlohmann::json InstanceToJson(const Instance& instance) {
  const InstanceSpec& s = instance.spec;
  const ObservationMatrix& obs = instance.observations;
  nlohmann::json j;
  j["spec"] = {{"n", s.n},
               {"t", s.t},
               {"k", s.k},
               {"B", s.bounds},
               {"bins", s.bins},
               {"rng_seed", s.rng_seed},
               {"selected_locations", s.selected_locations},
               {"selected_samples", s.selected_samples}};
  j["observations"] = {
      {"dims",
       {{"features", obs.k_features()},
        {"locations", obs.n_locations()},
        {"samples", obs.t_samples()}}},
      {"bins", obs.bins()},
      {"location_ids", obs.location_ids()},
      {"values", obs.values()}};
  return j;
}

namespace {

const nlohmann::json& Require(const nlohmann::json& j, const char* key,
                              const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw InstanceFormatError("instance file: missing '" + where + key + "'");
  }
  return j.at(key);
}

template <typename T>
T Field(const nlohmann::json& j, const char* key, const std::string& where) {
  const nlohmann::json& v = Require(j, key, where);
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InstanceFormatError("instance file: malformed '" + where + key +
                              "'");
  }
}

}  // namespace

Instance InstanceFromJson(const nlohmann::json& j) {
  const nlohmann::json& spec = Require(j, "spec", "");
  const nlohmann::json& obs = Require(j, "observations", "");
  Instance out;
  InstanceSpec& s = out.spec;
  s.n = Field<int>(spec, "n", "spec.");
  s.t = Field<int>(spec, "t", "spec.");
  s.k = Field<int>(spec, "k", "spec.");
  s.bounds = Field<std::vector<int>>(spec, "B", "spec.");
  s.bins = Field<std::vector<int>>(spec, "bins", "spec.");
  s.rng_seed = Field<std::uint64_t>(spec, "rng_seed", "spec.");
  s.selected_locations =
      Field<std::vector<int>>(spec, "selected_locations", "spec.");
  s.selected_samples =
      Field<std::vector<int>>(spec, "selected_samples", "spec.");
  const nlohmann::json& dims = Require(obs, "dims", "observations.");
  const int features = Field<int>(dims, "features", "observations.dims.");
  const int locations = Field<int>(dims, "locations", "observations.dims.");
  const int samples = Field<int>(dims, "samples", "observations.dims.");
  try {
    out.observations = ObservationMatrix(
        features, locations, samples,
        Field<std::vector<int>>(obs, "values", "observations."),
        Field<std::vector<int>>(obs, "bins", "observations."),
        Field<std::vector<int>>(obs, "location_ids", "observations."));
  } catch (const std::invalid_argument& e) {
    throw InstanceFormatError(std::string("instance file: observations: ") +
                              e.what());
  }
  if (s.k != features || s.n != locations || s.t != samples ||
      s.bounds.size() != static_cast<std::size_t>(s.k)) {
    throw InstanceFormatError(
        "instance file: spec dimensions disagree with observations.dims");
  }
  return out;
}

void SaveInstance(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << InstanceToJson(instance).dump(1) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Instance LoadInstance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InstanceFormatError("instance file " + path.string() + ": " +
                              e.what());
  }
  return InstanceFromJson(j);
}

RawReadings GenerateSynthetic(const SyntheticOptions& options) {
  if (options.locations < 1 || options.samples < 1 || options.regimes < 1) {
    throw std::invalid_argument("synthetic sizes must be positive");
  }
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  struct Feature {
    const char* name;
    double base;
    double spread;  // of per-location regime means
    double cycle;   // daily amplitude
    double noise;
  };
  constexpr Feature kFeatures[] = {
      {"light", 300.0, 180.0, 250.0, 40.0},
      {"temperature", 22.0, 2.5, 3.0, 0.6},
      {"humidity", 38.0, 5.0, -4.0, 1.5},
  };
  constexpr int kNumFeatures = 3;

  RawReadings raw;
  raw.num_samples = options.samples;
  for (const Feature& f : kFeatures) raw.feature_names.emplace_back(f.name);
  raw.location_ids.resize(static_cast<std::size_t>(options.locations));
  std::iota(raw.location_ids.begin(), raw.location_ids.end(), 1);
  raw.values.assign(
      kNumFeatures,
      std::vector<std::vector<double>>(
          static_cast<std::size_t>(options.locations),
          std::vector<double>(static_cast<std::size_t>(options.samples))));

  // Samples are taken every half hour; regimes switch between them.
  std::vector<double> phase(static_cast<std::size_t>(options.samples));
  for (int s = 0; s < options.samples; ++s) {
    phase[s] = 2.0 * std::numbers::pi * s / 48.0;
  }
  for (int loc = 0; loc < options.locations; ++loc) {
    std::vector<std::vector<double>> means(
        static_cast<std::size_t>(options.regimes),
        std::vector<double>(kNumFeatures));
    std::vector<double> weights(static_cast<std::size_t>(options.regimes));
    for (int r = 0; r < options.regimes; ++r) {
      for (int f = 0; f < kNumFeatures; ++f) {
        means[r][f] = kFeatures[f].base + kFeatures[f].spread * normal(rng);
      }
      weights[r] = 0.2 + unit(rng);
    }
    std::discrete_distribution<int> regime(weights.begin(), weights.end());
    const double lag = unit(rng) * 2.0 * std::numbers::pi / 8.0;
    for (int s = 0; s < options.samples; ++s) {
      const int r = regime(rng);
      const double day = std::sin(phase[s] + lag);
      for (int f = 0; f < kNumFeatures; ++f) {
        double v = means[r][f] + kFeatures[f].cycle * day +
                   kFeatures[f].noise * normal(rng);
        if (f == 0) v = std::max(0.0, v);
        raw.values[f][loc][s] = v;
      }
    }
  }
  return raw;
}

}  // namespace ksubmax
