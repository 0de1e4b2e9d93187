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

#include "ksubmax/entropy_oracle.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ksubmax {

ObservationMatrix::ObservationMatrix(int k_features, int n_locations,
                                     int t_samples, std::vector<int> values,
                                     std::vector<int> bins,
                                     std::vector<int> location_ids)
    : k_(k_features),
      n_(n_locations),
      t_(t_samples),
      values_(std::move(values)),
      bins_(std::move(bins)),
      location_ids_(std::move(location_ids)) {
  if (k_ < 1 || n_ < 1 || t_ < 1) {
    throw std::invalid_argument(
        "observation matrix needs at least one feature, location and sample");
  }
  const std::size_t expected = static_cast<std::size_t>(k_) * n_ * t_;
  if (values_.size() != expected) {
    throw DimensionError("observation values: expected " +
                         std::to_string(expected) + " entries, got " +
                         std::to_string(values_.size()));
  }
  if (bins_.empty()) {
    bins_.assign(static_cast<std::size_t>(k_), 1);
    for (int f = 0; f < k_; ++f) {
      for (int i = 0; i < n_; ++i) {
        for (int s = 0; s < t_; ++s) {
          bins_[f] = std::max(bins_[f], at(f, i, s) + 1);
        }
      }
    }
  }
  if (bins_.size() != static_cast<std::size_t>(k_)) {
    throw DimensionError("one bin count per feature expected");
  }
  for (int f = 0; f < k_; ++f) {
    if (bins_[f] < 1) throw std::invalid_argument("bin counts must be >= 1");
    for (int i = 0; i < n_; ++i) {
      for (int s = 0; s < t_; ++s) {
        const int v = at(f, i, s);
        if (v < 0 || v >= bins_[f]) {
          throw std::out_of_range("bin index outside [0, bins)");
        }
      }
    }
  }
  if (location_ids_.empty()) {
    location_ids_.resize(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) location_ids_[i] = i + 1;
  }
  if (location_ids_.size() != static_cast<std::size_t>(n_)) {
    throw DimensionError("one id per location expected");
  }
}

void WriteObservationCsv(const ObservationMatrix& obs, std::ostream& out) {
  out << "location,sample";
  for (int f = 0; f < obs.k_features(); ++f) out << ",f" << f + 1;
  out << '\n';
  for (int i = 0; i < obs.n_locations(); ++i) {
    for (int s = 0; s < obs.t_samples(); ++s) {
      out << obs.location_ids()[i] << ',' << s;
      for (int f = 0; f < obs.k_features(); ++f) out << ',' << obs.at(f, i, s);
      out << '\n';
    }
  }
}

namespace {

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) {
      field.pop_back();
    }
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

int ParseInt(const std::string& field, int line_no) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != field.size()) {
    throw std::runtime_error("line " + std::to_string(line_no) +
                             ": expected an integer, got '" + field + "'");
  }
  return value;
}

}  // namespace

ObservationMatrix ReadObservationCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("line 1: missing header");
  }
  const auto header = SplitCsvLine(line);
  if (header.size() < 3 || header[0] != "location" || header[1] != "sample") {
    throw std::runtime_error(
        "line 1: header must be location,sample,f1,...,fk");
  }
  const int k = static_cast<int>(header.size()) - 2;
  // location id -> sample -> readings
  std::map<int, std::map<int, std::vector<int>>> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = SplitCsvLine(line);
    if (fields.size() != header.size()) {
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": expected " + std::to_string(header.size()) +
                               " fields, got " +
                               std::to_string(fields.size()));
    }
    const int location = ParseInt(fields[0], line_no);
    const int sample = ParseInt(fields[1], line_no);
    std::vector<int> readings;
    for (int f = 0; f < k; ++f) {
      readings.push_back(ParseInt(fields[2 + f], line_no));
    }
    auto [it, inserted] = rows[location].emplace(sample, std::move(readings));
    if (!inserted) {
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": duplicate (location, sample)");
    }
  }
  if (rows.empty()) throw std::runtime_error("no observation rows");
  const int n = static_cast<int>(rows.size());
  const auto& first_samples = rows.begin()->second;
  const int t = static_cast<int>(first_samples.size());
  std::vector<int> location_ids;
  std::vector<int> values(static_cast<std::size_t>(k) * n * t);
  int i = 0;
  for (const auto& [location, samples] : rows) {
    if (samples.size() != first_samples.size()) {
      throw std::runtime_error("location " + std::to_string(location) +
                               " has a different number of samples");
    }
    location_ids.push_back(location);
    int s = 0;
    for (const auto& [sample, readings] : samples) {
      if (!first_samples.contains(sample)) {
        throw std::runtime_error("location " + std::to_string(location) +
                                 " has sample " + std::to_string(sample) +
                                 " missing elsewhere");
      }
      for (int f = 0; f < k; ++f) {
        values[(static_cast<std::size_t>(f) * n + i) * t + s] = readings[f];
      }
      ++s;
    }
    ++i;
  }
  return ObservationMatrix(k, n, t, std::move(values), {},
                           std::move(location_ids));
}

double EntropyFromCounts(std::vector<int> counts, int t,
                         const EntropyOptions& options) {
  std::sort(counts.begin(), counts.end());
  const double total = static_cast<double>(t);
  double h = 0.0;
  for (int c : counts) {
    if (c == 0) continue;  // p log p -> 0
    const double p = static_cast<double>(c) / total;
    h -= p * std::log(p);
  }
  if (options.log_base != std::numbers::e) h /= std::log(options.log_base);
  return h;
}

namespace {

class EntropyOracle final : public ValueOracle {
 public:
  EntropyOracle(ObservationMatrix obs, EntropyOptions options)
      : ValueOracle(GroundSet(obs.n_locations(), obs.k_features()),
                    /*monotone=*/true, 0.0,
                    UpperBound(obs.t_samples(), options)),
        obs_(std::move(obs)),
        options_(options) {}

  std::string kind() const override { return "entropy"; }

 protected:
  // Refines the partition of samples by one placed sensor at a time; two
  // samples share a class iff they agree on every reading seen so far.
  double DoEvaluate(const KSet& s) const override {
    const int t = obs_.t_samples();
    std::vector<int> cls(static_cast<std::size_t>(t), 0);
    std::vector<int> relabel;
    int num_classes = 1;
    for (int i = 0; i < s.n() && num_classes < t; ++i) {
      if (!s.assigned(i)) continue;
      const int f = s.label(i) - 1;
      const int b = obs_.bins(f);
      relabel.assign(static_cast<std::size_t>(num_classes) * b, -1);
      int next = 0;
      for (int j = 0; j < t; ++j) {
        int& slot = relabel[static_cast<std::size_t>(cls[j]) * b +
                            obs_.at(f, i, j)];
        if (slot < 0) slot = next++;
        cls[j] = slot;
      }
      num_classes = next;
    }
    std::vector<int> counts(static_cast<std::size_t>(num_classes), 0);
    for (int c : cls) ++counts[c];
    return EntropyFromCounts(std::move(counts), t, options_);
  }

 private:
  static double UpperBound(int t, const EntropyOptions& options) {
    return EntropyFromCounts(std::vector<int>(static_cast<std::size_t>(t), 1),
                             t, options);
  }

  ObservationMatrix obs_;
  EntropyOptions options_;
};

}  // namespace

OraclePtr MakeEntropyOracle(ObservationMatrix obs,
                            const EntropyOptions& options) {
  if (obs.t_samples() < 1) {
    throw std::invalid_argument("entropy oracle needs t >= 1");
  }
  if (!(options.log_base > 0.0) || options.log_base == 1.0) {
    throw std::invalid_argument("log base must be positive and != 1");
  }
  return std::make_shared<EntropyOracle>(std::move(obs), options);
}

}  // namespace ksubmax
