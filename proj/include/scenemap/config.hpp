// Copyright 2026 The scenemap Authors.
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

#ifndef SCENEMAP_CONFIG_HPP_
#define SCENEMAP_CONFIG_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "scenemap/features.hpp"
#include "scenemap/loca.hpp"

namespace scenemap {

// Flat "[section]" + "key = value" configuration. Keys live in a sorted map
// under "section.key" names, so the canonical dump (and the hash derived
// from it) is independent of the original file layout.
class KeyValueConfig {
 public:
  static KeyValueConfig parse_file(const std::filesystem::path& path);
  static KeyValueConfig parse_string(const std::string& text);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  void set(const std::string& key, const std::string& value);

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key) const;
  long long get_int(const std::string& key, long long fallback) const;
  std::vector<double> get_doubles(const std::string& key) const;

  std::string canonical() const;
  std::string hash() const;
  const std::map<std::string, std::string>& entries() const { return values_; }

  // Keys read so far; used to reject unknown (misspelled) keys.
  const std::set<std::string>& accessed() const { return accessed_; }

 private:
  std::map<std::string, std::string> values_;
  mutable std::set<std::string> accessed_;
};

// The full experiment: scene, features, training, baselines, evaluation.
struct ExperimentConfig {
  RoomSpec room;  // rt60 field is a placeholder; use room_for()
  std::vector<double> rt60_list;
  std::vector<SourceSpec> sources;
  SamplingGrid grid;
  BurstArrayGeometry geometry;
  FeatureParams features;

  loca::TrainConfig train;
  bool sigma_auto = true;  // sigma derived from the array geometry

  std::vector<double> epsilon_grid;  // empty = derive per dataset
  std::vector<int> anchor_indices;   // empty = RoI corner bursts
  bool fit_on_flattened = true;
  bool eval_with_scaling = false;

  int persist_recordings_burst = -1;  // burst whose raw recordings to dump

  std::string config_hash;  // hash of the effective key-value set

  static ExperimentConfig from_kv(const KeyValueConfig& kv);
  static ExperimentConfig load(const std::filesystem::path& path,
                               std::optional<long long> seed_override,
                               std::optional<double> rt60_override);

  RoomSpec room_for(double rt60) const;
  std::string rt60_tag(double rt60) const;  // e.g. "360ms"
  void validate() const;
};

}  // namespace scenemap

#endif  // SCENEMAP_CONFIG_HPP_
