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

#include "scenemap/config.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "scenemap/container.hpp"
#include "scenemap/errors.hpp"

namespace scenemap {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse_string(const std::string& text) {
  KeyValueConfig kv;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": empty key");
    if (section.empty())
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": key outside any [section]");
    kv.values_[section + "." + key] = value;
  }
  return kv;
}

KeyValueConfig KeyValueConfig::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_string(text.str());
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

std::string KeyValueConfig::get_string(const std::string& key) const {
  accessed_.insert(key);
  const auto it = values_.find(key);
  if (it == values_.end())
    throw ConfigError("missing required config key '" + key + "'");
  return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
  accessed_.insert(key);
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key) const {
  const std::string raw = get_string(key);
  try {
    std::size_t used = 0;
    const double v = std::stod(raw, &used);
    if (used != raw.size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': '" + raw + "' is not a number");
  }
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  accessed_.insert(key);
  return values_.count(key) ? get_double(key) : fallback;
}

long long KeyValueConfig::get_int(const std::string& key) const {
  const std::string raw = get_string(key);
  try {
    std::size_t used = 0;
    const long long v = std::stoll(raw, &used);
    if (used != raw.size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': '" + raw +
                      "' is not an integer");
  }
}

long long KeyValueConfig::get_int(const std::string& key, long long fallback) const {
  accessed_.insert(key);
  return values_.count(key) ? get_int(key) : fallback;
}

std::vector<double> KeyValueConfig::get_doubles(const std::string& key) const {
  const std::string raw = get_string(key);
  std::istringstream in(raw);
  std::vector<double> values;
  double v;
  while (in >> v) values.push_back(v);
  if (values.empty() || !in.eof())
    throw ConfigError("config key '" + key + "': '" + raw +
                      "' is not a list of numbers");
  return values;
}

std::string KeyValueConfig::canonical() const {
  std::ostringstream out;
  for (const auto& [key, value] : values_) out << key << " = " << value << "\n";
  return out.str();
}

std::string KeyValueConfig::hash() const { return fnv1a_hex(canonical()); }

namespace {

Vec3 to_vec3(const std::vector<double>& v, const std::string& key) {
  if (v.size() != 3)
    throw ConfigError("config key '" + key + "' must have 3 components");
  return {v[0], v[1], v[2]};
}

Vec2 to_vec2(const std::vector<double>& v, const std::string& key) {
  if (v.size() != 2)
    throw ConfigError("config key '" + key + "' must have 2 components");
  return {v[0], v[1]};
}

}  // namespace

ExperimentConfig ExperimentConfig::from_kv(const KeyValueConfig& kv) {
  ExperimentConfig cfg;

  cfg.room.dimensions = to_vec3(kv.get_doubles("room.dimensions"), "room.dimensions");
  cfg.rt60_list = kv.get_doubles("room.rt60_list");
  cfg.room.rt60 = cfg.rt60_list.front();
  cfg.room.sample_rate = kv.get_double("room.sample_rate", 16000.0);
  cfg.room.speed_of_sound = kv.get_double("room.speed_of_sound", 343.0);

  const int num_sources = static_cast<int>(kv.get_int("sources.count"));
  if (num_sources < 1) throw ConfigError("sources.count must be >= 1");
  const double duration = kv.get_double("sources.duration", 5.0);
  for (int s = 1; s <= num_sources; ++s) {
    SourceSpec src;
    src.position = to_vec3(
        kv.get_doubles("sources.position_" + std::to_string(s)),
        "sources.position_" + std::to_string(s));
    src.signal_duration = duration;
    src.signal_seed = static_cast<std::uint64_t>(
        kv.get_int("sources.seed_" + std::to_string(s), 1000 + s));
    cfg.sources.push_back(src);
  }

  cfg.grid.roi_origin = to_vec2(kv.get_doubles("grid.roi_origin"), "grid.roi_origin");
  cfg.grid.roi_size = to_vec2(kv.get_doubles("grid.roi_size"), "grid.roi_size");
  cfg.grid.points_per_axis = static_cast<int>(kv.get_int("grid.points_per_axis"));
  cfg.grid.plane_height_z = kv.get_double("grid.plane_z", 0.2);

  const double radius = kv.get_double("array.radius", 0.02);
  const double half_spacing = kv.get_double("array.half_spacing", 0.03);
  kv.get_int("array.num_crosses", 7);  // touch both layout keys
  kv.get_string("array.offsets", "");
  if (kv.has("array.offsets")) {
    const std::vector<double> flat = kv.get_doubles("array.offsets");
    if (flat.size() % 2 != 0)
      throw ConfigError("array.offsets must hold x y pairs");
    cfg.geometry.constellation_radius_r = radius;
    cfg.geometry.arm_half_spacing_d = half_spacing;
    for (std::size_t i = 0; i < flat.size(); i += 2)
      cfg.geometry.cross_offsets.push_back({flat[i], flat[i + 1]});
    cfg.geometry.validate();
  } else {
    const int crosses = static_cast<int>(kv.get_int("array.num_crosses", 7));
    cfg.geometry = BurstArrayGeometry::make_default(radius, half_spacing, crosses);
  }

  cfg.features.n_fft = static_cast<int>(kv.get_int("features.n_fft", 256));
  cfg.features.overlap_fraction = kv.get_double("features.overlap", 0.5);
  cfg.features.bin_lo = static_cast<int>(kv.get_int("features.bin_lo", 5));
  cfg.features.bin_hi = static_cast<int>(kv.get_int("features.bin_hi", 99));

  const std::string sigma = kv.get_string("train.sigma", "auto");
  if (sigma == "auto") {
    cfg.sigma_auto = true;
    cfg.train.sigma = cfg.geometry.whitening_sigma();
  } else {
    cfg.sigma_auto = false;
    cfg.train.sigma = kv.get_double("train.sigma");
  }
  cfg.train.latent_dim = static_cast<int>(kv.get_int("train.latent_dim", 2));
  cfg.train.batch_size = static_cast<int>(kv.get_int("train.batch_size", 2048));
  cfg.train.learning_rate = kv.get_double("train.learning_rate", 1e-3);
  cfg.train.max_epochs = static_cast<int>(kv.get_int("train.max_epochs", 3000));
  cfg.train.validation_fraction = kv.get_double("train.validation_fraction", 0.1);
  cfg.train.w_white = kv.get_double("train.w_white", 1.0);
  cfg.train.w_recon = kv.get_double("train.w_recon", 1.0);
  cfg.train.seed = static_cast<std::uint64_t>(kv.get_int("train.seed", 7));

  const std::string grid_spec = kv.get_string("baselines.epsilon_grid", "auto");
  if (grid_spec != "auto") cfg.epsilon_grid = kv.get_doubles("baselines.epsilon_grid");
  const std::string anchors = kv.get_string("baselines.anchors", "corners");
  if (anchors != "corners") {
    for (double v : kv.get_doubles("baselines.anchors"))
      cfg.anchor_indices.push_back(static_cast<int>(v));
  }
  const std::string fit_on = kv.get_string("baselines.fit_on", "flattened");
  if (fit_on == "flattened") {
    cfg.fit_on_flattened = true;
  } else if (fit_on == "burst_means") {
    cfg.fit_on_flattened = false;
  } else {
    throw ConfigError("baselines.fit_on must be 'flattened' or 'burst_means'");
  }

  const std::string calibration =
      kv.get_string("eval.calibration", "orthogonal");
  if (calibration == "orthogonal") {
    cfg.eval_with_scaling = false;
  } else if (calibration == "similarity") {
    cfg.eval_with_scaling = true;
  } else {
    throw ConfigError("eval.calibration must be 'orthogonal' or 'similarity'");
  }

  cfg.persist_recordings_burst =
      static_cast<int>(kv.get_int("pipeline.persist_recordings_burst", -1));

  for (const auto& [key, value] : kv.entries())
    if (!kv.accessed().count(key))
      throw ConfigError("unknown config key '" + key + "'");

  cfg.config_hash = kv.hash();
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path,
                                        std::optional<long long> seed_override,
                                        std::optional<double> rt60_override) {
  KeyValueConfig kv = KeyValueConfig::parse_file(path);
  if (seed_override) {
    kv.set("train.seed", std::to_string(*seed_override));
    if (kv.has("sources.count")) {
      const long long n = kv.get_int("sources.count");
      for (long long s = 1; s <= n; ++s)
        kv.set("sources.seed_" + std::to_string(s),
               std::to_string(*seed_override + 1000 * s));
    }
  }
  if (rt60_override) {
    std::ostringstream v;
    v << std::setprecision(17) << *rt60_override;
    kv.set("room.rt60_list", v.str());
  }
  return from_kv(kv);
}

RoomSpec ExperimentConfig::room_for(double rt60) const {
  RoomSpec r = room;
  r.rt60 = rt60;
  return r;
}

std::string ExperimentConfig::rt60_tag(double rt60) const {
  return std::to_string(static_cast<long long>(std::llround(rt60 * 1000.0))) +
         "ms";
}

void ExperimentConfig::validate() const {
  if (rt60_list.empty()) throw ConfigError("room.rt60_list is empty");
  for (double rt60 : rt60_list) {
    const RoomSpec r = room_for(rt60);
    r.validate();
    grid.validate(r);
    for (const SourceSpec& s : sources) s.validate(r);
  }
  geometry.validate();
  if (features.bin_lo < 0 || features.bin_hi < features.bin_lo ||
      features.bin_hi > features.n_fft / 2)
    throw ConfigError("feature bin range invalid for n_fft");
  train.validate();
}

}  // namespace scenemap
