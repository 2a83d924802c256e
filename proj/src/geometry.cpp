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

#include "scenemap/geometry.hpp"

#include <cmath>
#include <string>

#include "scenemap/errors.hpp"

namespace scenemap {

void RoomSpec::validate() const {
  for (double dim : dimensions)
    if (!(dim > 0.0)) throw ConfigError("RoomSpec: dimensions must be positive");
  if (!(rt60 > 0.0)) throw ConfigError("RoomSpec: rt60 must be positive");
  if (!(sample_rate > 0.0))
    throw ConfigError("RoomSpec: sample_rate must be positive");
  if (speed_of_sound < 300.0 || speed_of_sound > 400.0)
    throw ConfigError("RoomSpec: speed_of_sound outside [300, 400] m/s");
}

bool RoomSpec::contains(const Vec3& p) const {
  for (int i = 0; i < 3; ++i)
    if (!(p[i] > 0.0 && p[i] < dimensions[i])) return false;
  return true;
}

double RoomSpec::volume() const {
  return dimensions[0] * dimensions[1] * dimensions[2];
}

double RoomSpec::surface_area() const {
  const double lx = dimensions[0], ly = dimensions[1], lz = dimensions[2];
  return 2.0 * (lx * ly + lx * lz + ly * lz);
}

void SourceSpec::validate(const RoomSpec& room) const {
  if (!room.contains(position))
    throw GeometryError("SourceSpec: source position outside room interior");
  if (!(signal_duration > 0.0))
    throw ConfigError("SourceSpec: signal_duration must be positive");
}

BurstArrayGeometry BurstArrayGeometry::make_default(double r, double d,
                                                    int num_crosses) {
  if (num_crosses < 1)
    throw ConfigError("BurstArrayGeometry: need at least one cross");
  BurstArrayGeometry g;
  g.constellation_radius_r = r;
  g.arm_half_spacing_d = d;
  g.cross_offsets.push_back({0.0, 0.0});
  for (int k = 1; k < num_crosses; ++k) {
    const double angle = 2.0 * M_PI * (k - 1) / (num_crosses - 1);
    g.cross_offsets.push_back({r * std::cos(angle), r * std::sin(angle)});
  }
  g.validate();
  return g;
}

void BurstArrayGeometry::validate() const {
  if (cross_offsets.empty())
    throw ConfigError("BurstArrayGeometry: no cross offsets");
  if (!(arm_half_spacing_d > 0.0))
    throw ConfigError("BurstArrayGeometry: arm_half_spacing_d must be positive");
  if (!(constellation_radius_r >= 0.0))
    throw ConfigError("BurstArrayGeometry: constellation_radius_r negative");
  const double limit = constellation_radius_r + 1e-12;
  for (const Vec2& o : cross_offsets) {
    if (std::hypot(o[0], o[1]) > limit)
      throw ConfigError(
          "BurstArrayGeometry: cross offset outside constellation radius");
  }
}

double BurstArrayGeometry::whitening_sigma() const {
  const int m = num_crosses();
  if (m < 2) throw ConfigError("whitening_sigma: need at least two crosses");
  double mean_x = 0.0, mean_y = 0.0;
  for (const Vec2& o : cross_offsets) {
    mean_x += o[0];
    mean_y += o[1];
  }
  mean_x /= m;
  mean_y /= m;
  double var_x = 0.0, var_y = 0.0;
  for (const Vec2& o : cross_offsets) {
    var_x += (o[0] - mean_x) * (o[0] - mean_x);
    var_y += (o[1] - mean_y) * (o[1] - mean_y);
  }
  var_x /= (m - 1);
  var_y /= (m - 1);
  return std::sqrt(0.5 * (var_x + var_y));
}

void SamplingGrid::validate(const RoomSpec& room) const {
  if (points_per_axis < 2)
    throw ConfigError("SamplingGrid: points_per_axis must be >= 2");
  if (!(roi_size[0] > 0.0 && roi_size[1] > 0.0))
    throw ConfigError("SamplingGrid: roi_size must be positive");
  if (!(plane_height_z > 0.0 && plane_height_z < room.dimensions[2]))
    throw GeometryError("SamplingGrid: plane height outside room");
  const Vec2 far{roi_origin[0] + roi_size[0], roi_origin[1] + roi_size[1]};
  if (!(roi_origin[0] > 0.0 && roi_origin[1] > 0.0 &&
        far[0] < room.dimensions[0] && far[1] < room.dimensions[1]))
    throw GeometryError("SamplingGrid: RoI not inside room footprint");
}

Vec2 SamplingGrid::spacing() const {
  const double n = points_per_axis - 1;
  return {roi_size[0] / n, roi_size[1] / n};
}

Vec2 SamplingGrid::burst_center(int burst_index) const {
  if (burst_index < 0 || burst_index >= num_bursts())
    throw ArgumentError("burst_center: index " + std::to_string(burst_index) +
                        " out of range");
  const int ix = burst_index % points_per_axis;
  const int iy = burst_index / points_per_axis;
  const Vec2 step = spacing();
  return {roi_origin[0] + ix * step[0], roi_origin[1] + iy * step[1]};
}

std::vector<Vec2> SamplingGrid::all_burst_centers() const {
  std::vector<Vec2> centers(num_bursts());
  for (int i = 0; i < num_bursts(); ++i) centers[i] = burst_center(i);
  return centers;
}

std::vector<Vec3> burst_mic_positions(const SamplingGrid& grid,
                                      const BurstArrayGeometry& geometry,
                                      const RoomSpec& room, int burst_index) {
  const Vec2 center = grid.burst_center(burst_index);
  const double z = grid.plane_height_z;
  const double d = geometry.arm_half_spacing_d;

  std::vector<Vec3> mics;
  mics.reserve(geometry.mics_per_burst());
  for (const Vec2& offset : geometry.cross_offsets) {
    const double cx = center[0] + offset[0];
    const double cy = center[1] + offset[1];
    mics.push_back({cx, cy - d, z});  // vertical pair
    mics.push_back({cx, cy + d, z});
    mics.push_back({cx - d, cy, z});  // horizontal pair
    mics.push_back({cx + d, cy, z});
  }
  for (const Vec3& m : mics) {
    if (!room.contains(m))
      throw GeometryError("burst_mic_positions: microphone outside room at burst " +
                          std::to_string(burst_index));
  }
  return mics;
}

}  // namespace scenemap
