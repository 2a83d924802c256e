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

#ifndef SCENEMAP_GEOMETRY_HPP_
#define SCENEMAP_GEOMETRY_HPP_

#include <array>
#include <cstdint>
#include <vector>

namespace scenemap {

using Vec3 = std::array<double, 3>;
using Vec2 = std::array<double, 2>;

// Shoebox room with a uniform reverberation target.
struct RoomSpec {
  Vec3 dimensions{6.0, 6.0, 2.4};  // meters
  double rt60 = 0.36;              // seconds
  double speed_of_sound = 343.0;   // m/s
  double sample_rate = 16000.0;    // Hz

  void validate() const;
  bool contains(const Vec3& p) const;  // strict interior
  double volume() const;
  double surface_area() const;
};

// One fixed omnidirectional source emitting seeded white noise.
struct SourceSpec {
  Vec3 position{2.0, 3.0, 1.7};
  double signal_duration = 5.0;  // seconds
  std::uint64_t signal_seed = 1;

  void validate(const RoomSpec& room) const;
};

// The burst microphone array: M cross-shaped sub-arrays inside a circular
// constellation. Each cross contributes a vertical mic pair at +-d along y
// and a horizontal pair at +-d along x around the cross center.
struct BurstArrayGeometry {
  double constellation_radius_r = 0.02;  // meters
  double arm_half_spacing_d = 0.03;      // meters
  std::vector<Vec2> cross_offsets;       // M offsets from the burst center

  // One cross at the constellation center and the remaining M-1 equally
  // spaced on the circle of radius r, starting at angle zero.
  static BurstArrayGeometry make_default(double r, double d, int num_crosses);

  int num_crosses() const { return static_cast<int>(cross_offsets.size()); }
  int mics_per_burst() const { return 4 * num_crosses(); }
  void validate() const;

  // Per-axis standard deviation of the offset pattern (M-1 normalization),
  // averaged over the two axes. This is the latent-space scale the embedded
  // burst covariance should be whitened to when the latent unit is meters.
  double whitening_sigma() const;
};

// Uniform square grid of burst centers in a horizontal plane.
struct SamplingGrid {
  Vec2 roi_origin{1.0, 1.0};  // meters
  Vec2 roi_size{4.0, 4.0};    // meters
  int points_per_axis = 56;
  double plane_height_z = 0.2;  // meters

  void validate(const RoomSpec& room) const;
  int num_bursts() const { return points_per_axis * points_per_axis; }
  Vec2 spacing() const;

  // Burst index = iy * points_per_axis + ix (x varies fastest); the first
  // burst center coincides with roi_origin.
  Vec2 burst_center(int burst_index) const;
  std::vector<Vec2> all_burst_centers() const;
};

// All 4*M microphone positions of one burst, grouped per cross as
// [vertical-, vertical+, horizontal-, horizontal+]. Pure function of its
// inputs. Throws GeometryError if any microphone leaves the room interior.
std::vector<Vec3> burst_mic_positions(const SamplingGrid& grid,
                                      const BurstArrayGeometry& geometry,
                                      const RoomSpec& room, int burst_index);

}  // namespace scenemap

#endif  // SCENEMAP_GEOMETRY_HPP_
