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

#ifndef SCENEMAP_RIR_HPP_
#define SCENEMAP_RIR_HPP_

#include <vector>

#include "scenemap/geometry.hpp"

namespace scenemap {

// A sampled room impulse response.
struct Rir {
  std::vector<double> taps;
  double sample_rate = 16000.0;

  void validate() const;  // finite taps, positive energy
  double energy() const;
};

// Uniform Sabine absorption that realizes the room's RT60:
// alpha = 0.161 * V / (rt60 * S), applied to all six surfaces.
// Throws NumericError if the target decay is unachievable (alpha >= 1).
double rt60_to_absorption(const RoomSpec& room);

// Number of taps simulate_rir produces: 1.25 * rt60 * fs, which covers the
// decay range Schroeder measurement needs.
int rir_length(const RoomSpec& room);

// Image-source room impulse response between one source and one microphone.
//
// Every mirror image whose arrival falls inside the tap window contributes an
// attenuated impulse: amplitude beta^bounces / (4*pi*distance) with
// beta = sqrt(1 - alpha), placed with an 81-tap Hann-windowed sinc so
// sub-sample delays are preserved. max_order >= 0 additionally limits the
// total reflection count (order 0 keeps only the direct path); pass
// kAutoOrder to include every image the tap window can hold.
inline constexpr int kAutoOrder = -1;

Rir simulate_rir(const RoomSpec& room, const Vec3& source, const Vec3& mic,
                 int max_order = kAutoOrder);

// Reverberation time via Schroeder backward integration: straight-line fit of
// the decay curve on the -5 dB .. -35 dB range, extrapolated to 60 dB.
// Throws NumericError when the curve never reaches -35 dB.
double measure_rt60(const Rir& rir);

}  // namespace scenemap

#endif  // SCENEMAP_RIR_HPP_
