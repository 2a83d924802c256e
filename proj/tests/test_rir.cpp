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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "scenemap/errors.hpp"
#include "scenemap/rir.hpp"

using namespace scenemap;

namespace {

RoomSpec paper_room(double rt60) {
  RoomSpec room;
  room.dimensions = {6.0, 6.0, 2.4};
  room.rt60 = rt60;
  room.speed_of_sound = 343.0;
  room.sample_rate = 16000.0;
  return room;
}

// Independent order-1 oracle: the direct path plus the six first-order
// mirror images, each placed with the same 81-tap interpolation kernel.
std::vector<double> order1_reference(const RoomSpec& room, const Vec3& src,
                                     const Vec3& mic) {
  const double beta = std::sqrt(1.0 - rt60_to_absorption(room));
  const int n_taps = rir_length(room);
  const double cTs = room.speed_of_sound / room.sample_rate;

  std::vector<Vec3> images{src};
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 low = src, high = src;
    low[axis] = -src[axis];
    high[axis] = 2.0 * room.dimensions[axis] - src[axis];
    images.push_back(low);
    images.push_back(high);
  }

  std::vector<double> taps(n_taps, 0.0);
  for (std::size_t i = 0; i < images.size(); ++i) {
    const double dx = images[i][0] - mic[0];
    const double dy = images[i][1] - mic[1];
    const double dz = images[i][2] - mic[2];
    const double dist_m = std::sqrt(dx * dx + dy * dy + dz * dz);
    const double dist = dist_m / cTs;  // samples
    const double gain = (i == 0 ? 1.0 : beta) / (4.0 * M_PI * dist_m);

    const double arrival = std::floor(dist);
    const double frac = dist - arrival;
    const int start = static_cast<int>(arrival) - 40;
    for (int n = 0; n < 81; ++n) {
      const int idx = start + n;
      if (idx < 0 || idx >= n_taps) continue;
      const double t = (n - 40) - frac;
      const double window = 0.5 * (1.0 + std::cos(2.0 * M_PI * t / 81.0));
      const double sinc = t == 0.0 ? 1.0 : std::sin(M_PI * t) / (M_PI * t);
      taps[idx] += gain * window * sinc;
    }
  }
  return taps;
}

}  // namespace

TEST_CASE("sabine absorption") {
  // alpha = 0.161 V / (rt60 S) for the 6 x 6 x 2.4 room, frozen from a hand
  // computation with V = 86.4, S = 129.6.
  CHECK(rt60_to_absorption(paper_room(0.360)) ==
        doctest::Approx(0.298148148).epsilon(1e-8));
  CHECK(rt60_to_absorption(paper_room(0.160)) ==
        doctest::Approx(0.670833333).epsilon(1e-8));
  CHECK(rt60_to_absorption(paper_room(0.610)) ==
        doctest::Approx(0.175956284).epsilon(1e-8));
}

TEST_CASE("absorption vanishes as rt60 grows") {
  CHECK(rt60_to_absorption(paper_room(1e9)) < 1e-9);
}

TEST_CASE("unachievable reverberation") {
  CHECK_THROWS_AS(rt60_to_absorption(paper_room(0.01)), NumericError);
}

TEST_CASE("direct path only at order zero") {
  const RoomSpec room = paper_room(0.160);
  const Vec3 src{2.0, 3.0, 1.2};
  const Vec3 mic{3.0, 3.0, 1.2};  // exactly 1 m away
  const Rir rir = simulate_rir(room, src, mic, 0);

  // Arrival near sample fs * d / c = 46.65, split across neighbors.
  const auto peak = std::max_element(rir.taps.begin(), rir.taps.end());
  const int peak_idx = static_cast<int>(peak - rir.taps.begin());
  CHECK(std::abs(peak_idx - 16000.0 / 343.0) <= 1.0);

  // The interpolated pulse integrates to the free-field amplitude 1/(4 pi).
  double sum = 0.0;
  for (double t : rir.taps) sum += t;
  CHECK(sum == doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(0.02));
}

TEST_CASE("order one matches brute-force image enumeration") {
  const RoomSpec room = paper_room(0.160);
  const Vec3 src{2.0, 3.0, 1.2};
  const Vec3 mic{3.5, 2.5, 1.0};
  const Rir rir = simulate_rir(room, src, mic, 1);
  const std::vector<double> expected = order1_reference(room, src, mic);

  REQUIRE(rir.taps.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i)
    CHECK(rir.taps[i] == doctest::Approx(expected[i]).epsilon(1e-9));
}

TEST_CASE("direct-path arrival index property") {
  const RoomSpec room = paper_room(0.160);
  const Vec3 src{2.0, 3.0, 1.7};
  const std::vector<Vec3> mics{{1.0, 1.0, 0.2}, {4.4, 2.2, 0.3}, {2.2, 3.1, 1.5}};
  for (const Vec3& mic : mics) {
    const Rir rir = simulate_rir(room, src, mic, 0);
    const auto peak = std::max_element(rir.taps.begin(), rir.taps.end());
    const int peak_idx = static_cast<int>(peak - rir.taps.begin());
    const double dist = std::sqrt(std::pow(src[0] - mic[0], 2) +
                                  std::pow(src[1] - mic[1], 2) +
                                  std::pow(src[2] - mic[2], 2));
    const int expected = static_cast<int>(std::lround(
        room.sample_rate * dist / room.speed_of_sound));
    CHECK(std::abs(peak_idx - expected) <= 1);
  }
}

TEST_CASE("image-method reciprocity") {
  const RoomSpec room = paper_room(0.160);
  const Vec3 a{2.0, 3.0, 1.7};
  const Vec3 b{3.7, 1.9, 0.4};
  const Rir forward = simulate_rir(room, a, b);
  const Rir reverse = simulate_rir(room, b, a);
  REQUIRE(forward.taps.size() == reverse.taps.size());
  double max_diff = 0.0;
  for (std::size_t i = 0; i < forward.taps.size(); ++i)
    max_diff = std::max(max_diff, std::abs(forward.taps[i] - reverse.taps[i]));
  CHECK(max_diff < 1e-9);
}

TEST_CASE("geometry errors") {
  const RoomSpec room = paper_room(0.160);
  CHECK_THROWS_AS(simulate_rir(room, {7.0, 1.0, 1.0}, {1.0, 1.0, 1.0}),
                  GeometryError);
  CHECK_THROWS_AS(simulate_rir(room, {1.0, 1.0, 1.0}, {1.0, -0.1, 1.0}),
                  GeometryError);
  CHECK_THROWS_AS(simulate_rir(room, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}),
                  GeometryError);
}

TEST_CASE("schroeder measurement of an ideal exponential decay") {
  const double rt60 = 0.5;
  const double fs = 16000.0;
  Rir rir;
  rir.sample_rate = fs;
  const int n = static_cast<int>(1.2 * rt60 * fs);
  rir.taps.resize(n);
  for (int i = 0; i < n; ++i)
    rir.taps[i] = std::exp(-6.91 * i / (fs * rt60));
  CHECK(measure_rt60(rir) == doctest::Approx(rt60).epsilon(0.02));
}

TEST_CASE("insufficient decay range") {
  Rir rir;
  rir.sample_rate = 16000.0;
  rir.taps.assign(1000, 1.0);  // no decay at all
  CHECK_THROWS_AS(measure_rt60(rir), NumericError);
}

TEST_CASE("simulated decay matches the configured rt60") {
  const Vec3 src{2.0, 3.0, 1.7};
  const Vec3 mic{3.4, 2.1, 0.2};
  for (double rt60 : {0.160, 0.360}) {
    const Rir rir = simulate_rir(paper_room(rt60), src, mic);
    CHECK(static_cast<int>(rir.taps.size()) >=
          static_cast<int>(rt60 * 16000.0));
    const double measured = measure_rt60(rir);
    CHECK(measured == doctest::Approx(rt60).epsilon(0.20));
  }
}
