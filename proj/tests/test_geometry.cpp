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

#include <cmath>

#include "scenemap/errors.hpp"
#include "scenemap/geometry.hpp"

using namespace scenemap;

namespace {

RoomSpec paper_room() {
  RoomSpec room;
  room.dimensions = {6.0, 6.0, 2.4};
  room.rt60 = 0.36;
  return room;
}

SamplingGrid paper_grid() {
  SamplingGrid grid;
  grid.roi_origin = {1.0, 1.0};
  grid.roi_size = {4.0, 4.0};
  grid.points_per_axis = 56;
  grid.plane_height_z = 0.2;
  return grid;
}

}  // namespace

TEST_CASE("default constellation layout") {
  const auto g = BurstArrayGeometry::make_default(0.02, 0.03, 7);
  REQUIRE(g.num_crosses() == 7);
  CHECK(g.mics_per_burst() == 28);
  CHECK(g.cross_offsets[0][0] == 0.0);
  CHECK(g.cross_offsets[0][1] == 0.0);
  for (int k = 1; k < 7; ++k) {
    const double radius = std::hypot(g.cross_offsets[k][0], g.cross_offsets[k][1]);
    CHECK(radius == doctest::Approx(0.02).epsilon(1e-12));
  }
  // Hexagon vertices are distinct.
  for (int a = 1; a < 7; ++a)
    for (int b = a + 1; b < 7; ++b) {
      const double dx = g.cross_offsets[a][0] - g.cross_offsets[b][0];
      const double dy = g.cross_offsets[a][1] - g.cross_offsets[b][1];
      CHECK(std::hypot(dx, dy) > 1e-3);
    }
}

TEST_CASE("whitening sigma of the standard constellation") {
  // Center cross plus hexagon of radius r: per-axis variance r^2/2, so the
  // averaged per-axis deviation is r/sqrt(2).
  const auto g = BurstArrayGeometry::make_default(0.02, 0.03, 7);
  CHECK(g.whitening_sigma() == doctest::Approx(0.02 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("offset outside constellation radius rejected") {
  BurstArrayGeometry g;
  g.constellation_radius_r = 0.02;
  g.arm_half_spacing_d = 0.03;
  g.cross_offsets = {{0.0, 0.0}, {0.03, 0.0}};
  CHECK_THROWS_AS(g.validate(), ConfigError);
}

TEST_CASE("paper sampling grid") {
  const SamplingGrid grid = paper_grid();
  grid.validate(paper_room());
  CHECK(grid.num_bursts() == 3136);
  CHECK(grid.spacing()[0] == doctest::Approx(4.0 / 55.0));         // 7.27 cm
  CHECK(grid.spacing()[0] * 100.0 == doctest::Approx(7.27).epsilon(1e-3));

  const Vec2 first = grid.burst_center(0);
  CHECK(first[0] == doctest::Approx(1.0));
  CHECK(first[1] == doctest::Approx(1.0));
  const Vec2 last = grid.burst_center(grid.num_bursts() - 1);
  CHECK(last[0] == doctest::Approx(5.0));
  CHECK(last[1] == doctest::Approx(5.0));

  // x varies fastest.
  const Vec2 second = grid.burst_center(1);
  CHECK(second[0] > first[0]);
  CHECK(second[1] == doctest::Approx(first[1]));
}

TEST_CASE("burst mic positions: center cross pairs") {
  const RoomSpec room = paper_room();
  SamplingGrid grid = paper_grid();
  grid.points_per_axis = 3;  // center burst index 4 sits at (3, 3)
  const auto g = BurstArrayGeometry::make_default(0.02, 0.03, 7);

  const auto mics = burst_mic_positions(grid, g, room, 4);
  REQUIRE(mics.size() == 28);

  // Cross 0 is at the burst center: vertical pair +-d along y, horizontal
  // pair +-d along x.
  CHECK(mics[0][0] == doctest::Approx(3.0));
  CHECK(mics[0][1] == doctest::Approx(3.0 - 0.03));
  CHECK(mics[1][1] == doctest::Approx(3.0 + 0.03));
  CHECK(mics[2][0] == doctest::Approx(3.0 - 0.03));
  CHECK(mics[2][1] == doctest::Approx(3.0));
  CHECK(mics[3][0] == doctest::Approx(3.0 + 0.03));
  for (const auto& m : mics) CHECK(m[2] == doctest::Approx(0.2));

  // Every microphone stays within constellation radius + arm spacing of the
  // burst center.
  for (const auto& m : mics) {
    const double dist = std::hypot(m[0] - 3.0, m[1] - 3.0);
    CHECK(dist <= 0.02 + 0.03 + 1e-12);
  }
}

TEST_CASE("burst mic positions are a pure function") {
  const RoomSpec room = paper_room();
  const SamplingGrid grid = paper_grid();
  const auto g = BurstArrayGeometry::make_default(0.02, 0.03, 7);
  const auto a = burst_mic_positions(grid, g, room, 17);
  const auto b = burst_mic_positions(grid, g, room, 17);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i][0] == b[i][0]);
    CHECK(a[i][1] == b[i][1]);
    CHECK(a[i][2] == b[i][2]);
  }
}

TEST_CASE("microphone outside the room is a geometry error") {
  RoomSpec room = paper_room();
  SamplingGrid grid = paper_grid();
  grid.roi_origin = {0.01, 0.01};  // an arm of the first burst pokes outside
  CHECK_THROWS_AS(
      burst_mic_positions(grid, BurstArrayGeometry::make_default(0.02, 0.03, 7),
                          room, 0),
      GeometryError);
}

TEST_CASE("burst index bounds") {
  const SamplingGrid grid = paper_grid();
  CHECK_THROWS_AS(grid.burst_center(-1), ArgumentError);
  CHECK_THROWS_AS(grid.burst_center(3136), ArgumentError);
}

TEST_CASE("room validation") {
  RoomSpec room = paper_room();
  room.speed_of_sound = 500.0;
  CHECK_THROWS_AS(room.validate(), ConfigError);
  room = paper_room();
  room.rt60 = 0.0;
  CHECK_THROWS_AS(room.validate(), ConfigError);
}
