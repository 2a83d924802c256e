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

#include "scenemap/rir.hpp"

#include <cmath>
#include <cstdlib>

#include "scenemap/errors.hpp"

namespace scenemap {

namespace {

constexpr int kSincTaps = 81;  // odd, so the window is centered on a tap
constexpr int kSincHalf = kSincTaps / 2;

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

}  // namespace

void Rir::validate() const {
  if (taps.empty()) throw NumericError("Rir: empty tap sequence");
  double e = 0.0;
  for (double t : taps) {
    if (!std::isfinite(t)) throw NumericError("Rir: non-finite tap");
    e += t * t;
  }
  if (!(e > 0.0)) throw NumericError("Rir: zero energy");
}

double Rir::energy() const {
  double e = 0.0;
  for (double t : taps) e += t * t;
  return e;
}

double rt60_to_absorption(const RoomSpec& room) {
  room.validate();
  const double alpha =
      0.161 * room.volume() / (room.rt60 * room.surface_area());
  if (alpha >= 1.0)
    throw NumericError("rt60_to_absorption: rt60 too small for this room "
                       "(Sabine coefficient >= 1)");
  return alpha;
}

int rir_length(const RoomSpec& room) {
  return static_cast<int>(std::ceil(1.25 * room.rt60 * room.sample_rate));
}

Rir simulate_rir(const RoomSpec& room, const Vec3& source, const Vec3& mic,
                 int max_order) {
  room.validate();
  if (!room.contains(source))
    throw GeometryError("simulate_rir: source outside room interior");
  if (!room.contains(mic))
    throw GeometryError("simulate_rir: microphone outside room interior");
  if (source == mic)
    throw GeometryError("simulate_rir: source and microphone coincide");

  const double alpha = rt60_to_absorption(room);
  const double beta = std::sqrt(1.0 - alpha);
  const double meters_per_sample = room.speed_of_sound / room.sample_rate;
  const int n_taps = rir_length(room);

  // Work in sample units, as in the classic image-method formulation.
  double s[3], r[3], L[3];
  for (int i = 0; i < 3; ++i) {
    s[i] = source[i] / meters_per_sample;
    r[i] = mic[i] / meters_per_sample;
    L[i] = room.dimensions[i] / meters_per_sample;
  }
  const int n1 = static_cast<int>(std::ceil(n_taps / (2.0 * L[0])));
  const int n2 = static_cast<int>(std::ceil(n_taps / (2.0 * L[1])));
  const int n3 = static_cast<int>(std::ceil(n_taps / (2.0 * L[2])));

  Rir rir;
  rir.sample_rate = room.sample_rate;
  rir.taps.assign(n_taps, 0.0);

  for (int mx = -n1; mx <= n1; ++mx) {
    for (int my = -n2; my <= n2; ++my) {
      for (int mz = -n3; mz <= n3; ++mz) {
        for (int q = 0; q <= 1; ++q) {
          for (int j = 0; j <= 1; ++j) {
            for (int k = 0; k <= 1; ++k) {
              if (max_order >= 0) {
                const int order = std::abs(2 * mx - q) + std::abs(2 * my - j) +
                                  std::abs(2 * mz - k);
                if (order > max_order) continue;
              }
              const double dx = (1 - 2 * q) * s[0] - r[0] + 2.0 * mx * L[0];
              const double dy = (1 - 2 * j) * s[1] - r[1] + 2.0 * my * L[1];
              const double dz = (1 - 2 * k) * s[2] - r[2] + 2.0 * mz * L[2];
              const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
              const double arrival = std::floor(dist);
              if (arrival >= n_taps) continue;

              const int bounces = std::abs(mx - q) + std::abs(mx) +
                                  std::abs(my - j) + std::abs(my) +
                                  std::abs(mz - k) + std::abs(mz);
              const double gain = std::pow(beta, bounces) /
                                  (4.0 * M_PI * dist * meters_per_sample);

              const double frac = dist - arrival;
              const int start = static_cast<int>(arrival) - kSincHalf;
              for (int n = 0; n < kSincTaps; ++n) {
                const int idx = start + n;
                if (idx < 0 || idx >= n_taps) continue;
                const double t = (n - kSincHalf) - frac;
                const double window =
                    0.5 * (1.0 + std::cos(2.0 * M_PI * t / kSincTaps));
                rir.taps[idx] += gain * window * sinc(M_PI * t);
              }
            }
          }
        }
      }
    }
  }

  rir.validate();
  return rir;
}

double measure_rt60(const Rir& rir) {
  rir.validate();
  const std::size_t n = rir.taps.size();

  // Schroeder backward integration of the squared response.
  std::vector<double> energy(n);
  double acc = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    acc += rir.taps[i] * rir.taps[i];
    energy[i] = acc;
  }
  const double total = energy[0];

  const double fs = rir.sample_rate;
  std::ptrdiff_t i5 = -1, i35 = -1;
  for (std::size_t i = 0; i < n && energy[i] > 0.0; ++i) {
    const double db = 10.0 * std::log10(energy[i] / total);
    if (i5 < 0 && db <= -5.0) i5 = static_cast<std::ptrdiff_t>(i);
    if (db <= -35.0) {
      i35 = static_cast<std::ptrdiff_t>(i);
      break;
    }
  }
  if (i5 < 0 || i35 <= i5)
    throw NumericError("measure_rt60: decay curve never spans -5..-35 dB");

  // Least-squares line through (time, dB) on the fit range.
  double sum_t = 0.0, sum_d = 0.0, sum_tt = 0.0, sum_td = 0.0;
  const double count = static_cast<double>(i35 - i5 + 1);
  for (std::ptrdiff_t i = i5; i <= i35; ++i) {
    const double t = static_cast<double>(i) / fs;
    const double db = 10.0 * std::log10(energy[static_cast<std::size_t>(i)] / total);
    sum_t += t;
    sum_d += db;
    sum_tt += t * t;
    sum_td += t * db;
  }
  const double denom = count * sum_tt - sum_t * sum_t;
  if (!(denom > 0.0))
    throw NumericError("measure_rt60: degenerate fit range");
  const double slope = (count * sum_td - sum_t * sum_d) / denom;  // dB per s
  if (!(slope < 0.0))
    throw NumericError("measure_rt60: decay curve is not decreasing");
  return -60.0 / slope;
}

}  // namespace scenemap
