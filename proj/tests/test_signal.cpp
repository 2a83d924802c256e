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
#include <numeric>
#include <vector>

#include "scenemap/errors.hpp"
#include "scenemap/signal.hpp"

using namespace scenemap;

namespace {

double variance(const std::vector<double>& x) {
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
  double acc = 0.0;
  for (double v : x) acc += (v - mean) * (v - mean);
  return acc / x.size();
}

Rir impulse_at(int delay, int length, double amplitude = 1.0) {
  Rir rir;
  rir.sample_rate = 16000.0;
  rir.taps.assign(length, 0.0);
  rir.taps[delay] = amplitude;
  return rir;
}

}  // namespace

TEST_CASE("white noise is deterministic per seed and unit variance") {
  const auto a = white_noise(80000, 11);
  const auto b = white_noise(80000, 11);
  const auto c = white_noise(80000, 12);
  CHECK(a == b);
  CHECK(a != c);
  CHECK(variance(a) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("identity kernel returns the source exactly") {
  const auto src = white_noise(5000, 1);
  const auto out = render_mic_signal(impulse_at(0, 1), src);
  REQUIRE(out.size() == src.size());
  for (std::size_t i = 0; i < src.size(); ++i)
    CHECK(out[i] == doctest::Approx(src[i]).epsilon(1e-12));
}

TEST_CASE("delay kernel shifts the source") {
  const int k = 37;
  const auto src = white_noise(4000, 2);
  const auto out = render_mic_signal(impulse_at(k, k + 1), src);
  REQUIRE(out.size() == src.size());
  for (int i = 0; i < k; ++i) CHECK(std::abs(out[i]) < 1e-12);
  for (std::size_t i = k; i < src.size(); ++i)
    CHECK(out[i] == doctest::Approx(src[i - k]).epsilon(1e-12));
}

TEST_CASE("two-tap filter output power matches the analytic value") {
  // var(out) = (a^2 + b^2) var(in) for white input.
  const double a = 0.8, b = -0.5;
  Rir rir;
  rir.sample_rate = 16000.0;
  rir.taps = {a, b};
  const auto src = white_noise(80000, 3);
  const auto out = render_mic_signal(rir, src);
  CHECK(variance(out) ==
        doctest::Approx((a * a + b * b) * variance(src)).epsilon(0.05));
}

TEST_CASE("sensor noise at the requested snr") {
  Rir rir = impulse_at(0, 1);
  const auto src = white_noise(80000, 4);
  const auto clean = render_mic_signal(rir, src);
  const auto noisy = render_mic_signal(rir, src, 20.0, 99);
  std::vector<double> noise(clean.size());
  for (std::size_t i = 0; i < clean.size(); ++i) noise[i] = noisy[i] - clean[i];
  const double snr = variance(clean) / variance(noise);
  CHECK(10.0 * std::log10(snr) == doctest::Approx(20.0).epsilon(0.05));
}

TEST_CASE("empty source rejected") {
  CHECK_THROWS_AS(render_mic_signal(impulse_at(0, 1), {}), ArgumentError);
}
