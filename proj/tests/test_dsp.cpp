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
#include <complex>
#include <vector>

#include "scenemap/dsp.hpp"
#include "scenemap/errors.hpp"
#include "scenemap/rng.hpp"

using scenemap::Rng;
namespace dsp = scenemap::dsp;

namespace {

// Quadratic-time reference DFT.
std::vector<std::complex<double>> naive_dft(
    const std::vector<std::complex<double>>& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j)
      acc += x[j] * std::polar(1.0, -2.0 * M_PI * double(k * j) / double(n));
    out[k] = acc;
  }
  return out;
}

}  // namespace

TEST_CASE("fft matches a naive dft") {
  Rng rng(42);
  const std::size_t n = 64;
  std::vector<std::complex<double>> x(n);
  for (auto& v : x) v = {rng.gauss(), rng.gauss()};

  dsp::Fft fft(n);
  std::vector<std::complex<double>> fast(n);
  fft.forward(x.data(), fast.data());
  const auto slow = naive_dft(x);
  for (std::size_t k = 0; k < n; ++k)
    CHECK(std::abs(fast[k] - slow[k]) < 1e-10);
}

TEST_CASE("fft inverse round trip") {
  Rng rng(7);
  const std::size_t n = 128;
  std::vector<std::complex<double>> x(n), spec(n), back(n);
  for (auto& v : x) v = {rng.gauss(), rng.gauss()};

  dsp::Fft fft(n);
  fft.forward(x.data(), spec.data());
  fft.inverse(spec.data(), back.data());
  for (std::size_t i = 0; i < n; ++i)
    CHECK(std::abs(back[i] / double(n) - x[i]) < 1e-12);
}

TEST_CASE("fft convolution equals direct convolution") {
  Rng rng(3);
  std::vector<double> x(257), h(31);
  for (auto& v : x) v = rng.gauss();
  for (auto& v : h) v = rng.gauss();

  const auto fast = dsp::fft_convolve(x, h);
  const auto slow = dsp::direct_convolve(x, h);
  REQUIRE(fast.size() == slow.size());
  for (std::size_t i = 0; i < fast.size(); ++i)
    CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-10));
}

TEST_CASE("convolution rejects empty input") {
  CHECK_THROWS_AS(dsp::fft_convolve({}, {1.0}), scenemap::ArgumentError);
  CHECK_THROWS_AS(dsp::direct_convolve({1.0}, {}), scenemap::ArgumentError);
}

TEST_CASE("next_pow2") {
  CHECK(dsp::next_pow2(1) == 1);
  CHECK(dsp::next_pow2(2) == 2);
  CHECK(dsp::next_pow2(3) == 4);
  CHECK(dsp::next_pow2(1025) == 2048);
}
