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

#include "scenemap/signal.hpp"

#include <cmath>

#include "scenemap/dsp.hpp"
#include "scenemap/errors.hpp"
#include "scenemap/rng.hpp"

namespace scenemap {

std::vector<double> white_noise(std::size_t num_samples, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> signal(num_samples);
  for (double& s : signal) s = rng.gauss();
  return signal;
}

std::vector<double> render_mic_signal(const Rir& rir,
                                      const std::vector<double>& source_signal,
                                      std::optional<double> snr_db,
                                      std::uint64_t noise_seed) {
  if (source_signal.empty())
    throw ArgumentError("render_mic_signal: empty source signal");
  rir.validate();

  std::vector<double> out = dsp::fft_convolve(source_signal, rir.taps);
  out.resize(source_signal.size());

  if (snr_db.has_value()) {
    double signal_power = 0.0;
    for (double v : out) signal_power += v * v;
    signal_power /= static_cast<double>(out.size());
    const double noise_power =
        signal_power / std::pow(10.0, *snr_db / 10.0);
    const double noise_std = std::sqrt(noise_power);
    Rng rng(noise_seed);
    for (double& v : out) v += noise_std * rng.gauss();
  }
  return out;
}

}  // namespace scenemap
