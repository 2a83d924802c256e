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

#ifndef SCENEMAP_SIGNAL_HPP_
#define SCENEMAP_SIGNAL_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "scenemap/rir.hpp"

namespace scenemap {

// Unit-variance white Gaussian source signal, deterministic per seed.
std::vector<double> white_noise(std::size_t num_samples, std::uint64_t seed);

// Microphone signal d(n) = (a * s)(n), truncated to the source length.
// When snr_db is set, white Gaussian sensor noise is added at that SNR
// (signal power measured on the reverberant signal); the default is
// noiseless. noise_seed only matters when snr_db is set.
std::vector<double> render_mic_signal(const Rir& rir,
                                      const std::vector<double>& source_signal,
                                      std::optional<double> snr_db = std::nullopt,
                                      std::uint64_t noise_seed = 0);

}  // namespace scenemap

#endif  // SCENEMAP_SIGNAL_HPP_
