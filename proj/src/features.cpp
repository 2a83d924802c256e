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

#include "scenemap/features.hpp"

#include <cmath>
#include <string>

#include "scenemap/dsp.hpp"
#include "scenemap/errors.hpp"
#include "scenemap/parallel.hpp"

namespace scenemap {

namespace {

std::vector<double> make_window(Window window, int n) {
  std::vector<double> w(n, 1.0);
  switch (window) {
    case Window::kHamming:
      for (int i = 0; i < n; ++i)
        w[i] = 0.54 - 0.46 * std::cos(2.0 * M_PI * i / (n - 1));
      break;
    case Window::kHann:
      for (int i = 0; i < n; ++i)
        w[i] = 0.5 * (1.0 - std::cos(2.0 * M_PI * i / (n - 1)));
      break;
    case Window::kRect:
      break;
  }
  return w;
}

}  // namespace

Spectrum welch_cross_psd(const std::vector<double>& x,
                         const std::vector<double>& y, int n_fft,
                         double overlap_fraction, double sample_rate,
                         Window window) {
  if (x.size() != y.size())
    throw ArgumentError("welch_cross_psd: signals differ in length");
  if (n_fft < 2) throw ArgumentError("welch_cross_psd: n_fft must be >= 2");
  if (x.size() < static_cast<std::size_t>(n_fft))
    throw ArgumentError("welch_cross_psd: signal shorter than one frame");
  if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0))
    throw ArgumentError("welch_cross_psd: overlap_fraction outside [0, 1)");

  const int hop =
      std::max(1, static_cast<int>(std::lround(n_fft * (1.0 - overlap_fraction))));
  const int num_frames =
      static_cast<int>((x.size() - static_cast<std::size_t>(n_fft)) / hop) + 1;
  const std::vector<double> w = make_window(window, n_fft);
  double window_energy = 0.0;
  for (double v : w) window_energy += v * v;

  const int num_bins = n_fft / 2 + 1;
  std::vector<std::complex<double>> acc(num_bins, {0.0, 0.0});
  std::vector<std::complex<double>> frame_x(n_fft), frame_y(n_fft);
  std::vector<std::complex<double>> spec_x(n_fft), spec_y(n_fft);
  dsp::Fft fft(static_cast<std::size_t>(n_fft));

  for (int f = 0; f < num_frames; ++f) {
    const std::size_t offset = static_cast<std::size_t>(f) * hop;
    for (int i = 0; i < n_fft; ++i) {
      frame_x[i] = w[i] * x[offset + i];
      frame_y[i] = w[i] * y[offset + i];
    }
    fft.forward(frame_x.data(), spec_x.data());
    fft.forward(frame_y.data(), spec_y.data());
    for (int k = 0; k < num_bins; ++k)
      acc[k] += std::conj(spec_x[k]) * spec_y[k];
  }

  Spectrum s;
  s.bin_resolution = sample_rate / n_fft;
  s.bins.resize(num_bins);
  const double scale = 1.0 / (static_cast<double>(num_frames) * window_energy);
  for (int k = 0; k < num_bins; ++k) s.bins[k] = acc[k] * scale;
  return s;
}

Spectrum estimate_rtf(const std::vector<double>& reference,
                      const std::vector<double>& secondary, int n_fft,
                      double overlap_fraction, double sample_rate) {
  const Spectrum cross = welch_cross_psd(reference, secondary, n_fft,
                                         overlap_fraction, sample_rate);
  const Spectrum auto_ref = welch_cross_psd(reference, reference, n_fft,
                                            overlap_fraction, sample_rate);
  Spectrum h;
  h.bin_resolution = cross.bin_resolution;
  h.bins.resize(cross.bins.size());
  for (std::size_t k = 0; k < cross.bins.size(); ++k) {
    const double denom = auto_ref.bins[k].real();
    if (denom < 1e-12)
      throw NumericError("estimate_rtf: degenerate reference PSD at bin " +
                         std::to_string(k));
    h.bins[k] = cross.bins[k] / denom;
  }
  return h;
}

std::vector<std::complex<double>> select_bins(const Spectrum& rtf, int lo,
                                              int hi) {
  const int len = static_cast<int>(rtf.bins.size());
  if (lo < 0 || hi < lo || hi >= len)
    throw ArgumentError("select_bins: range [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "] invalid for " +
                        std::to_string(len) + " bins");
  return {rtf.bins.begin() + lo, rtf.bins.begin() + hi + 1};
}

std::vector<double> bin_distance_profile(const Spectrum& a, const Spectrum& b) {
  if (a.bins.size() != b.bins.size())
    throw ArgumentError("bin_distance_profile: spectra differ in length");
  std::vector<double> profile(a.bins.size());
  for (std::size_t k = 0; k < a.bins.size(); ++k)
    profile[k] = std::abs(a.bins[k] - b.bins[k]);
  return profile;
}

Eigen::MatrixXd assemble_burst_feature(const BurstRtfs& burst) {
  const int num_crosses = static_cast<int>(burst.rtfs.size());
  if (num_crosses == 0)
    throw ArgumentError("assemble_burst_feature: no crosses");
  const int num_sources = static_cast<int>(burst.rtfs[0].size());
  if (num_sources == 0)
    throw ArgumentError("assemble_burst_feature: no sources");
  const std::size_t num_bins = burst.rtfs[0][0].vertical.size();
  if (num_bins == 0)
    throw ArgumentError("assemble_burst_feature: empty RTF values");

  for (const auto& per_source : burst.rtfs) {
    if (static_cast<int>(per_source.size()) != num_sources)
      throw ArgumentError("assemble_burst_feature: incomplete burst "
                          "(missing source entries)");
    for (const auto& entry : per_source) {
      if (entry.vertical.size() != num_bins ||
          entry.horizontal.size() != num_bins)
        throw ArgumentError("assemble_burst_feature: incomplete burst "
                            "(missing orientation or inconsistent bins)");
    }
  }

  const int nb = static_cast<int>(num_bins);
  Eigen::MatrixXd out(num_crosses, nb * 4 * num_sources);
  for (int m = 0; m < num_crosses; ++m) {
    int col = 0;
    for (int s = 0; s < num_sources; ++s) {
      const auto& entry = burst.rtfs[m][s];
      for (int k = 0; k < nb; ++k) out(m, col + k) = entry.vertical[k].real();
      col += nb;
      for (int k = 0; k < nb; ++k) out(m, col + k) = entry.vertical[k].imag();
      col += nb;
      for (int k = 0; k < nb; ++k) out(m, col + k) = entry.horizontal[k].real();
      col += nb;
      for (int k = 0; k < nb; ++k) out(m, col + k) = entry.horizontal[k].imag();
      col += nb;
    }
  }
  return out;
}

BurstRtfs disassemble_burst_feature(const Eigen::MatrixXd& features,
                                    int num_sources) {
  if (num_sources < 1)
    throw ArgumentError("disassemble_burst_feature: need >= 1 source");
  if (features.cols() % (4 * num_sources) != 0)
    throw ArgumentError("disassemble_burst_feature: width not divisible by "
                        "4 * num_sources");
  const int nb = static_cast<int>(features.cols()) / (4 * num_sources);

  BurstRtfs burst;
  burst.rtfs.resize(features.rows());
  for (int m = 0; m < features.rows(); ++m) {
    burst.rtfs[m].resize(num_sources);
    int col = 0;
    for (int s = 0; s < num_sources; ++s) {
      BurstRtfs::Entry& entry = burst.rtfs[m][s];
      entry.vertical.resize(nb);
      entry.horizontal.resize(nb);
      for (int k = 0; k < nb; ++k)
        entry.vertical[k] =
            std::complex<double>(features(m, col + k), features(m, col + nb + k));
      col += 2 * nb;
      for (int k = 0; k < nb; ++k)
        entry.horizontal[k] =
            std::complex<double>(features(m, col + k), features(m, col + nb + k));
      col += 2 * nb;
    }
  }
  return burst;
}

SceneContext make_scene_context(const RoomSpec& room, const SamplingGrid& grid,
                                const BurstArrayGeometry& geometry,
                                const std::vector<SourceSpec>& sources) {
  room.validate();
  grid.validate(room);
  geometry.validate();
  if (sources.empty()) throw ConfigError("make_scene_context: no sources");

  SceneContext scene;
  scene.room = room;
  scene.grid = grid;
  scene.geometry = geometry;
  scene.sources = sources;
  scene.source_signals.reserve(sources.size());
  for (const SourceSpec& src : sources) {
    src.validate(room);
    const auto n = static_cast<std::size_t>(
        std::llround(src.signal_duration * room.sample_rate));
    scene.source_signals.push_back(white_noise(n, src.signal_seed));
  }
  return scene;
}

std::vector<std::vector<std::vector<double>>> simulate_burst_recordings(
    const SceneContext& scene, int burst_index) {
  const std::vector<Vec3> mics =
      burst_mic_positions(scene.grid, scene.geometry, scene.room, burst_index);

  std::vector<std::vector<std::vector<double>>> recordings(scene.sources.size());
  for (std::size_t s = 0; s < scene.sources.size(); ++s) {
    recordings[s].resize(mics.size());
    for (std::size_t m = 0; m < mics.size(); ++m) {
      const Rir rir =
          simulate_rir(scene.room, scene.sources[s].position, mics[m]);
      recordings[s][m] = render_mic_signal(rir, scene.source_signals[s]);
    }
  }
  return recordings;
}

BurstRtfs estimate_burst_rtfs(const SceneContext& scene,
                              const FeatureParams& params, int burst_index,
                              bool apply_bin_selection) {
  const auto recordings = simulate_burst_recordings(scene, burst_index);
  const int num_crosses = scene.geometry.num_crosses();
  const int num_sources = static_cast<int>(scene.sources.size());
  const double fs = scene.room.sample_rate;

  BurstRtfs burst;
  burst.rtfs.assign(num_crosses, std::vector<BurstRtfs::Entry>(num_sources));
  for (int m = 0; m < num_crosses; ++m) {
    // burst_mic_positions ordering per cross: [v-, v+, h-, h+]; the minus
    // microphone of each pair is the RTF reference channel.
    const int base = 4 * m;
    for (int s = 0; s < num_sources; ++s) {
      const auto& rec = recordings[s];
      const Spectrum vertical =
          estimate_rtf(rec[base + 0], rec[base + 1], params.n_fft,
                       params.overlap_fraction, fs);
      const Spectrum horizontal =
          estimate_rtf(rec[base + 2], rec[base + 3], params.n_fft,
                       params.overlap_fraction, fs);
      BurstRtfs::Entry& entry = burst.rtfs[m][s];
      if (apply_bin_selection) {
        entry.vertical = select_bins(vertical, params.bin_lo, params.bin_hi);
        entry.horizontal = select_bins(horizontal, params.bin_lo, params.bin_hi);
      } else {
        entry.vertical = vertical.bins;
        entry.horizontal = horizontal.bins;
      }
    }
  }
  return burst;
}

Eigen::MatrixXd extract_burst_features(const SceneContext& scene,
                                       const FeatureParams& params,
                                       int burst_index) {
  return assemble_burst_feature(
      estimate_burst_rtfs(scene, params, burst_index));
}

void BurstDataset::validate() const {
  if (num_bursts <= 0 || samples_per_burst <= 0)
    throw ArgumentError("BurstDataset: empty dataset");
  if (features.rows() !=
      static_cast<Eigen::Index>(num_bursts) * samples_per_burst)
    throw ArgumentError("BurstDataset: feature rows inconsistent with shape");
  if (burst_centers.rows() != num_bursts || burst_centers.cols() != 2)
    throw ArgumentError("BurstDataset: burst_centers shape mismatch");
  if (!features.allFinite() || !burst_centers.allFinite())
    throw NumericError("BurstDataset: non-finite entries");
}

BurstDataset build_burst_dataset(const SceneContext& scene,
                                 const FeatureParams& params) {
  const int num_bursts = scene.grid.num_bursts();
  const int samples_per_burst = scene.geometry.num_crosses();
  const int dim = params.feature_dim(static_cast<int>(scene.sources.size()));

  BurstDataset dataset;
  dataset.num_bursts = num_bursts;
  dataset.samples_per_burst = samples_per_burst;
  dataset.features.resize(
      static_cast<Eigen::Index>(num_bursts) * samples_per_burst, dim);
  dataset.burst_centers.resize(num_bursts, 2);

  parallel_for(static_cast<std::size_t>(num_bursts), [&](std::size_t i) {
    const int burst = static_cast<int>(i);
    const Eigen::MatrixXd block =
        extract_burst_features(scene, params, burst);
    dataset.features.middleRows(
        static_cast<Eigen::Index>(burst) * samples_per_burst,
        samples_per_burst) = block;
    const Vec2 center = scene.grid.burst_center(burst);
    dataset.burst_centers(burst, 0) = center[0];
    dataset.burst_centers(burst, 1) = center[1];
  });

  dataset.validate();
  return dataset;
}

}  // namespace scenemap
