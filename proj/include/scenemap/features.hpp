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

#ifndef SCENEMAP_FEATURES_HPP_
#define SCENEMAP_FEATURES_HPP_

#include <Eigen/Core>
#include <complex>
#include <string>
#include <vector>

#include "scenemap/geometry.hpp"
#include "scenemap/signal.hpp"

namespace scenemap {

// One-sided spectrum (or spectral ratio), n_fft/2 + 1 bins.
struct Spectrum {
  std::vector<std::complex<double>> bins;
  double bin_resolution = 0.0;  // Hz
};

enum class Window { kHamming, kHann, kRect };

// Welch-averaged one-sided cross power spectrum of x against y:
// mean over frames of conj(FFT(w*x_frame)) * FFT(w*y_frame), normalized by
// the window energy. With x == y this is the (real, non-negative) PSD.
Spectrum welch_cross_psd(const std::vector<double>& x,
                         const std::vector<double>& y, int n_fft,
                         double overlap_fraction, double sample_rate,
                         Window window = Window::kHamming);

// Relative transfer function of the secondary channel against the reference:
// cross-PSD(reference, secondary) / PSD(reference), per bin. Throws
// NumericError when the reference PSD falls below 1e-12 at any bin.
Spectrum estimate_rtf(const std::vector<double>& reference,
                      const std::vector<double>& secondary, int n_fft,
                      double overlap_fraction, double sample_rate);

// Contiguous inclusive bin slice [lo, hi].
std::vector<std::complex<double>> select_bins(const Spectrum& rtf, int lo,
                                              int hi);

// Per-bin modulus of the difference between two spectra of equal length.
std::vector<double> bin_distance_profile(const Spectrum& a, const Spectrum& b);

// Bin-selected RTFs of one burst: rtfs[m][s] holds the vertical and
// horizontal pair RTFs of cross m for source s.
struct BurstRtfs {
  struct Entry {
    std::vector<std::complex<double>> vertical;
    std::vector<std::complex<double>> horizontal;
  };
  std::vector<std::vector<Entry>> rtfs;  // [M][num_sources]
};

// Real-valued burst feature matrix [M x D] with the fixed per-cross layout
//   [Re(vert_s1) Im(vert_s1) Re(horiz_s1) Im(horiz_s1)
//    Re(vert_s2) Im(vert_s2) Re(horiz_s2) Im(horiz_s2)]
// (one Re/Im pair of blocks per orientation, repeated per source); with two
// sources and 95 bins this gives D = 760. The layout never depends on the
// burst, so column c means the same thing in every row of the dataset.
Eigen::MatrixXd assemble_burst_feature(const BurstRtfs& burst);

// Inverse of assemble_burst_feature (layout round-trip).
BurstRtfs disassemble_burst_feature(const Eigen::MatrixXd& features,
                                    int num_sources);

// Estimation parameters of the feature pipeline.
struct FeatureParams {
  int n_fft = 256;
  double overlap_fraction = 0.5;
  int bin_lo = 5;
  int bin_hi = 99;

  int bins_per_rtf() const { return bin_hi - bin_lo + 1; }
  int feature_dim(int num_sources) const {
    return bins_per_rtf() * 2 * 2 * num_sources;
  }
};

// Fully specified scene with materialized source excitation signals.
struct SceneContext {
  RoomSpec room;
  SamplingGrid grid;
  BurstArrayGeometry geometry;
  std::vector<SourceSpec> sources;
  std::vector<std::vector<double>> source_signals;  // one per source
};

SceneContext make_scene_context(const RoomSpec& room, const SamplingGrid& grid,
                                const BurstArrayGeometry& geometry,
                                const std::vector<SourceSpec>& sources);

// Reverberant recordings of one burst: recordings[s][m] is the signal of
// microphone m (ordering of burst_mic_positions) for source s.
std::vector<std::vector<std::vector<double>>> simulate_burst_recordings(
    const SceneContext& scene, int burst_index);

// Full-spectrum (unsliced) RTFs of one burst, ordered as BurstRtfs.
BurstRtfs estimate_burst_rtfs(const SceneContext& scene,
                              const FeatureParams& params, int burst_index,
                              bool apply_bin_selection = true);

// One burst of the data tensor: [M x D].
Eigen::MatrixXd extract_burst_features(const SceneContext& scene,
                                       const FeatureParams& params,
                                       int burst_index);

// The burst feature tensor [N, M, D], stored burst-major as an (N*M) x D
// matrix (row i*M + m is sample m of burst i), plus ground-truth centers.
struct BurstDataset {
  Eigen::MatrixXd features;       // (N*M) x D
  Eigen::MatrixXd burst_centers;  // N x 2, meters
  int num_bursts = 0;
  int samples_per_burst = 0;
  std::string metadata;

  int feature_dim() const { return static_cast<int>(features.cols()); }
  Eigen::Ref<const Eigen::MatrixXd> burst_block(int i) const {
    return features.middleRows(static_cast<Eigen::Index>(i) * samples_per_burst,
                               samples_per_burst);
  }
  void validate() const;  // shape consistency, finite entries
};

// Runs the full per-burst feature extraction over the sampling grid,
// parallel across bursts with deterministic output.
BurstDataset build_burst_dataset(const SceneContext& scene,
                                 const FeatureParams& params);

}  // namespace scenemap

#endif  // SCENEMAP_FEATURES_HPP_
