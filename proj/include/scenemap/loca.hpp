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

#ifndef SCENEMAP_LOCA_HPP_
#define SCENEMAP_LOCA_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <utility>
#include <vector>

#include "scenemap/features.hpp"

namespace scenemap {
namespace loca {

inline constexpr double kLeakyReluSlope = 0.01;
inline constexpr int kHiddenWidth = 200;

enum class Activation { kLeakyRelu, kTanh, kLinear };

struct Layer {
  Eigen::MatrixXd weights;   // fan_in x fan_out
  Eigen::RowVectorXd bias;   // 1 x fan_out
  Activation activation = Activation::kLinear;
};

// Plain feed-forward stack; samples are rows.
struct Mlp {
  std::vector<Layer> layers;

  int input_dim() const { return static_cast<int>(layers.front().weights.rows()); }
  int output_dim() const { return static_cast<int>(layers.back().weights.cols()); }
  Eigen::MatrixXd forward(const Eigen::MatrixXd& input) const;
};

// Encoder rho and decoder gamma of the conformal autoencoder.
struct EmbeddingModel {
  Mlp encoder;
  Mlp decoder;
  int input_dim = 0;
  int latent_dim = 0;
};

// Standard architecture: encoder D -> 200 x5 (leaky-relu) -> d linear;
// decoder d -> 200 x4 (tanh) -> 200 linear -> D linear output. Weights are
// fan-in variance-scaled uniform, biases zero, deterministic per seed.
EmbeddingModel init_model(int input_dim, int latent_dim, std::uint64_t seed);

// Same activation pattern with caller-chosen hidden widths (gradient checks
// need networks small enough for exhaustive finite differences).
EmbeddingModel init_model_custom(int input_dim, int latent_dim,
                                 const std::vector<int>& encoder_hidden,
                                 const std::vector<int>& decoder_hidden,
                                 std::uint64_t seed);

Eigen::MatrixXd encode(const EmbeddingModel& model, const Eigen::MatrixXd& inputs);
Eigen::MatrixXd decode(const EmbeddingModel& model, const Eigen::MatrixXd& latents);
Eigen::VectorXd encode(const EmbeddingModel& model, const Eigen::VectorXd& input);
Eigen::VectorXd decode(const EmbeddingModel& model, const Eigen::VectorXd& latent);

// Mean over bursts of || C(rho(Y_i)) / sigma^2 - I ||_F^2, where C is the
// empirical covariance (M-1 normalization) of the M embedded samples of one
// burst. bursts is (B*M) x D, burst-major.
double whitening_loss(const EmbeddingModel& model, const Eigen::MatrixXd& bursts,
                      int samples_per_burst, double sigma);

// Mean squared reconstruction error over all B*M samples.
double reconstruction_loss(const EmbeddingModel& model,
                           const Eigen::MatrixXd& bursts);

struct TrainConfig {
  double sigma = 0.0;              // latent-space burst scale; must be > 0
  int latent_dim = 2;
  int batch_size = 2048;           // samples per mini-batch (bursts stay whole)
  double learning_rate = 1e-3;
  int max_epochs = 3000;
  double validation_fraction = 0.1;
  double w_white = 1.0;
  double w_recon = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct LayerGradients {
  Eigen::MatrixXd weights;
  Eigen::RowVectorXd bias;
};

struct ModelGradients {
  std::vector<LayerGradients> encoder;
  std::vector<LayerGradients> decoder;
};

struct LossValues {
  double white = 0.0;
  double recon = 0.0;
  double total = 0.0;
};

// Reverse-accumulation gradients of w_white * L_white + w_recon * L_recon
// with respect to every parameter, including the covariance path of the
// whitening term. Returns the loss values at the current parameters.
LossValues gradients(const EmbeddingModel& model, const Eigen::MatrixXd& bursts,
                     int samples_per_burst, const TrainConfig& config,
                     ModelGradients* out);

struct TrainReport {
  struct EpochStats {
    double train_white = 0.0, train_recon = 0.0, train_total = 0.0;
    double val_white = 0.0, val_recon = 0.0, val_total = 0.0;
  };
  std::vector<EpochStats> epochs;
  int best_epoch = -1;          // epoch whose checkpoint was returned
  double best_val_total = 0.0;
  std::vector<int> train_bursts;  // split actually used
  std::vector<int> validation_bursts;
};

// Burst-level split (bursts never straddle the train/validation boundary),
// Adam updates over shuffled mini-batches of bursts, checkpoint on the best
// validation total loss. Deterministic for a fixed config.
std::pair<EmbeddingModel, TrainReport> train(const BurstDataset& dataset,
                                             const TrainConfig& config);

// Encoder forward pass only; features must use the training layout.
Eigen::MatrixXd embed_out_of_sample(const EmbeddingModel& model,
                                    const Eigen::MatrixXd& features);

}  // namespace loca
}  // namespace scenemap

#endif  // SCENEMAP_LOCA_HPP_
