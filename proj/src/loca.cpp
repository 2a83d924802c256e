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

#include "scenemap/loca.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "scenemap/errors.hpp"
#include "scenemap/rng.hpp"

namespace scenemap {
namespace loca {

namespace {

Eigen::MatrixXd apply_activation(Activation act, const Eigen::MatrixXd& z) {
  switch (act) {
    case Activation::kLeakyRelu:
      return (z.array() > 0.0).select(z, kLeakyReluSlope * z);
    case Activation::kTanh:
      return z.array().tanh();
    case Activation::kLinear:
      return z;
  }
  return z;
}

// Derivative of the activation expressed through pre-activation z and
// activation value a (tanh' = 1 - a^2 avoids recomputing tanh).
Eigen::ArrayXXd activation_grad(Activation act, const Eigen::MatrixXd& z,
                                const Eigen::MatrixXd& a) {
  switch (act) {
    case Activation::kLeakyRelu:
      return (z.array() > 0.0).select(Eigen::ArrayXXd::Ones(z.rows(), z.cols()),
                                      Eigen::ArrayXXd::Constant(z.rows(), z.cols(),
                                                                kLeakyReluSlope));
    case Activation::kTanh:
      return 1.0 - a.array().square();
    case Activation::kLinear:
      return Eigen::ArrayXXd::Ones(z.rows(), z.cols());
  }
  return Eigen::ArrayXXd::Ones(z.rows(), z.cols());
}

struct ForwardCache {
  std::vector<Eigen::MatrixXd> activations;      // [0] = input, [L] = output
  std::vector<Eigen::MatrixXd> pre_activations;  // per layer
};

Eigen::MatrixXd forward_cached(const Mlp& net, const Eigen::MatrixXd& input,
                               ForwardCache* cache) {
  cache->activations.clear();
  cache->pre_activations.clear();
  cache->activations.push_back(input);
  Eigen::MatrixXd a = input;
  for (const Layer& layer : net.layers) {
    Eigen::MatrixXd z = (a * layer.weights).rowwise() + layer.bias;
    a = apply_activation(layer.activation, z);
    cache->pre_activations.push_back(std::move(z));
    cache->activations.push_back(a);
  }
  return a;
}

// Backpropagates d(output) through the stack; accumulates parameter
// gradients and returns d(input).
Eigen::MatrixXd backward(const Mlp& net, const ForwardCache& cache,
                         Eigen::MatrixXd d_output,
                         std::vector<LayerGradients>* grads) {
  grads->resize(net.layers.size());
  for (int l = static_cast<int>(net.layers.size()) - 1; l >= 0; --l) {
    const Layer& layer = net.layers[static_cast<std::size_t>(l)];
    const Eigen::MatrixXd& z = cache.pre_activations[static_cast<std::size_t>(l)];
    const Eigen::MatrixXd& a = cache.activations[static_cast<std::size_t>(l) + 1];
    const Eigen::MatrixXd& input = cache.activations[static_cast<std::size_t>(l)];

    Eigen::MatrixXd dz =
        (d_output.array() * activation_grad(layer.activation, z, a)).matrix();
    LayerGradients& g = (*grads)[static_cast<std::size_t>(l)];
    g.weights.noalias() = input.transpose() * dz;
    g.bias = dz.colwise().sum();
    d_output.noalias() = dz * layer.weights.transpose();
  }
  return d_output;
}

void check_burst_shape(const Eigen::MatrixXd& bursts, int samples_per_burst) {
  if (samples_per_burst < 2)
    throw NumericError("whitening loss needs bursts of at least 2 samples");
  if (bursts.rows() == 0 || bursts.rows() % samples_per_burst != 0)
    throw ArgumentError("burst tensor rows not a multiple of samples_per_burst");
}

struct WhiteningTerms {
  double loss = 0.0;
  Eigen::MatrixXd d_latent;  // same shape as the embedded batch
};

// Whitening loss over embedded bursts Z ((B*M) x d) and, optionally, its
// gradient with respect to Z. For burst i with centered embedding Zc and
// covariance C = Zc^T Zc / (M-1):
//   dL/dZ = (I - 11^T/M) * (2 Zc G / (M-1)),  G = (w/B) (2/sigma^2) (C/sigma^2 - I).
WhiteningTerms whitening_terms(const Eigen::MatrixXd& latent, int m,
                               double sigma, double weight, bool want_grad) {
  const Eigen::Index num_bursts = latent.rows() / m;
  const Eigen::Index d = latent.cols();
  const double sigma2 = sigma * sigma;

  WhiteningTerms out;
  if (want_grad) out.d_latent = Eigen::MatrixXd::Zero(latent.rows(), d);

  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(d, d);
  for (Eigen::Index i = 0; i < num_bursts; ++i) {
    const auto block = latent.middleRows(i * m, m);
    const Eigen::RowVectorXd mean = block.colwise().mean();
    const Eigen::MatrixXd centered = block.rowwise() - mean;
    const Eigen::MatrixXd cov =
        centered.transpose() * centered / static_cast<double>(m - 1);
    const Eigen::MatrixXd deviation = cov / sigma2 - identity;
    out.loss += deviation.squaredNorm();

    if (want_grad) {
      const Eigen::MatrixXd g = (weight / static_cast<double>(num_bursts)) *
                                (2.0 / sigma2) * deviation;
      Eigen::MatrixXd d_centered =
          2.0 * centered * g / static_cast<double>(m - 1);
      const Eigen::RowVectorXd col_mean = d_centered.colwise().mean();
      out.d_latent.middleRows(i * m, m) = d_centered.rowwise() - col_mean;
    }
  }
  out.loss /= static_cast<double>(num_bursts);
  return out;
}

std::vector<int> seeded_permutation(int n, Rng* rng) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  rng->shuffle(order);
  return order;
}

struct AdamState {
  std::vector<LayerGradients> m_enc, v_enc, m_dec, v_dec;
  long step = 0;

  static std::vector<LayerGradients> zeros_like(const Mlp& net) {
    std::vector<LayerGradients> zs(net.layers.size());
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
      zs[l].weights = Eigen::MatrixXd::Zero(net.layers[l].weights.rows(),
                                            net.layers[l].weights.cols());
      zs[l].bias = Eigen::RowVectorXd::Zero(net.layers[l].bias.cols());
    }
    return zs;
  }

  explicit AdamState(const EmbeddingModel& model)
      : m_enc(zeros_like(model.encoder)),
        v_enc(zeros_like(model.encoder)),
        m_dec(zeros_like(model.decoder)),
        v_dec(zeros_like(model.decoder)) {}
};

constexpr double kAdamBeta1 = 0.9;
constexpr double kAdamBeta2 = 0.999;
constexpr double kAdamEps = 1e-8;

template <typename ParamT, typename GradT>
void adam_update_tensor(ParamT& param, const GradT& grad, GradT& m, GradT& v,
                        double lr, double bias1, double bias2) {
  m = kAdamBeta1 * m + (1.0 - kAdamBeta1) * grad;
  v.array() = kAdamBeta2 * v.array() + (1.0 - kAdamBeta2) * grad.array().square();
  param.array() -=
      lr * (m.array() / bias1) / ((v.array() / bias2).sqrt() + kAdamEps);
}

void adam_step(Mlp* net, const std::vector<LayerGradients>& grads,
               std::vector<LayerGradients>* m, std::vector<LayerGradients>* v,
               double lr, double bias1, double bias2) {
  for (std::size_t l = 0; l < net->layers.size(); ++l) {
    adam_update_tensor(net->layers[l].weights, grads[l].weights,
                       (*m)[l].weights, (*v)[l].weights, lr, bias1, bias2);
    adam_update_tensor(net->layers[l].bias, grads[l].bias, (*m)[l].bias,
                       (*v)[l].bias, lr, bias1, bias2);
  }
}

}  // namespace

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& input) const {
  if (input.cols() != input_dim())
    throw ArgumentError("Mlp::forward: input has " +
                        std::to_string(input.cols()) + " columns, expected " +
                        std::to_string(input_dim()));
  Eigen::MatrixXd a = input;
  for (const Layer& layer : layers)
    a = apply_activation(layer.activation,
                         ((a * layer.weights).rowwise() + layer.bias));
  return a;
}

namespace {

Mlp build_mlp(const std::vector<int>& dims, const std::vector<Activation>& acts,
              Rng* rng) {
  Mlp net;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    Layer layer;
    const int fan_in = dims[l];
    const int fan_out = dims[l + 1];
    const double bound = std::sqrt(3.0 / fan_in);
    layer.weights.resize(fan_in, fan_out);
    for (int i = 0; i < fan_in; ++i)
      for (int j = 0; j < fan_out; ++j)
        layer.weights(i, j) = rng->uniform(-bound, bound);
    layer.bias = Eigen::RowVectorXd::Zero(fan_out);
    layer.activation = acts[l];
    net.layers.push_back(std::move(layer));
  }
  return net;
}

}  // namespace

EmbeddingModel init_model_custom(int input_dim, int latent_dim,
                                 const std::vector<int>& encoder_hidden,
                                 const std::vector<int>& decoder_hidden,
                                 std::uint64_t seed) {
  if (input_dim <= 0 || latent_dim <= 0)
    throw ArgumentError("init_model: dimensions must be positive");
  if (encoder_hidden.empty() || decoder_hidden.size() < 2)
    throw ArgumentError("init_model: encoder needs >= 1 hidden layer, "
                        "decoder >= 2");
  Rng rng(seed);

  std::vector<int> enc_dims{input_dim};
  enc_dims.insert(enc_dims.end(), encoder_hidden.begin(), encoder_hidden.end());
  enc_dims.push_back(latent_dim);
  std::vector<Activation> enc_acts(encoder_hidden.size(), Activation::kLeakyRelu);
  enc_acts.push_back(Activation::kLinear);  // latent layer

  std::vector<int> dec_dims{latent_dim};
  dec_dims.insert(dec_dims.end(), decoder_hidden.begin(), decoder_hidden.end());
  dec_dims.push_back(input_dim);
  // All hidden layers tanh except the last, which is linear, then a linear
  // reconstruction layer.
  std::vector<Activation> dec_acts(decoder_hidden.size() - 1, Activation::kTanh);
  dec_acts.push_back(Activation::kLinear);
  dec_acts.push_back(Activation::kLinear);

  EmbeddingModel model;
  model.input_dim = input_dim;
  model.latent_dim = latent_dim;
  model.encoder = build_mlp(enc_dims, enc_acts, &rng);
  model.decoder = build_mlp(dec_dims, dec_acts, &rng);
  return model;
}

EmbeddingModel init_model(int input_dim, int latent_dim, std::uint64_t seed) {
  const std::vector<int> enc(5, kHiddenWidth);
  const std::vector<int> dec(5, kHiddenWidth);
  return init_model_custom(input_dim, latent_dim, enc, dec, seed);
}

Eigen::MatrixXd encode(const EmbeddingModel& model, const Eigen::MatrixXd& inputs) {
  return model.encoder.forward(inputs);
}

Eigen::MatrixXd decode(const EmbeddingModel& model, const Eigen::MatrixXd& latents) {
  return model.decoder.forward(latents);
}

Eigen::VectorXd encode(const EmbeddingModel& model, const Eigen::VectorXd& input) {
  return encode(model, Eigen::MatrixXd(input.transpose())).row(0);
}

Eigen::VectorXd decode(const EmbeddingModel& model, const Eigen::VectorXd& latent) {
  return decode(model, Eigen::MatrixXd(latent.transpose())).row(0);
}

double whitening_loss(const EmbeddingModel& model, const Eigen::MatrixXd& bursts,
                      int samples_per_burst, double sigma) {
  check_burst_shape(bursts, samples_per_burst);
  if (!(sigma > 0.0)) throw ArgumentError("whitening_loss: sigma must be > 0");
  const Eigen::MatrixXd latent = encode(model, bursts);
  return whitening_terms(latent, samples_per_burst, sigma, 1.0, false).loss;
}

double reconstruction_loss(const EmbeddingModel& model,
                           const Eigen::MatrixXd& bursts) {
  const Eigen::MatrixXd reconstructed = decode(model, encode(model, bursts));
  return (reconstructed - bursts).squaredNorm() /
         static_cast<double>(bursts.rows());
}

void TrainConfig::validate() const {
  if (!(sigma > 0.0)) throw ConfigError("TrainConfig: sigma must be > 0");
  if (latent_dim < 1) throw ConfigError("TrainConfig: latent_dim must be >= 1");
  if (batch_size < 1) throw ConfigError("TrainConfig: batch_size must be >= 1");
  if (!(learning_rate > 0.0))
    throw ConfigError("TrainConfig: learning_rate must be > 0");
  if (max_epochs < 1) throw ConfigError("TrainConfig: max_epochs must be >= 1");
  if (!(validation_fraction > 0.0 && validation_fraction < 1.0))
    throw ConfigError("TrainConfig: validation_fraction must be in (0, 1)");
  if (w_white < 0.0 || w_recon < 0.0 || (w_white == 0.0 && w_recon == 0.0))
    throw ConfigError("TrainConfig: loss weights must be >= 0 and not both 0");
}

LossValues gradients(const EmbeddingModel& model, const Eigen::MatrixXd& bursts,
                     int samples_per_burst, const TrainConfig& config,
                     ModelGradients* out) {
  check_burst_shape(bursts, samples_per_burst);
  if (!(config.sigma > 0.0))
    throw ArgumentError("gradients: sigma must be > 0");

  const Eigen::Index num_samples = bursts.rows();

  ForwardCache enc_cache, dec_cache;
  const Eigen::MatrixXd latent = forward_cached(model.encoder, bursts, &enc_cache);
  const Eigen::MatrixXd reconstructed =
      forward_cached(model.decoder, latent, &dec_cache);

  const Eigen::MatrixXd residual = reconstructed - bursts;
  LossValues losses;
  losses.recon = residual.squaredNorm() / static_cast<double>(num_samples);

  const WhiteningTerms white = whitening_terms(
      latent, samples_per_burst, config.sigma, config.w_white, out != nullptr);
  losses.white = white.loss;
  losses.total = config.w_white * losses.white + config.w_recon * losses.recon;
  if (!std::isfinite(losses.total))
    throw NumericError("gradients: non-finite loss");
  if (out == nullptr) return losses;

  // Reconstruction path: through the decoder into the latent.
  const Eigen::MatrixXd d_reconstructed =
      (2.0 * config.w_recon / static_cast<double>(num_samples)) * residual;
  Eigen::MatrixXd d_latent =
      backward(model.decoder, dec_cache, d_reconstructed, &out->decoder);

  // Whitening path adds directly at the latent.
  if (config.w_white != 0.0) d_latent += white.d_latent;

  backward(model.encoder, enc_cache, std::move(d_latent), &out->encoder);
  return losses;
}

std::pair<EmbeddingModel, TrainReport> train(const BurstDataset& dataset,
                                             const TrainConfig& config) {
  dataset.validate();
  config.validate();
  const int num_bursts = dataset.num_bursts;
  const int m = dataset.samples_per_burst;
  const int dim = dataset.feature_dim();

  int num_val = static_cast<int>(
      std::lround(config.validation_fraction * num_bursts));
  num_val = std::max(1, std::min(num_val, num_bursts - 1));
  const int num_train = num_bursts - num_val;

  TrainReport report;
  {
    Rng split_rng(config.seed + 1);
    std::vector<int> order = seeded_permutation(num_bursts, &split_rng);
    report.train_bursts.assign(order.begin(), order.begin() + num_train);
    report.validation_bursts.assign(order.begin() + num_train, order.end());
  }

  auto gather = [&](const std::vector<int>& bursts_idx) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(bursts_idx.size()) * m, dim);
    for (std::size_t i = 0; i < bursts_idx.size(); ++i)
      out.middleRows(static_cast<Eigen::Index>(i) * m, m) =
          dataset.burst_block(bursts_idx[i]);
    return out;
  };
  const Eigen::MatrixXd val_data = gather(report.validation_bursts);

  EmbeddingModel model = init_model(dim, config.latent_dim, config.seed);

  AdamState adam(model);
  const int bursts_per_batch = std::max(1, config.batch_size / m);

  EmbeddingModel best_model = model;
  report.best_val_total = std::numeric_limits<double>::infinity();

  Rng epoch_rng(config.seed + 2);
  std::vector<int> train_order = report.train_bursts;
  std::vector<int> batch_ids;
  ModelGradients grads;

  for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
    epoch_rng.shuffle(train_order);

    double epoch_white = 0.0, epoch_recon = 0.0;
    int batches = 0;
    for (int start = 0; start < num_train; start += bursts_per_batch) {
      const int count = std::min(bursts_per_batch, num_train - start);
      batch_ids.assign(train_order.begin() + start,
                       train_order.begin() + start + count);
      const Eigen::MatrixXd batch = gather(batch_ids);

      LossValues losses;
      try {
        losses = gradients(model, batch, m, config, &grads);
      } catch (const NumericError&) {
        throw NumericError("train: diverged at epoch " + std::to_string(epoch));
      }
      adam.step += 1;
      const double bias1 = 1.0 - std::pow(kAdamBeta1, adam.step);
      const double bias2 = 1.0 - std::pow(kAdamBeta2, adam.step);
      adam_step(&model.encoder, grads.encoder, &adam.m_enc, &adam.v_enc,
                config.learning_rate, bias1, bias2);
      adam_step(&model.decoder, grads.decoder, &adam.m_dec, &adam.v_dec,
                config.learning_rate, bias1, bias2);

      epoch_white += losses.white * count;
      epoch_recon += losses.recon * count;
      batches += count;
    }

    TrainReport::EpochStats stats;
    stats.train_white = epoch_white / batches;
    stats.train_recon = epoch_recon / batches;
    stats.train_total =
        config.w_white * stats.train_white + config.w_recon * stats.train_recon;
    stats.val_white = whitening_loss(model, val_data, m, config.sigma);
    stats.val_recon = reconstruction_loss(model, val_data);
    stats.val_total =
        config.w_white * stats.val_white + config.w_recon * stats.val_recon;
    if (!std::isfinite(stats.val_total))
      throw NumericError("train: diverged at epoch " + std::to_string(epoch));
    report.epochs.push_back(stats);

    if (stats.val_total < report.best_val_total) {
      report.best_val_total = stats.val_total;
      report.best_epoch = epoch;
      best_model = model;
    }
  }

  return {std::move(best_model), std::move(report)};
}

Eigen::MatrixXd embed_out_of_sample(const EmbeddingModel& model,
                                    const Eigen::MatrixXd& features) {
  if (features.rows() == 0)
    return Eigen::MatrixXd(0, model.latent_dim);
  if (features.cols() != model.input_dim)
    throw ArgumentError("embed_out_of_sample: feature layout mismatch");
  return encode(model, features);
}

}  // namespace loca
}  // namespace scenemap
