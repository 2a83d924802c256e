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

#include "scenemap/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "scenemap/baselines.hpp"
#include "scenemap/errors.hpp"
#include "scenemap/eval.hpp"

namespace scenemap {
namespace pipeline {

namespace {

std::string fmt(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
}

// Loads an artifact and verifies it was produced by this configuration.
TensorContainer load_checked(const std::filesystem::path& path,
                             const ExperimentConfig& config,
                             const std::string& producing_stage) {
  if (!std::filesystem::exists(path))
    throw DependencyError("missing artifact " + path.string() +
                          "; run stage '" + producing_stage + "' first");
  TensorContainer t = TensorContainer::load(path);
  if (t.config_hash != config.config_hash)
    throw StaleArtifactError("artifact " + path.string() +
                             " was produced by config " + t.config_hash +
                             ", current config is " + config.config_hash +
                             "; re-run stage '" + producing_stage + "'");
  return t;
}

std::vector<int> anchors_for(const ExperimentConfig& config) {
  if (!config.anchor_indices.empty()) return config.anchor_indices;
  return baselines::corner_anchor_indices(config.grid);
}

const std::vector<std::string> kBaselineMethods = {"pca", "mmds", "dm", "adm"};

}  // namespace

Stage stage_from_name(const std::string& name) {
  if (name == "simulate") return Stage::kSimulate;
  if (name == "features") return Stage::kFeatures;
  if (name == "train") return Stage::kTrain;
  if (name == "baselines") return Stage::kBaselines;
  if (name == "evaluate") return Stage::kEvaluate;
  if (name == "report") return Stage::kReport;
  throw ArgumentError("unknown stage '" + name + "'");
}

std::string stage_name(Stage stage) {
  switch (stage) {
    case Stage::kSimulate: return "simulate";
    case Stage::kFeatures: return "features";
    case Stage::kTrain: return "train";
    case Stage::kBaselines: return "baselines";
    case Stage::kEvaluate: return "evaluate";
    case Stage::kReport: return "report";
  }
  return "unknown";
}

std::filesystem::path burst_centers_path(const std::filesystem::path& out) {
  return out / "burst_centers.tensor";
}
std::filesystem::path mic_positions_path(const std::filesystem::path& out) {
  return out / "mic_positions.tensor";
}
std::filesystem::path features_path(const std::filesystem::path& out,
                                    const std::string& tag) {
  return out / ("features_" + tag + ".tensor");
}
std::filesystem::path model_path(const std::filesystem::path& out,
                                 const std::string& tag) {
  return out / ("model_" + tag + ".tensor");
}
std::filesystem::path train_report_path(const std::filesystem::path& out,
                                        const std::string& tag) {
  return out / ("train_report_" + tag + ".csv");
}
std::filesystem::path embedding_path(const std::filesystem::path& out,
                                     const std::string& method,
                                     const std::string& tag) {
  return out / ("embedding_" + method + "_" + tag + ".tensor");
}
std::filesystem::path eval_report_path(const std::filesystem::path& out) {
  return out / "eval_report.csv";
}

namespace {

void run_simulate(const ExperimentConfig& config,
                  const std::filesystem::path& out) {
  const RoomSpec probe_room = config.room_for(config.rt60_list.front());
  const Eigen::Index n = config.grid.num_bursts();
  const int mics_per_burst = config.geometry.mics_per_burst();

  Eigen::MatrixXd centers(n, 2);
  Eigen::MatrixXd mics(n * mics_per_burst, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec2 c = config.grid.burst_center(static_cast<int>(i));
    centers(i, 0) = c[0];
    centers(i, 1) = c[1];
    const std::vector<Vec3> positions = burst_mic_positions(
        config.grid, config.geometry, probe_room, static_cast<int>(i));
    for (int m = 0; m < mics_per_burst; ++m)
      for (int k = 0; k < 3; ++k) mics(i * mics_per_burst + m, k) = positions[m][k];
  }

  TensorContainer::from_matrix(centers, "burst_centers", "simulate",
                               config.config_hash)
      .save(burst_centers_path(out));
  TensorContainer::from_matrix(mics, "mic_positions", "simulate",
                               config.config_hash)
      .save(mic_positions_path(out));

  // Probe RIR per RT60: validates achievability and measures the decay the
  // simulator actually produces.
  std::ostringstream csv;
  csv << "rt60_tag,configured_s,measured_s,sabine_absorption\n";
  for (double rt60 : config.rt60_list) {
    const RoomSpec room = config.room_for(rt60);
    const std::vector<Vec3> positions =
        burst_mic_positions(config.grid, config.geometry, room, 0);
    const Rir rir = simulate_rir(room, config.sources.front().position,
                                 positions.front());
    csv << config.rt60_tag(rt60) << "," << fmt(rt60) << ","
        << fmt(measure_rt60(rir)) << "," << fmt(rt60_to_absorption(room))
        << "\n";
  }
  write_text_file(out / "rt60_check.csv", csv.str());

  if (config.persist_recordings_burst >= 0) {
    for (double rt60 : config.rt60_list) {
      const SceneContext scene =
          make_scene_context(config.room_for(rt60), config.grid,
                             config.geometry, config.sources);
      const auto recordings =
          simulate_burst_recordings(scene, config.persist_recordings_burst);
      const Eigen::Index num_signals =
          static_cast<Eigen::Index>(recordings.size()) * mics_per_burst;
      const Eigen::Index len =
          static_cast<Eigen::Index>(recordings[0][0].size());
      Eigen::MatrixXd stacked(num_signals, len);
      for (std::size_t s = 0; s < recordings.size(); ++s)
        for (int m = 0; m < mics_per_burst; ++m)
          stacked.row(static_cast<Eigen::Index>(s) * mics_per_burst + m) =
              Eigen::Map<const Eigen::VectorXd>(recordings[s][m].data(), len);
      TensorContainer t = TensorContainer::from_matrix(
          stacked, "recordings", "simulate", config.config_hash);
      t.meta["burst_index"] = std::to_string(config.persist_recordings_burst);
      t.meta["layout"] = "source-major, mics in burst_mic_positions order";
      t.save(out / ("recordings_burst" +
                    std::to_string(config.persist_recordings_burst) + "_" +
                    config.rt60_tag(rt60) + ".tensor"));
    }
  }
}

void run_features(const ExperimentConfig& config,
                  const std::filesystem::path& out) {
  load_checked(burst_centers_path(out), config, "simulate");
  load_checked(mic_positions_path(out), config, "simulate");

  for (double rt60 : config.rt60_list) {
    const SceneContext scene = make_scene_context(
        config.room_for(rt60), config.grid, config.geometry, config.sources);
    const BurstDataset dataset = build_burst_dataset(scene, config.features);

    TensorContainer t = TensorContainer::from_matrix(
        dataset.features, "features", "features", config.config_hash);
    t.meta["num_bursts"] = std::to_string(dataset.num_bursts);
    t.meta["samples_per_burst"] = std::to_string(dataset.samples_per_burst);
    t.meta["rt60_tag"] = config.rt60_tag(rt60);
    t.save(features_path(out, config.rt60_tag(rt60)));
  }
}

void write_train_report_csv(const std::filesystem::path& path,
                            const loca::TrainReport& report) {
  std::ostringstream csv;
  csv << "epoch,train_white,train_recon,train_total,"
         "val_white,val_recon,val_total\n";
  for (std::size_t e = 0; e < report.epochs.size(); ++e) {
    const auto& s = report.epochs[e];
    csv << e << "," << fmt(s.train_white) << "," << fmt(s.train_recon) << ","
        << fmt(s.train_total) << "," << fmt(s.val_white) << ","
        << fmt(s.val_recon) << "," << fmt(s.val_total) << "\n";
  }
  write_text_file(path, csv.str());
}

void run_train(const ExperimentConfig& config,
               const std::filesystem::path& out) {
  for (double rt60 : config.rt60_list) {
    const std::string tag = config.rt60_tag(rt60);
    const BurstDataset dataset = load_dataset(config, out, tag);

    auto [model, report] = loca::train(dataset, config.train);

    std::map<std::string, std::string> meta;
    meta["sigma"] = fmt(config.train.sigma);
    meta["best_epoch"] = std::to_string(report.best_epoch);
    meta["best_val_total"] = fmt(report.best_val_total);
    meta["rt60_tag"] = tag;
    TensorContainer t = serialize_model(model, config.config_hash, meta);
    t.save(model_path(out, tag));
    write_train_report_csv(train_report_path(out, tag), report);
  }
}

void run_baselines(const ExperimentConfig& config,
                   const std::filesystem::path& out) {
  const TensorContainer centers_t =
      load_checked(burst_centers_path(out), config, "simulate");
  const Eigen::MatrixXd centers = centers_t.to_matrix();

  baselines::BaselineOptions options;
  options.fit_on_flattened = config.fit_on_flattened;

  for (double rt60 : config.rt60_list) {
    const std::string tag = config.rt60_tag(rt60);
    const BurstDataset dataset = load_dataset(config, out, tag);

    for (const std::string& name : kBaselineMethods) {
      baselines::Method method;
      if (name == "pca") method = baselines::Method::kPca;
      else if (name == "mmds") method = baselines::Method::kMmds;
      else if (name == "dm") method = baselines::Method::kDm;
      else method = baselines::Method::kAdm;

      baselines::KernelSpec kernel;
      if (method == baselines::Method::kDm ||
          method == baselines::Method::kAdm) {
        const std::vector<double> grid =
            config.epsilon_grid.empty()
                ? baselines::default_epsilon_grid(method, dataset, options)
                : config.epsilon_grid;
        const std::vector<int> anchor_ids = anchors_for(config);
        Eigen::MatrixXd anchor_pos(anchor_ids.size(), 2);
        for (std::size_t a = 0; a < anchor_ids.size(); ++a)
          anchor_pos.row(static_cast<Eigen::Index>(a)) =
              centers.row(anchor_ids[a]);
        std::vector<baselines::EpsilonTrace> trace;
        kernel = baselines::tune_epsilon(method, dataset, anchor_ids,
                                         anchor_pos, grid, options, &trace);
        std::ostringstream csv;
        csv << "epsilon,anchor_mae_cm,valid,note\n";
        for (const auto& row : trace)
          csv << fmt(row.epsilon) << ","
              << (row.valid ? fmt(row.anchor_mae_cm) : "") << ","
              << (row.valid ? 1 : 0) << "," << row.note << "\n";
        write_text_file(out / ("epsilon_search_" + name + "_" + tag + ".csv"),
                        csv.str());
      }

      const baselines::Embedding2D emb =
          baselines::run_baseline(method, dataset, 2, kernel, options);
      TensorContainer t = TensorContainer::from_matrix(
          emb.coordinates, "embedding_" + name, "baselines", config.config_hash);
      t.meta["method"] = name;
      t.meta["rt60_tag"] = tag;
      for (const auto& [k, v] : emb.hyperparameters) t.meta[k] = fmt(v);
      if (!emb.warnings.empty()) {
        std::string joined;
        for (const auto& w : emb.warnings) {
          if (!joined.empty()) joined += " | ";
          joined += w;
        }
        t.meta["warnings"] = joined;
      }
      t.save(embedding_path(out, name, tag));
    }
  }
}

void run_evaluate(const ExperimentConfig& config,
                  const std::filesystem::path& out) {
  const Eigen::MatrixXd centers =
      load_checked(burst_centers_path(out), config, "simulate").to_matrix();

  std::ostringstream csv;
  csv << "method,rt60_tag,mae_cm,pearson_x,pearson_y,n_points\n";
  for (double rt60 : config.rt60_list) {
    const std::string tag = config.rt60_tag(rt60);
    const BurstDataset dataset = load_dataset(config, out, tag);
    const loca::EmbeddingModel model =
        deserialize_model(load_checked(model_path(out, tag), config, "train"));

    const Eigen::MatrixXd sample_embedding =
        loca::embed_out_of_sample(model, dataset.features);
    const Eigen::MatrixXd loca_embedding =
        baselines::average_per_burst(sample_embedding, dataset.samples_per_burst);
    TensorContainer loca_t = TensorContainer::from_matrix(
        loca_embedding, "embedding_loca", "evaluate", config.config_hash);
    loca_t.meta["rt60_tag"] = tag;
    loca_t.save(embedding_path(out, "loca", tag));

    std::map<std::string, Eigen::MatrixXd> embeddings;
    embeddings["loca"] = loca_embedding;
    for (const std::string& name : kBaselineMethods)
      embeddings[name] =
          load_checked(embedding_path(out, name, tag), config, "baselines")
              .to_matrix();

    const std::vector<eval::EvalRow> rows = eval::comparison_report(
        embeddings, centers, tag, config.eval_with_scaling);
    for (const auto& row : rows)
      csv << row.method << "," << row.rt60_tag << "," << fmt(row.mae_cm) << ","
          << fmt(row.per_axis_pearson(0)) << "," << fmt(row.per_axis_pearson(1))
          << "," << row.n_points << "\n";
  }
  write_text_file(eval_report_path(out), csv.str());
}

struct EvalCsvRow {
  std::string method, tag;
  double mae_cm = 0.0, pearson_x = 0.0, pearson_y = 0.0;
};

std::vector<EvalCsvRow> read_eval_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw DependencyError("missing artifact " + path.string() +
                          "; run stage 'evaluate' first");
  std::vector<EvalCsvRow> rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream cells(line);
    EvalCsvRow row;
    std::string cell;
    std::getline(cells, row.method, ',');
    std::getline(cells, row.tag, ',');
    std::getline(cells, cell, ',');
    row.mae_cm = std::stod(cell);
    std::getline(cells, cell, ',');
    row.pearson_x = std::stod(cell);
    std::getline(cells, cell, ',');
    row.pearson_y = std::stod(cell);
    rows.push_back(row);
  }
  return rows;
}

void run_report(const ExperimentConfig& config,
                const std::filesystem::path& out) {
  const std::vector<EvalCsvRow> rows = read_eval_report(eval_report_path(out));

  std::vector<std::string> tags;
  for (double rt60 : config.rt60_list) tags.push_back(config.rt60_tag(rt60));
  const std::vector<std::string> methods = {"pca", "mmds", "dm", "adm", "loca"};

  std::map<std::pair<std::string, std::string>, double> mae;
  for (const auto& row : rows) mae[{row.method, row.tag}] = row.mae_cm;

  std::ostringstream csv, txt;
  csv << "method";
  for (const auto& tag : tags) csv << ",mae_cm_" << tag;
  csv << "\n";
  txt << "MAE (cm) per method and RT60\n";
  txt << std::left << std::setw(8) << "method";
  for (const auto& tag : tags) txt << std::right << std::setw(12) << tag;
  txt << "\n";
  for (const auto& method : methods) {
    csv << method;
    txt << std::left << std::setw(8) << method;
    for (const auto& tag : tags) {
      const auto it = mae.find({method, tag});
      if (it == mae.end())
        throw DependencyError("eval report lacks method '" + method +
                              "' at " + tag + "; re-run stage 'evaluate'");
      csv << "," << fmt(it->second);
      txt << std::right << std::setw(12) << std::fixed << std::setprecision(1)
          << it->second;
      txt.unsetf(std::ios::fixed);
    }
    csv << "\n";
    txt << "\n";
  }
  write_text_file(out / "report_table.csv", csv.str());
  write_text_file(out / "report_table.txt", txt.str());
}

}  // namespace

void run_stage(Stage stage, const ExperimentConfig& config,
               const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  switch (stage) {
    case Stage::kSimulate: run_simulate(config, out_dir); return;
    case Stage::kFeatures: run_features(config, out_dir); return;
    case Stage::kTrain: run_train(config, out_dir); return;
    case Stage::kBaselines: run_baselines(config, out_dir); return;
    case Stage::kEvaluate: run_evaluate(config, out_dir); return;
    case Stage::kReport: run_report(config, out_dir); return;
  }
}

void run_all(const ExperimentConfig& config,
             const std::filesystem::path& out_dir) {
  for (Stage stage : {Stage::kSimulate, Stage::kFeatures, Stage::kTrain,
                      Stage::kBaselines, Stage::kEvaluate, Stage::kReport})
    run_stage(stage, config, out_dir);
}

TensorContainer serialize_model(const loca::EmbeddingModel& model,
                                const std::string& config_hash,
                                const std::map<std::string, std::string>& meta) {
  TensorContainer t;
  t.tag = "model";
  t.stage = "train";
  t.config_hash = config_hash;
  t.meta = meta;

  auto dims_of = [](const loca::Mlp& net) {
    std::ostringstream dims;
    dims << net.layers.front().weights.rows();
    for (const auto& layer : net.layers) dims << " " << layer.weights.cols();
    return dims.str();
  };
  t.meta["encoder_dims"] = dims_of(model.encoder);
  t.meta["decoder_dims"] = dims_of(model.decoder);

  for (const loca::Mlp* net : {&model.encoder, &model.decoder}) {
    for (const auto& layer : net->layers) {
      for (Eigen::Index i = 0; i < layer.weights.rows(); ++i)
        for (Eigen::Index j = 0; j < layer.weights.cols(); ++j)
          t.payload.push_back(layer.weights(i, j));
      for (Eigen::Index j = 0; j < layer.bias.cols(); ++j)
        t.payload.push_back(layer.bias(j));
    }
  }
  t.shape = {t.payload.size()};
  return t;
}

loca::EmbeddingModel deserialize_model(const TensorContainer& container) {
  auto parse_dims = [&](const std::string& key) {
    const auto it = container.meta.find(key);
    if (it == container.meta.end())
      throw Error("model container lacks " + key);
    std::istringstream in(it->second);
    std::vector<int> dims;
    int v;
    while (in >> v) dims.push_back(v);
    if (dims.size() < 3) throw Error("model container: bad " + key);
    return dims;
  };
  const std::vector<int> enc = parse_dims("encoder_dims");
  const std::vector<int> dec = parse_dims("decoder_dims");

  const std::vector<int> enc_hidden(enc.begin() + 1, enc.end() - 1);
  const std::vector<int> dec_hidden(dec.begin() + 1, dec.end() - 1);
  loca::EmbeddingModel model = loca::init_model_custom(
      enc.front(), enc.back(), enc_hidden, dec_hidden, 0);

  std::size_t cursor = 0;
  auto fill = [&](loca::Mlp* net) {
    for (auto& layer : net->layers) {
      for (Eigen::Index i = 0; i < layer.weights.rows(); ++i)
        for (Eigen::Index j = 0; j < layer.weights.cols(); ++j)
          layer.weights(i, j) = container.payload.at(cursor++);
      for (Eigen::Index j = 0; j < layer.bias.cols(); ++j)
        layer.bias(j) = container.payload.at(cursor++);
    }
  };
  fill(&model.encoder);
  fill(&model.decoder);
  if (cursor != container.payload.size())
    throw Error("model container: payload size mismatch");
  return model;
}

BurstDataset load_dataset(const ExperimentConfig& config,
                          const std::filesystem::path& out_dir,
                          const std::string& tag) {
  const TensorContainer features_t =
      load_checked(features_path(out_dir, tag), config, "features");
  const TensorContainer centers_t =
      load_checked(burst_centers_path(out_dir), config, "simulate");

  BurstDataset dataset;
  dataset.features = features_t.to_matrix();
  dataset.burst_centers = centers_t.to_matrix();
  dataset.num_bursts = std::stoi(features_t.meta.at("num_bursts"));
  dataset.samples_per_burst = std::stoi(features_t.meta.at("samples_per_burst"));
  dataset.metadata = "config " + features_t.config_hash + " " +
                     features_t.meta.at("rt60_tag");
  dataset.validate();
  return dataset;
}

FigureKind figure_kind_from_name(const std::string& name) {
  if (name == "feature_matrix") return FigureKind::kFeatureMatrix;
  if (name == "embedding_scatter") return FigureKind::kEmbeddingScatter;
  if (name == "bin_profile") return FigureKind::kBinProfile;
  if (name == "loss_curves") return FigureKind::kLossCurves;
  throw ArgumentError("unknown figure kind '" + name + "'");
}

namespace {

// Vertical-pair, first-source RTF features of the leftmost grid line:
// rows are the 2*bins Re/Im feature dimensions, columns the M RTFs of each
// burst along the line, in line order.
void emit_feature_matrix(const ExperimentConfig& config,
                         const std::filesystem::path& out) {
  for (double rt60 : config.rt60_list) {
    const std::string tag = config.rt60_tag(rt60);
    const BurstDataset dataset = load_dataset(config, out, tag);

    const int bins = config.features.bins_per_rtf();
    const int p = config.grid.points_per_axis;
    const int m = dataset.samples_per_burst;

    Eigen::MatrixXd fig(2 * bins, p * m);
    for (int line_pos = 0; line_pos < p; ++line_pos) {
      const int burst = line_pos * p;  // leftmost column of the grid
      const auto block = dataset.burst_block(burst);
      for (int cross = 0; cross < m; ++cross)
        // Vertical source-1 Re block occupies the first bins columns,
        // Im the next bins.
        fig.col(line_pos * m + cross) =
            block.row(cross).segment(0, 2 * bins).transpose();
    }

    std::ostringstream csv;
    for (Eigen::Index r = 0; r < fig.rows(); ++r) {
      for (Eigen::Index c = 0; c < fig.cols(); ++c) {
        if (c) csv << ",";
        csv << fmt(fig(r, c));
      }
      csv << "\n";
    }
    write_text_file(out / ("figure_feature_matrix_" + tag + ".csv"), csv.str());
  }
}

void emit_embedding_scatter(const ExperimentConfig& config,
                            const std::filesystem::path& out) {
  const Eigen::MatrixXd centers =
      load_checked(burst_centers_path(out), config, "simulate").to_matrix();
  const std::vector<std::string> methods = {"loca", "pca", "mmds", "dm", "adm"};
  for (double rt60 : config.rt60_list) {
    const std::string tag = config.rt60_tag(rt60);
    for (const std::string& method : methods) {
      const std::filesystem::path path = embedding_path(out, method, tag);
      if (!std::filesystem::exists(path))
        throw DependencyError("missing artifact " + path.string() +
                              "; run stages 'baselines' and 'evaluate' first");
      const Eigen::MatrixXd coords = TensorContainer::load(path).to_matrix();
      auto [aligned, cal] =
          eval::procrustes_align(coords, centers, config.eval_with_scaling);
      std::ostringstream csv;
      csv << "x_est,y_est,x_true,y_true\n";
      for (Eigen::Index i = 0; i < aligned.rows(); ++i)
        csv << fmt(aligned(i, 0)) << "," << fmt(aligned(i, 1)) << ","
            << fmt(centers(i, 0)) << "," << fmt(centers(i, 1)) << "\n";
      write_text_file(
          out / ("figure_scatter_" + method + "_" + tag + ".csv"), csv.str());
    }
  }
}

// Fig-4-style diagnostic: per-bin distance between full-spectrum RTFs of the
// constellation center cross and each other cross, averaged, for the burst
// at the grid center.
void emit_bin_profile(const ExperimentConfig& config,
                      const std::filesystem::path& out) {
  for (double rt60 : config.rt60_list) {
    const std::string tag = config.rt60_tag(rt60);
    const SceneContext scene = make_scene_context(
        config.room_for(rt60), config.grid, config.geometry, config.sources);
    const int p = config.grid.points_per_axis;
    const int burst = (p / 2) * p + p / 2;

    const BurstRtfs rtfs = estimate_burst_rtfs(scene, config.features, burst,
                                               /*apply_bin_selection=*/false);
    const int m = static_cast<int>(rtfs.rtfs.size());
    const std::size_t bins = rtfs.rtfs[0][0].vertical.size();

    std::vector<double> mean_profile(bins, 0.0);
    for (int cross = 1; cross < m; ++cross) {
      Spectrum a, b;
      a.bins = rtfs.rtfs[0][0].vertical;
      b.bins = rtfs.rtfs[cross][0].vertical;
      const std::vector<double> profile = bin_distance_profile(a, b);
      for (std::size_t k = 0; k < bins; ++k) mean_profile[k] += profile[k];
    }
    for (double& v : mean_profile) v /= (m - 1);

    const double bin_hz = scene.room.sample_rate / config.features.n_fft;
    std::ostringstream csv;
    csv << "bin,frequency_hz,mean_abs_difference\n";
    for (std::size_t k = 0; k < bins; ++k)
      csv << k << "," << fmt(k * bin_hz) << "," << fmt(mean_profile[k]) << "\n";
    write_text_file(out / ("figure_bin_profile_" + tag + ".csv"), csv.str());
  }
}

void emit_loss_curves(const ExperimentConfig& config,
                      const std::filesystem::path& out) {
  for (double rt60 : config.rt60_list) {
    const std::string tag = config.rt60_tag(rt60);
    const std::filesystem::path src = train_report_path(out, tag);
    if (!std::filesystem::exists(src))
      throw DependencyError("missing artifact " + src.string() +
                            "; run stage 'train' first");
    std::ifstream in(src, std::ios::binary);
    std::ostringstream copy;
    copy << in.rdbuf();
    write_text_file(out / ("figure_loss_curves_" + tag + ".csv"), copy.str());
  }
}

}  // namespace

void emit_figure_data(FigureKind kind, const ExperimentConfig& config,
                      const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  switch (kind) {
    case FigureKind::kFeatureMatrix: emit_feature_matrix(config, out_dir); return;
    case FigureKind::kEmbeddingScatter:
      emit_embedding_scatter(config, out_dir);
      return;
    case FigureKind::kBinProfile: emit_bin_profile(config, out_dir); return;
    case FigureKind::kLossCurves: emit_loss_curves(config, out_dir); return;
  }
}

}  // namespace pipeline
}  // namespace scenemap
