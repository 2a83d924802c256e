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

#ifndef SCENEMAP_PIPELINE_HPP_
#define SCENEMAP_PIPELINE_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "scenemap/config.hpp"
#include "scenemap/container.hpp"
#include "scenemap/loca.hpp"

namespace scenemap {
namespace pipeline {

enum class Stage { kSimulate, kFeatures, kTrain, kBaselines, kEvaluate, kReport };

Stage stage_from_name(const std::string& name);
std::string stage_name(Stage stage);

// Runs one stage against the artifacts in out_dir. Stages check their
// upstream artifacts (missing -> DependencyError; produced by a different
// config -> StaleArtifactError) and write deterministically: re-running with
// identical config and inputs reproduces byte-identical outputs.
void run_stage(Stage stage, const ExperimentConfig& config,
               const std::filesystem::path& out_dir);

// All six stages in dependency order.
void run_all(const ExperimentConfig& config,
             const std::filesystem::path& out_dir);

enum class FigureKind {
  kFeatureMatrix,
  kEmbeddingScatter,
  kBinProfile,
  kLossCurves,
};

FigureKind figure_kind_from_name(const std::string& name);

// Plottable CSV exports (column schemas documented in the README).
void emit_figure_data(FigureKind kind, const ExperimentConfig& config,
                      const std::filesystem::path& out_dir);

// Artifact locations inside out_dir.
std::filesystem::path burst_centers_path(const std::filesystem::path& out);
std::filesystem::path mic_positions_path(const std::filesystem::path& out);
std::filesystem::path features_path(const std::filesystem::path& out,
                                    const std::string& tag);
std::filesystem::path model_path(const std::filesystem::path& out,
                                 const std::string& tag);
std::filesystem::path train_report_path(const std::filesystem::path& out,
                                        const std::string& tag);
std::filesystem::path embedding_path(const std::filesystem::path& out,
                                     const std::string& method,
                                     const std::string& tag);
std::filesystem::path eval_report_path(const std::filesystem::path& out);

// Model <-> container round trip (flat parameter payload plus a layer-shape
// manifest in the container metadata).
TensorContainer serialize_model(const loca::EmbeddingModel& model,
                                const std::string& config_hash,
                                const std::map<std::string, std::string>& meta);
loca::EmbeddingModel deserialize_model(const TensorContainer& container);

// Loads the features artifact of one RT60 back into a dataset.
BurstDataset load_dataset(const ExperimentConfig& config,
                          const std::filesystem::path& out_dir,
                          const std::string& tag);

}  // namespace pipeline
}  // namespace scenemap

#endif  // SCENEMAP_PIPELINE_HPP_
