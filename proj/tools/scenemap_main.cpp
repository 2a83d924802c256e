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

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "scenemap/errors.hpp"
#include "scenemap/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDependency = 3;
constexpr int kExitNumerical = 4;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<long long> seed_override;
  std::optional<double> rt60_override;
};

void add_common(CLI::App* cmd, CommonArgs* args) {
  cmd->add_option("--config", args->config_path, "experiment config file")
      ->required();
  cmd->add_option("--out", args->out_dir, "artifact directory");
  cmd->add_option("--seed-override", [args](const CLI::results_t& r) {
        args->seed_override = std::stoll(r[0]);
        return true;
      },
      "replace the training and source seeds");
  cmd->add_option("--rt60-override", [args](const CLI::results_t& r) {
        args->rt60_override = std::stod(r[0]);
        return true;
      },
      "replace the RT60 list with a single value (seconds)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unsupervised acoustic scene mapping pipeline"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string figure_kind = "embedding_scatter";

  const std::vector<std::string> stage_names = {
      "simulate", "features", "train", "baselines", "evaluate", "report"};
  std::vector<CLI::App*> stage_cmds;
  for (const std::string& name : stage_names) {
    CLI::App* cmd = app.add_subcommand(name, "run the " + name + " stage");
    add_common(cmd, &args);
    stage_cmds.push_back(cmd);
  }
  CLI::App* all_cmd = app.add_subcommand("all", "run every stage in order");
  add_common(all_cmd, &args);
  CLI::App* figures_cmd =
      app.add_subcommand("figures", "emit plottable CSV figure data");
  add_common(figures_cmd, &args);
  figures_cmd
      ->add_option("--kind", figure_kind,
                   "feature_matrix | embedding_scatter | bin_profile | "
                   "loss_curves")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const scenemap::ExperimentConfig config = scenemap::ExperimentConfig::load(
        args.config_path, args.seed_override, args.rt60_override);

    if (all_cmd->parsed()) {
      scenemap::pipeline::run_all(config, args.out_dir);
    } else if (figures_cmd->parsed()) {
      scenemap::pipeline::emit_figure_data(
          scenemap::pipeline::figure_kind_from_name(figure_kind), config,
          args.out_dir);
    } else {
      for (std::size_t i = 0; i < stage_cmds.size(); ++i) {
        if (stage_cmds[i]->parsed()) {
          scenemap::pipeline::run_stage(
              scenemap::pipeline::stage_from_name(stage_names[i]), config,
              args.out_dir);
          break;
        }
      }
    }
    return kExitOk;
  } catch (const scenemap::DependencyError& e) {
    std::cerr << "dependency error: " << e.what() << "\n";
    return kExitDependency;
  } catch (const scenemap::NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const scenemap::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const scenemap::ArgumentError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const scenemap::GeometryError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
