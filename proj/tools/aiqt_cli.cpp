// aiqt: dataset generation, training and phase-diagram sweeps.
//
//   aiqt gen-dataset --config exp.cfg --out data.json
//   aiqt train       --config exp.cfg --dataset data.json --out runs/
//   aiqt sweep-line  --config exp.cfg --model runs/aiqt-qft.json --out line.csv [--gzz 0.1]
//   aiqt sweep-grid  --config exp.cfg --model runs/aiqt-qft.json --out grid.csv

#include "aiqt/commands.hpp"
#include "aiqt/config.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"Adaptive interpolating quantum transform experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out;
  std::string dataset;
  std::string model;
  std::optional<std::uint64_t> seed;
  std::optional<int> resolution;
  std::optional<double> gzz;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key = value experiment config (defaults if omitted)");
    cmd->add_option("--out", out, "output path")->required();
    cmd->add_option("--seed", seed, "seed override (dataset seed or first training seed)");
  };

  auto* gen = app.add_subcommand("gen-dataset", "sample couplings, run ED, write dataset JSON");
  add_common(gen);

  auto* train = app.add_subcommand("train", "train the configured models, write metrics CSV");
  add_common(train);
  train->add_option("--dataset", dataset, "dataset JSON")->required()->check(CLI::ExistingFile);

  auto* line = app.add_subcommand("sweep-line", "class probabilities along a fixed-g_zz line");
  add_common(line);
  line->add_option("--model", model, "model JSON")->required()->check(CLI::ExistingFile);
  line->add_option("--resolution", resolution, "points on the line");
  line->add_option("--gzz", gzz, "fixed g_zz");

  auto* grid = app.add_subcommand("sweep-grid", "predicted phase on a triangular grid");
  add_common(grid);
  grid->add_option("--model", model, "model JSON")->required()->check(CLI::ExistingFile);
  grid->add_option("--resolution", resolution, "points per simplex edge");

  CLI11_PARSE(app, argc, argv);

  try {
    aiqt::ExperimentConfig config =
        config_path.empty() ? aiqt::ExperimentConfig{} : aiqt::load_config(config_path);
    if (seed) {
      if (gen->parsed()) {
        config.dataset_seed = *seed;
      } else {
        config.seed = *seed;
      }
    }
    if (resolution) {
      (grid->parsed() ? config.grid_resolution : config.line_resolution) = *resolution;
    }
    if (gzz) config.line_gzz = *gzz;
    config.validate();

    if (gen->parsed()) {
      aiqt::cmd_gen_dataset(config, out, std::cout);
    } else if (train->parsed()) {
      aiqt::cmd_train(config, dataset, out, std::cout);
    } else if (line->parsed()) {
      aiqt::cmd_sweep_line(config, model, out, std::cout);
    } else {
      aiqt::cmd_sweep_grid(config, model, out, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
