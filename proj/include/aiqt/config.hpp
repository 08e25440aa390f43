#pragma once

// Experiment configuration: a line-oriented `key = value` file with `#`
// comments. Parsing is strict: unknown or repeated keys and malformed values
// are errors. Keys are listed in README.md.

#include "aiqt/model.hpp"
#include "aiqt/train.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace aiqt {

struct ExperimentConfig {
  // dataset
  int n_qubits = 10;
  int total_samples = 900;
  std::uint64_t dataset_seed = 0;
  double train_fraction = 0.7;
  std::uint64_t split_seed = 0;
  // training
  std::string model = "all";  // qnn | qft-qnn | aiqt-qft | aiqt-te | all
  double learning_rate = 5e-3;
  int batch_size = 32;
  int epochs = 100;
  std::uint64_t seed = 0;  // first training seed
  int n_seeds = 10;
  int layers = 3;
  double theta_init = 6.283185307179586;
  double te_theta_init = 0.6283185307179586;
  double te_j_init = 1.0;
  double te_g_init = 1.0;
  int trotter_steps = 10;
  double phi_init_scale = 0.1;
  std::vector<int> target_qubits{0, 1};
  // sweeps
  int grid_resolution = 41;
  int line_resolution = 40;
  double line_gzz = 0.1;

  void validate() const;
  std::vector<ModelKind> models() const;
  TrainConfig train_config() const;
  /// Every key with its resolved value, parseable by parse_config.
  std::string to_text() const;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

}  // namespace aiqt
