#pragma once

// Mini-batch Adam training of AIQT-QNN models and the baseline comparison.

#include "aiqt/diff.hpp"
#include "aiqt/model.hpp"
#include "aiqt/spinchain.hpp"

#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace aiqt {

struct TrainConfig {
  double learning_rate = 5e-3;
  int batch_size = 32;
  int epochs = 100;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  int layers = 3;
  ModelKind model = ModelKind::AiqtQft;
  double theta_init = 2 * std::numbers::pi;
  TfimTimeEvolution te_init{2 * std::numbers::pi * 0.1, 1.0, 1.0, 10};
  double phi_init_scale = 0.1;
  std::vector<int> target_qubits{0, 1};

  void validate() const;
};

struct AdamState {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::vector<double> m;
  std::vector<double> v;
  long long step = 0;

  explicit AdamState(std::size_t n_params) : m(n_params, 0.0), v(n_params, 0.0) {}
};

/// One bias-corrected Adam update of `params` (flat trainable order).
void adam_step(AdamState& state, std::span<double> params, std::span<const double> grad,
               double lr);
void adam_step(AdamState& state, ModelParams& params, const GradientVector& grad, double lr);

struct Evaluation {
  double loss;
  double accuracy;
};

/// Mean loss and argmax accuracy (outcome 11 is never a correct answer since
/// no sample carries that label).
Evaluation evaluate(const CompiledModel& model, std::span<const LabeledSample> samples);

struct MetricsRecord {
  int epoch;
  double train_loss;
  double val_loss;
  double val_accuracy;
  double theta;  // NaN for the plain QNN
  std::optional<double> coupling_j;
  std::optional<double> field_g;
  double wall_time;  // seconds since the start of the run
};

struct SeedRun {
  std::uint64_t seed;
  ModelKind model;
  std::vector<MetricsRecord> metrics;  // epoch 0 is the untrained evaluation
  ModelParams final_params;
};

/// Initial parameters for one seed: phi ~ U[-scale, scale] per entry.
ModelParams initial_model(const TrainConfig& config, int n_qubits, std::uint64_t seed);

SeedRun train_seed(const TrainConfig& config, std::span<const LabeledSample> train,
                   std::span<const LabeledSample> validation, std::uint64_t seed);

/// One SeedRun per configured seed, in seed order.
std::vector<SeedRun> run_training(const TrainConfig& config,
                                  std::span<const LabeledSample> train,
                                  std::span<const LabeledSample> validation);

struct Summary {
  double mean;
  double stddev;  // population standard deviation over seeds
};

struct ModelComparison {
  ModelKind model;
  std::vector<SeedRun> runs;
  Summary final_train_loss;
  Summary final_val_loss;
  Summary final_val_accuracy;
};

Summary summarize(std::span<const double> values);
ModelComparison compare_entry(ModelKind kind, std::vector<SeedRun> runs);

/// Same protocol for each listed model kind (default: all four).
std::vector<ModelComparison> evaluate_baselines(
    const TrainConfig& config, std::span<const LabeledSample> train,
    std::span<const LabeledSample> validation,
    std::span<const ModelKind> kinds = std::span<const ModelKind>());

}  // namespace aiqt
