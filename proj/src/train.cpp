#include "aiqt/train.hpp"

#include "aiqt/rng.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace aiqt {
namespace {

constexpr ModelKind kAllModels[] = {ModelKind::Qnn, ModelKind::QftQnn, ModelKind::AiqtQft,
                                    ModelKind::AiqtTe};

MetricsRecord record(int epoch, const CompiledModel& model, std::span<const LabeledSample> train,
                     std::span<const LabeledSample> validation, double wall_time) {
  const Evaluation tr = evaluate(model, train);
  const Evaluation va = evaluate(model, validation);
  MetricsRecord r{epoch, tr.loss, va.loss, va.accuracy,
                  std::numeric_limits<double>::quiet_NaN(), std::nullopt, std::nullopt,
                  wall_time};
  const auto& aiqt = model.params().aiqt;
  if (aiqt) {
    if (const auto* q = std::get_if<QftInterp>(&*aiqt)) {
      r.theta = q->theta;
    } else {
      const auto& te = std::get<TfimTimeEvolution>(*aiqt);
      r.theta = te.theta;
      r.coupling_j = te.coupling_j;
      r.field_g = te.field_g;
    }
  }
  return r;
}

}  // namespace

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw std::invalid_argument("learning_rate must be positive");
  }
  if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  if (epochs < 0) throw std::invalid_argument("epochs must be >= 0");
  if (seeds.empty()) throw std::invalid_argument("at least one seed is required");
  if (layers < 0) throw std::invalid_argument("layers must be >= 0");
  if (!std::isfinite(theta_init)) throw std::invalid_argument("theta_init must be finite");
  if (!(phi_init_scale >= 0.0)) throw std::invalid_argument("phi_init_scale must be >= 0");
  aiqt::validate(AiqtSpec{te_init});
}

void adam_step(AdamState& s, std::span<double> params, std::span<const double> grad, double lr) {
  if (params.size() != s.m.size() || grad.size() != s.m.size()) {
    throw std::invalid_argument("adam_step: expected " + std::to_string(s.m.size()) +
                                " parameters, got " + std::to_string(params.size()) + "/" +
                                std::to_string(grad.size()));
  }
  ++s.step;
  const double c1 = 1.0 - std::pow(s.beta1, static_cast<double>(s.step));
  const double c2 = 1.0 - std::pow(s.beta2, static_cast<double>(s.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    s.m[i] = s.beta1 * s.m[i] + (1.0 - s.beta1) * grad[i];
    s.v[i] = s.beta2 * s.v[i] + (1.0 - s.beta2) * grad[i] * grad[i];
    const double m_hat = s.m[i] / c1;
    const double v_hat = s.v[i] / c2;
    params[i] -= lr * m_hat / (std::sqrt(v_hat) + s.epsilon);
  }
}

void adam_step(AdamState& state, ModelParams& params, const GradientVector& grad, double lr) {
  std::vector<double> x = params.flat();
  const std::vector<double> g = grad.flat();
  adam_step(state, x, g, lr);
  params.set_flat(x);
}

Evaluation evaluate(const CompiledModel& model, std::span<const LabeledSample> samples) {
  if (samples.empty()) throw std::invalid_argument("evaluate: empty sample set");
  double loss = 0.0;
  int correct = 0;
  for (const auto& s : samples) {
    const std::vector<double> p = model.probabilities(s.state);
    loss += cross_entropy(p, s.one_hot);
    if (predicted_outcome(p) == outcome_index(s.label)) ++correct;
  }
  const double m = static_cast<double>(samples.size());
  return {loss / m, correct / m};
}

ModelParams initial_model(const TrainConfig& config, int n_qubits, std::uint64_t seed) {
  ModelParams m = make_model(config.model, n_qubits, config.layers, config.theta_init,
                             config.te_init);
  m.target_qubits = config.target_qubits;
  Rng rng(seed);
  for (auto& layer : m.qnn.layers) {
    for (auto& p : layer) p = rng.uniform(-config.phi_init_scale, config.phi_init_scale);
  }
  m.validate();
  return m;
}

SeedRun train_seed(const TrainConfig& config, std::span<const LabeledSample> train,
                   std::span<const LabeledSample> validation, std::uint64_t seed) {
  config.validate();
  if (train.empty() || validation.empty()) {
    throw std::invalid_argument("run_training: train and validation splits must be non-empty");
  }
  const int n = train.front().state.n_qubits();
  const auto start = std::chrono::steady_clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  // Parameter init and the per-epoch shuffles draw from one stream per seed.
  ModelParams params = initial_model(config, n, seed);
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  AdamState adam(params.parameter_count());

  SeedRun run{seed, config.model, {}, params};
  run.metrics.push_back(record(0, CompiledModel(params), train, validation, elapsed()));

  std::vector<std::size_t> order(train.size());
  std::vector<LabeledSample> batch;
  batch.reserve(static_cast<std::size_t>(config.batch_size));
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    for (std::size_t begin = 0; begin < order.size(); begin += config.batch_size) {
      const std::size_t end = std::min(order.size(), begin + config.batch_size);
      batch.clear();
      for (std::size_t k = begin; k < end; ++k) batch.push_back(train[order[k]]);
      const LossAndGradient lg = loss_and_gradient(CompiledModel(params), batch);
      if (params.parameter_count() > 0) adam_step(adam, params, lg.grad, config.learning_rate);
    }
    run.metrics.push_back(record(epoch, CompiledModel(params), train, validation, elapsed()));
  }
  run.final_params = params;
  return run;
}

std::vector<SeedRun> run_training(const TrainConfig& config,
                                  std::span<const LabeledSample> train,
                                  std::span<const LabeledSample> validation) {
  config.validate();
  std::vector<SeedRun> runs;
  for (auto seed : config.seeds) runs.push_back(train_seed(config, train, validation, seed));
  return runs;
}

Summary summarize(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("summarize: no values");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(values.size());
  return {mean, std::sqrt(var)};
}

ModelComparison compare_entry(ModelKind kind, std::vector<SeedRun> runs) {
  std::vector<double> tl;
  std::vector<double> vl;
  std::vector<double> va;
  for (const auto& r : runs) {
    tl.push_back(r.metrics.back().train_loss);
    vl.push_back(r.metrics.back().val_loss);
    va.push_back(r.metrics.back().val_accuracy);
  }
  return {kind, std::move(runs), summarize(tl), summarize(vl), summarize(va)};
}

std::vector<ModelComparison> evaluate_baselines(const TrainConfig& config,
                                                std::span<const LabeledSample> train,
                                                std::span<const LabeledSample> validation,
                                                std::span<const ModelKind> kinds) {
  if (kinds.empty()) kinds = kAllModels;
  std::vector<ModelComparison> out;
  for (ModelKind kind : kinds) {
    TrainConfig c = config;
    c.model = kind;
    out.push_back(compare_entry(kind, run_training(c, train, validation)));
  }
  return out;
}

}  // namespace aiqt
