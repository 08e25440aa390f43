#include "aiqt/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace aiqt {

std::string_view model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Qnn:
      return "qnn";
    case ModelKind::QftQnn:
      return "qft-qnn";
    case ModelKind::AiqtQft:
      return "aiqt-qft";
    case ModelKind::AiqtTe:
      return "aiqt-te";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view name) {
  for (auto k : {ModelKind::Qnn, ModelKind::QftQnn, ModelKind::AiqtQft, ModelKind::AiqtTe}) {
    if (model_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown model '" + std::string(name) +
                              "' (expected qnn, qft-qnn, aiqt-qft or aiqt-te)");
}

int ModelParams::aiqt_parameter_count() const {
  if (!aiqt_trainable() || !aiqt) return 0;
  return aiqt::parameter_count(*aiqt);
}

std::size_t ModelParams::parameter_count() const {
  return static_cast<std::size_t>(aiqt_parameter_count()) + qnn.parameter_count();
}

std::vector<double> ModelParams::flat() const {
  std::vector<double> v;
  v.reserve(parameter_count());
  if (aiqt_trainable()) {
    if (const auto* q = std::get_if<QftInterp>(&*aiqt)) {
      v.push_back(q->theta);
    } else {
      const auto& te = std::get<TfimTimeEvolution>(*aiqt);
      v.insert(v.end(), {te.theta, te.coupling_j, te.field_g});
    }
  }
  for (const auto& layer : qnn.layers) v.insert(v.end(), layer.begin(), layer.end());
  return v;
}

void ModelParams::set_flat(std::span<const double> values) {
  if (values.size() != parameter_count()) {
    throw std::invalid_argument("set_flat: expected " + std::to_string(parameter_count()) +
                                " values, got " + std::to_string(values.size()));
  }
  std::size_t k = 0;
  if (aiqt_trainable()) {
    if (auto* q = std::get_if<QftInterp>(&*aiqt)) {
      q->theta = values[k++];
    } else {
      auto& te = std::get<TfimTimeEvolution>(*aiqt);
      te.theta = values[k++];
      te.coupling_j = values[k++];
      te.field_g = values[k++];
    }
  }
  for (auto& layer : qnn.layers) {
    for (auto& p : layer) p = values[k++];
  }
}

void ModelParams::validate() const {
  if (n_qubits < 2 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("model: n_qubits must be in [2, " + std::to_string(kMaxQubits) +
                                "], got " + std::to_string(n_qubits));
  }
  validate_targets(n_qubits, target_qubits);
  const bool wants_qft = kind == ModelKind::QftQnn || kind == ModelKind::AiqtQft;
  if (kind == ModelKind::Qnn && aiqt) {
    throw std::invalid_argument("model: plain QNN carries no transform");
  }
  if (kind != ModelKind::Qnn) {
    if (!aiqt) throw std::invalid_argument("model: transform parameters missing");
    if (wants_qft != std::holds_alternative<QftInterp>(*aiqt)) {
      throw std::invalid_argument("model: transform variant does not match model kind");
    }
    aiqt::validate(*aiqt);
  }
  for (const auto& layer : qnn.layers) {
    for (double p : layer) {
      if (!std::isfinite(p)) throw std::invalid_argument("model: non-finite QNN parameter");
    }
  }
}

ModelParams make_model(ModelKind kind, int n_qubits, int layers, double qft_theta,
                       const TfimTimeEvolution& te_init) {
  if (layers < 0) throw std::invalid_argument("make_model: negative layer count");
  ModelParams m;
  m.n_qubits = n_qubits;
  m.kind = kind;
  switch (kind) {
    case ModelKind::Qnn:
      break;
    case ModelKind::QftQnn:
      m.aiqt = QftInterp{2 * std::numbers::pi};
      break;
    case ModelKind::AiqtQft:
      m.aiqt = QftInterp{qft_theta};
      break;
    case ModelKind::AiqtTe:
      m.aiqt = te_init;
      break;
  }
  m.qnn.layers.assign(static_cast<std::size_t>(layers), LayerParams{});
  m.validate();
  return m;
}

CompiledModel::CompiledModel(const ModelParams& params) : params_(params) {
  params_.validate();
  const int n = params_.n_qubits;
  if (params_.aiqt) {
    const bool trainable = params_.aiqt_trainable();
    for (auto& t : aiqt_tape(n, *params_.aiqt)) {
      ModelGate g{std::move(t.op)};
      if (trainable) {
        g.slopes = t.slopes;
        g.n_slopes = t.n_slopes;
      }
      gates_.push_back(std::move(g));
    }
  }
  for (int l = 0; l < params_.qnn.n_layers(); ++l) {
    spectra_.push_back(layer_spectrum(layer_generator(params_.qnn.layers[l])));
    const Matrix4c u = unitary_from_spectrum(spectra_.back());
    for (const auto& [a, b] : pairing(n, l + 1)) {
      ModelGate g{gate::TwoQubitUnitary{a, b, u}};
      g.layer = l;
      gates_.push_back(std::move(g));
    }
  }
  for (const auto& g : gates_) validate_gate(g.op, n);
}

void CompiledModel::run(std::span<Complex> amps) const {
  for (const auto& g : gates_) apply_unchecked(amps, params_.n_qubits, g.op);
}

std::vector<double> CompiledModel::probabilities(const PureState& input) const {
  if (input.n_qubits() != params_.n_qubits) {
    throw std::invalid_argument("forward: input has " + std::to_string(input.n_qubits()) +
                                " qubits, model expects " + std::to_string(params_.n_qubits));
  }
  PureState s = input;
  run(s.amplitudes());
  return marginal_probabilities(s, params_.target_qubits);
}

std::vector<double> forward(const ModelParams& model, const PureState& input) {
  return CompiledModel(model).probabilities(input);
}

double cross_entropy(std::span<const double> probs, std::span<const double> one_hot) {
  if (probs.size() != one_hot.size()) {
    throw std::invalid_argument("cross_entropy: probability and label lengths differ");
  }
  int ones = 0;
  for (double y : one_hot) {
    if (y == 1.0) {
      ++ones;
    } else if (y != 0.0) {
      throw std::invalid_argument("cross_entropy: label is not one-hot");
    }
  }
  if (ones != 1) throw std::invalid_argument("cross_entropy: label is not one-hot");
  double loss = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (one_hot[i] != 0.0) loss -= one_hot[i] * std::log(std::max(probs[i], kProbabilityFloor));
  }
  return loss;
}

int predicted_outcome(std::span<const double> probs) {
  return static_cast<int>(std::max_element(probs.begin(), probs.end()) - probs.begin());
}

}  // namespace aiqt
