#pragma once

// AIQT + QNN model: |psi_out> = U_QNN(phi) U_AIQT |psi_in>, read out as the
// marginal distribution of the target qubits.

#include "aiqt/qnn.hpp"
#include "aiqt/statevec.hpp"
#include "aiqt/transforms.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace aiqt {

enum class ModelKind {
  Qnn,        // no transform
  QftQnn,     // fixed QFT (theta = 2 pi, not trained)
  AiqtQft,    // trainable QFT interpolation
  AiqtTe,     // trainable TFIM time evolution
};

std::string_view model_name(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

struct ModelParams {
  int n_qubits = 0;
  ModelKind kind = ModelKind::AiqtQft;
  std::optional<AiqtSpec> aiqt;  // empty for ModelKind::Qnn
  QnnParams qnn;
  std::vector<int> target_qubits{0, 1};

  bool aiqt_trainable() const {
    return kind == ModelKind::AiqtQft || kind == ModelKind::AiqtTe;
  }
  /// Trainable AIQT scalars (0, 1 or 3).
  int aiqt_parameter_count() const;
  std::size_t parameter_count() const;

  /// Trainable scalars in flat order: AIQT globals (theta[, J, g]), then
  /// phi[layer][generator].
  std::vector<double> flat() const;
  void set_flat(std::span<const double> values);

  /// Throws std::invalid_argument on inconsistent fields.
  void validate() const;
};

/// Model with parameters at their initial values: theta = qft_theta for
/// AiqtQft, (theta, J, g) = te_init for AiqtTe, all phi zero.
ModelParams make_model(ModelKind kind, int n_qubits, int layers, double qft_theta,
                       const TfimTimeEvolution& te_init);

/// A gate of the flattened model circuit: AIQT gates carry angle slopes with
/// respect to the flat AIQT parameters, QNN gates carry their layer index.
struct ModelGate {
  GateOp op;
  std::array<AngleSlope, 2> slopes{};
  int n_slopes = 0;
  int layer = -1;
};

/// A model lowered to one gate list with the layer spectra kept for
/// differentiation. Immutable; safe to share across threads.
class CompiledModel {
 public:
  explicit CompiledModel(const ModelParams& params);

  const ModelParams& params() const { return params_; }
  std::span<const ModelGate> gates() const { return gates_; }
  const LayerSpectrum& spectrum(int layer) const { return spectra_[layer]; }

  /// Runs the circuit in place.
  void run(std::span<Complex> amps) const;
  std::vector<double> probabilities(const PureState& input) const;

 private:
  ModelParams params_;
  std::vector<ModelGate> gates_;
  std::vector<LayerSpectrum> spectra_;
};

/// Target-qubit outcome distribution for one input state.
std::vector<double> forward(const ModelParams& model, const PureState& input);

inline constexpr double kProbabilityFloor = 1e-12;

/// -sum_i y_i log max(p_i, 1e-12).
double cross_entropy(std::span<const double> probs, std::span<const double> one_hot);

/// Index of the largest probability (first on ties).
int predicted_outcome(std::span<const double> probs);

}  // namespace aiqt
