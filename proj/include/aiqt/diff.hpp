#pragma once

// Exact gradients of the batch cross-entropy by reverse-mode (adjoint)
// differentiation through the model circuit, plus a central finite-difference
// oracle and the Frechet derivative of the two-qubit layer exponential.

#include "aiqt/model.hpp"
#include "aiqt/spinchain.hpp"

#include <optional>
#include <span>
#include <vector>

namespace aiqt {

struct GradientVector {
  std::optional<double> d_theta;
  std::optional<double> d_coupling_j;
  std::optional<double> d_field_g;
  std::vector<LayerParams> d_phi;

  /// Same order as ModelParams::flat().
  std::vector<double> flat() const;
  static GradientVector from_flat(const ModelParams& model, std::span<const double> values);
};

struct LossAndGradient {
  double loss;
  GradientVector grad;
};

/// Batch-mean cross-entropy.
double batch_loss(const CompiledModel& model, std::span<const LabeledSample> batch);
double batch_loss(const ModelParams& model, std::span<const LabeledSample> batch);

LossAndGradient loss_and_gradient(const CompiledModel& model,
                                  std::span<const LabeledSample> batch);
LossAndGradient loss_and_gradient(const ModelParams& model, std::span<const LabeledSample> batch);

/// Central differences on every trainable scalar.
GradientVector finite_diff_gradient(const ModelParams& model,
                                    std::span<const LabeledSample> batch, double h);

/// D exp(-i H)[-i dH], the derivative of exp(-i H) along dH, from the upper-right
/// block of exp([[-iH, -i dH], [0, -iH]]). Both inputs must be Hermitian.
Matrix4c frechet_exp(const Matrix4c& h, const Matrix4c& dh);

/// Same derivative from the eigenbasis of H with divided differences of exp.
Matrix4c frechet_exp_loewner(const Matrix4c& h, const Matrix4c& dh);

}  // namespace aiqt
