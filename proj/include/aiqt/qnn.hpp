#pragma once

// Hardware-efficient QNN: each layer applies the same two-qubit unitary
// exp(-i sum_i phi_i G_i) to a brick-wall set of disjoint qubit pairs, where
// G_1..G_15 are the generalized Gell-Mann matrices of dimension 4.

#include "aiqt/statevec.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace aiqt {

inline constexpr int kGenerators = 15;

using LayerParams = std::array<double, kGenerators>;

/// Generalized Gell-Mann matrices, normalized so that Tr(G_i G_j) = 2 delta_ij.
/// Order: 6 symmetric off-diagonal, 6 antisymmetric off-diagonal (both over
/// the pairs (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)), then 3 diagonal.
const std::array<Matrix4c, kGenerators>& gellmann_basis();

/// sum_i phi_i G_i
Matrix4c layer_generator(const LayerParams& phi);

/// Eigendecomposition of a layer generator, H = V diag(lambda) V^dag.
struct LayerSpectrum {
  Matrix4c vectors;
  Eigen::Vector4d values;
};
LayerSpectrum layer_spectrum(const Matrix4c& hermitian);

/// exp(-i H) for Hermitian H, through its eigendecomposition.
Matrix4c unitary_from_spectrum(const LayerSpectrum& spec);

/// exp(-i sum_i phi_i G_i). Throws on non-finite entries.
Matrix4c layer_unitary(const LayerParams& phi);

struct QnnParams {
  std::vector<LayerParams> layers;

  int n_layers() const { return static_cast<int>(layers.size()); }
  std::size_t parameter_count() const { return layers.size() * kGenerators; }
};

/// Brick-wall pairs for 1-based `layer`: odd layers start at qubit 0, even
/// layers at qubit 1; an unpaired boundary qubit stays idle.
std::vector<std::pair<int, int>> pairing(int n_qubits, int layer);

/// Every layer unitary on its pairs, in layer order.
Circuit build_qnn(int n_qubits, const QnnParams& params);

void apply_qnn(PureState& state, const QnnParams& params);

}  // namespace aiqt
