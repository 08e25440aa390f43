#include "aiqt/qnn.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace aiqt {
namespace {

std::array<Matrix4c, kGenerators> make_basis() {
  std::array<Matrix4c, kGenerators> g;
  for (auto& m : g) m.setZero();
  const Complex i(0.0, 1.0);
  int idx = 0;
  for (int j = 0; j < 4; ++j) {
    for (int k = j + 1; k < 4; ++k) {
      g[idx](j, k) = 1.0;
      g[idx](k, j) = 1.0;
      g[idx + 6](j, k) = -i;
      g[idx + 6](k, j) = i;
      ++idx;
    }
  }
  g[12].diagonal() << 1.0, -1.0, 0.0, 0.0;
  g[13].diagonal() << 1.0, 1.0, -2.0, 0.0;
  g[13] /= std::sqrt(3.0);
  g[14].diagonal() << 1.0, 1.0, 1.0, -3.0;
  g[14] /= std::sqrt(6.0);
  return g;
}

}  // namespace

const std::array<Matrix4c, kGenerators>& gellmann_basis() {
  static const auto basis = make_basis();
  return basis;
}

Matrix4c layer_generator(const LayerParams& phi) {
  const auto& g = gellmann_basis();
  Matrix4c h = Matrix4c::Zero();
  for (int i = 0; i < kGenerators; ++i) {
    if (!std::isfinite(phi[i])) {
      throw std::invalid_argument("layer parameter " + std::to_string(i) + " is not finite");
    }
    h += phi[i] * g[i];
  }
  return h;
}

LayerSpectrum layer_spectrum(const Matrix4c& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(hermitian);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("layer_spectrum: eigendecomposition failed");
  }
  return {es.eigenvectors(), es.eigenvalues()};
}

Matrix4c unitary_from_spectrum(const LayerSpectrum& spec) {
  Eigen::Vector4cd phases;
  for (int k = 0; k < 4; ++k) phases(k) = std::polar(1.0, -spec.values(k));
  return spec.vectors * phases.asDiagonal() * spec.vectors.adjoint();
}

Matrix4c layer_unitary(const LayerParams& phi) {
  return unitary_from_spectrum(layer_spectrum(layer_generator(phi)));
}

std::vector<std::pair<int, int>> pairing(int n_qubits, int layer) {
  if (n_qubits < 2) {
    throw std::invalid_argument("pairing: need at least 2 qubits, got " +
                                std::to_string(n_qubits));
  }
  if (layer < 1) throw std::invalid_argument("pairing: layers are numbered from 1");
  std::vector<std::pair<int, int>> pairs;
  for (int q = (layer % 2 == 1) ? 0 : 1; q + 1 < n_qubits; q += 2) pairs.emplace_back(q, q + 1);
  return pairs;
}

Circuit build_qnn(int n_qubits, const QnnParams& params) {
  Circuit c(n_qubits);
  for (int l = 0; l < params.n_layers(); ++l) {
    const Matrix4c u = layer_unitary(params.layers[l]);
    for (const auto& [a, b] : pairing(n_qubits, l + 1)) c.add(gate::TwoQubitUnitary{a, b, u});
  }
  return c;
}

void apply_qnn(PureState& state, const QnnParams& params) {
  apply_circuit(state, build_qnn(state.n_qubits(), params));
}

}  // namespace aiqt
