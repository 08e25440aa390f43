#pragma once

// Circuit builders for the interpolating transforms.
//
//  * QFT interpolation: Hadamard on every qubit, controlled phases
//    theta / 2^k with k = (distance between the two qubits) + 1, and the final
//    bit-reversal swap layer. theta = 0 gives H^{(x)n}, theta = 2 pi gives the
//    discrete Fourier transform.
//  * TFIM time evolution: first-order Trotterization of
//    exp(-i theta H_TFIM(J, g)), H_TFIM = -J sum Z_i Z_{i+1} - g sum X_i on an
//    open chain.

#include "aiqt/statevec.hpp"

#include <array>
#include <cstddef>
#include <numbers>
#include <variant>
#include <vector>

namespace aiqt {

struct QftInterp {
  double theta = 2 * std::numbers::pi;
};

struct TfimTimeEvolution {
  double theta = 0.0;
  double coupling_j = 1.0;
  double field_g = 1.0;
  int n_steps = 10;
};

using AiqtSpec = std::variant<QftInterp, TfimTimeEvolution>;

/// Throws std::invalid_argument on non-finite parameters or n_steps < 1.
void validate(const AiqtSpec& spec);

/// Global parameters of an AIQT block, in the order they are flattened.
enum class AiqtParam : int { Theta = 0, CouplingJ = 1, FieldG = 2 };

/// Number of scalar parameters carried by the variant (1 for QFT, 3 for TE).
int parameter_count(const AiqtSpec& spec);

/// d(gate angle) / d(parameter) for a gate whose angle depends linearly on a
/// global parameter (at the current parameter values).
struct AngleSlope {
  AiqtParam param;
  double slope;
};

/// A gate plus the slopes of its angle. Gates without parameters have an
/// empty slope list.
struct TapeGate {
  GateOp op;
  std::array<AngleSlope, 2> slopes{};
  int n_slopes = 0;
};

std::vector<TapeGate> qft_interp_tape(int n_qubits, double theta);
std::vector<TapeGate> tfim_te_tape(int n_qubits, double theta, double coupling_j,
                                   double field_g, int n_steps);
std::vector<TapeGate> aiqt_tape(int n_qubits, const AiqtSpec& spec);

Circuit build_qft_interp(int n_qubits, double theta);
Circuit build_fixed_qft(int n_qubits);
Circuit build_tfim_te(int n_qubits, double theta, double coupling_j, double field_g,
                      int n_steps);
Circuit build_aiqt(int n_qubits, const AiqtSpec& spec);

/// Dense -J sum ZZ - g sum X (open chain). n_qubits <= 12.
MatrixXc tfim_hamiltonian_dense(int n_qubits, double coupling_j, double field_g);

/// exp(-i theta H_TFIM(J, g)) by Hermitian eigendecomposition. n_qubits <= 6.
MatrixXc exact_te_unitary(int n_qubits, double theta, double coupling_j, double field_g);

}  // namespace aiqt
