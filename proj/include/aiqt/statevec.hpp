#pragma once

// Dense state-vector simulator.
//
// Bit ordering: qubit 0 is the MOST significant bit of a basis index, so for
// n qubits the basis index of |b_0 b_1 ... b_{n-1}> is sum_q b_q 2^(n-1-q).
// Every module (dataset encoding, readout, Hamiltonians) uses this ordering.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace aiqt {

using Complex = std::complex<double>;
using Matrix4c = Eigen::Matrix<Complex, 4, 4>;
using MatrixXc = Eigen::MatrixXcd;

/// Maximum register width accepted anywhere in the library.
inline constexpr int kMaxQubits = 24;

/// Bit position of `qubit` inside a basis index.
constexpr int bit_of(int n_qubits, int qubit) { return n_qubits - 1 - qubit; }

class PureState {
 public:
  /// |0...0> on `n_qubits` qubits.
  explicit PureState(int n_qubits);
  /// Takes ownership of `amplitudes`; length must be 2^n_qubits. The vector is
  /// stored as given (no renormalization).
  PureState(int n_qubits, std::vector<Complex> amplitudes);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }

  std::span<Complex> amplitudes() { return amps_; }
  std::span<const Complex> amplitudes() const { return amps_; }
  Complex& operator[](std::size_t i) { return amps_[i]; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const;

 private:
  int n_qubits_;
  std::vector<Complex> amps_;
};

PureState basis_state(int n_qubits, std::size_t index);

namespace gate {

struct Hadamard {
  int qubit;
};
/// diag(1, 1, 1, e^{i angle}); symmetric in control and target.
struct ControlledPhase {
  int control;
  int target;
  double angle;
};
/// exp(-i angle X / 2)
struct RX {
  int qubit;
  double angle;
};
/// exp(-i angle Z / 2)
struct RZ {
  int qubit;
  double angle;
};
struct CNOT {
  int control;
  int target;
};
struct Swap {
  int a;
  int b;
};
/// Fractional swap: identity on the symmetric subspace of the pair, phase
/// e^{i angle} on the antisymmetric state (|01> - |10>)/sqrt2. angle = 0 is
/// the identity, angle = pi the full swap.
struct PartialSwap {
  int a;
  int b;
  double angle;
};
/// Arbitrary 4x4 unitary; `first` is the more significant factor of the local
/// two-qubit basis, i.e. local index = 2*bit(first) + bit(second).
struct TwoQubitUnitary {
  int first;
  int second;
  Matrix4c matrix;
};

}  // namespace gate

using GateOp = std::variant<gate::Hadamard, gate::ControlledPhase, gate::RX, gate::RZ,
                            gate::CNOT, gate::Swap, gate::PartialSwap,
                            gate::TwoQubitUnitary>;

/// Throws std::invalid_argument if the gate is malformed for `n_qubits`
/// (index out of range, coincident qubits, non-unitary payload).
void validate_gate(const GateOp& op, int n_qubits);

/// Returns the adjoint gate (same kind, inverted angle or conjugate-transposed
/// payload).
GateOp adjoint(const GateOp& op);

class Circuit {
 public:
  explicit Circuit(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  const std::vector<GateOp>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }

  /// Validates then appends.
  Circuit& add(GateOp op);
  Circuit& append(const Circuit& other);

 private:
  int n_qubits_;
  std::vector<GateOp> gates_;
};

/// In-place kernels. Callers are expected to have validated the gate; these
/// do not re-check unitarity.
void apply_unchecked(std::span<Complex> amps, int n_qubits, const GateOp& op);

/// Validating variants.
void apply_gate(PureState& state, const GateOp& op);
void apply_circuit(PureState& state, const Circuit& circuit);

/// Value-returning forms.
PureState applied(PureState state, const GateOp& op);
PureState applied(PureState state, const Circuit& circuit);

/// Column j is apply_circuit(basis_state(n, j)). Limited to 12 qubits.
MatrixXc circuit_to_dense_unitary(const Circuit& circuit);

/// Probability of each outcome of the listed qubits; outcome index is formed
/// with target_qubits[0] as the most significant bit.
std::vector<double> marginal_probabilities(const PureState& state,
                                           std::span<const int> target_qubits);
std::vector<double> marginal_probabilities(std::span<const Complex> amps, int n_qubits,
                                           std::span<const int> target_qubits);

/// Throws unless target qubits are distinct and in range.
void validate_targets(int n_qubits, std::span<const int> target_qubits);

}  // namespace aiqt
