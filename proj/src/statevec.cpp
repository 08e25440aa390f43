#include "aiqt/statevec.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace aiqt {
namespace {

constexpr double kUnitarityTol = 1e-10;

void check_qubit(int qubit, int n_qubits, const char* what) {
  if (qubit < 0 || qubit >= n_qubits) {
    throw std::invalid_argument(std::string(what) + ": qubit index " + std::to_string(qubit) +
                                " out of range for " + std::to_string(n_qubits) + " qubits");
  }
}

void check_pair(int a, int b, int n_qubits, const char* what) {
  check_qubit(a, n_qubits, what);
  check_qubit(b, n_qubits, what);
  if (a == b) {
    throw std::invalid_argument(std::string(what) + ": both operands act on qubit " +
                                std::to_string(a));
  }
}

// Inserts a zero bit at position `pos` of `k`.
inline std::size_t insert_zero(std::size_t k, int pos) {
  const std::size_t low = k & ((std::size_t{1} << pos) - 1);
  return ((k >> pos) << (pos + 1)) | low;
}

// k-th index (k < dim/4) whose bits `p` and `q` are both zero.
inline std::size_t insert_two_zeros(std::size_t k, int p, int q) {
  const int lo = p < q ? p : q;
  const int hi = p < q ? q : p;
  return insert_zero(insert_zero(k, lo), hi);
}

void kernel_hadamard(std::span<Complex> a, int bit) {
  const double r = 1.0 / std::sqrt(2.0);
  const std::size_t stride = std::size_t{1} << bit;
  for (std::size_t base = 0; base < a.size(); base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const Complex x = a[i];
      const Complex y = a[i + stride];
      a[i] = r * (x + y);
      a[i + stride] = r * (x - y);
    }
  }
}

void kernel_rx(std::span<Complex> a, int bit, double angle) {
  const double c = std::cos(angle / 2);
  const Complex ms(0.0, -std::sin(angle / 2));
  const std::size_t stride = std::size_t{1} << bit;
  for (std::size_t base = 0; base < a.size(); base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const Complex x = a[i];
      const Complex y = a[i + stride];
      a[i] = c * x + ms * y;
      a[i + stride] = ms * x + c * y;
    }
  }
}

void kernel_rz(std::span<Complex> a, int bit, double angle) {
  const Complex p0 = std::polar(1.0, -angle / 2);
  const Complex p1 = std::polar(1.0, angle / 2);
  const std::size_t stride = std::size_t{1} << bit;
  for (std::size_t base = 0; base < a.size(); base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      a[i] *= p0;
      a[i + stride] *= p1;
    }
  }
}

void kernel_cphase(std::span<Complex> a, int bit_a, int bit_b, double angle) {
  const Complex phase = std::polar(1.0, angle);
  const std::size_t both = (std::size_t{1} << bit_a) | (std::size_t{1} << bit_b);
  const std::size_t quarter = a.size() / 4;
  for (std::size_t k = 0; k < quarter; ++k) {
    a[insert_two_zeros(k, bit_a, bit_b) | both] *= phase;
  }
}

void kernel_cnot(std::span<Complex> a, int bit_c, int bit_t) {
  const std::size_t c = std::size_t{1} << bit_c;
  const std::size_t t = std::size_t{1} << bit_t;
  const std::size_t quarter = a.size() / 4;
  for (std::size_t k = 0; k < quarter; ++k) {
    const std::size_t i = insert_two_zeros(k, bit_c, bit_t) | c;
    std::swap(a[i], a[i | t]);
  }
}

void kernel_swap(std::span<Complex> a, int bit_a, int bit_b) {
  const std::size_t x = std::size_t{1} << bit_a;
  const std::size_t y = std::size_t{1} << bit_b;
  const std::size_t quarter = a.size() / 4;
  for (std::size_t k = 0; k < quarter; ++k) {
    const std::size_t i = insert_two_zeros(k, bit_a, bit_b);
    std::swap(a[i | x], a[i | y]);
  }
}

void kernel_partial_swap(std::span<Complex> a, int bit_a, int bit_b, double angle) {
  const Complex shift = std::polar(1.0, angle) - 1.0;
  const std::size_t x = std::size_t{1} << bit_a;
  const std::size_t y = std::size_t{1} << bit_b;
  const std::size_t quarter = a.size() / 4;
  for (std::size_t k = 0; k < quarter; ++k) {
    const std::size_t i = insert_two_zeros(k, bit_a, bit_b);
    const Complex u = a[i | x];
    const Complex v = a[i | y];
    // u, v += (e^{i angle} - 1) <s|uv> |s>, exact no-op at angle 0
    const Complex d = shift * (0.5 * (u - v));
    a[i | x] = u + d;
    a[i | y] = v - d;
  }
}

void kernel_two_qubit(std::span<Complex> a, int bit_first, int bit_second, const Matrix4c& u) {
  const std::size_t f = std::size_t{1} << bit_first;
  const std::size_t s = std::size_t{1} << bit_second;
  const std::size_t quarter = a.size() / 4;
  for (std::size_t k = 0; k < quarter; ++k) {
    const std::size_t i0 = insert_two_zeros(k, bit_first, bit_second);
    const std::size_t idx[4] = {i0, i0 | s, i0 | f, i0 | f | s};
    const Complex v[4] = {a[idx[0]], a[idx[1]], a[idx[2]], a[idx[3]]};
    for (int r = 0; r < 4; ++r) {
      a[idx[r]] = u(r, 0) * v[0] + u(r, 1) * v[1] + u(r, 2) * v[2] + u(r, 3) * v[3];
    }
  }
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

PureState::PureState(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("PureState: n_qubits must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(n_qubits));
  }
  amps_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
  amps_[0] = 1.0;
}

PureState::PureState(int n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("PureState: n_qubits must be in [1, " +
                                std::to_string(kMaxQubits) + "]");
  }
  if (amps_.size() != (std::size_t{1} << n_qubits)) {
    throw std::invalid_argument("PureState: expected " +
                                std::to_string(std::size_t{1} << n_qubits) +
                                " amplitudes, got " + std::to_string(amps_.size()));
  }
}

double PureState::norm_squared() const {
  double s = 0.0;
  for (const auto& z : amps_) s += std::norm(z);
  return s;
}

PureState basis_state(int n_qubits, std::size_t index) {
  PureState s(n_qubits);
  if (index >= s.dim()) {
    throw std::invalid_argument("basis_state: index " + std::to_string(index) +
                                " out of range for " + std::to_string(n_qubits) + " qubits");
  }
  s[0] = 0.0;
  s[index] = 1.0;
  return s;
}

void validate_gate(const GateOp& op, int n_qubits) {
  std::visit(Overloaded{
                 [&](const gate::Hadamard& g) { check_qubit(g.qubit, n_qubits, "Hadamard"); },
                 [&](const gate::RX& g) { check_qubit(g.qubit, n_qubits, "RX"); },
                 [&](const gate::RZ& g) { check_qubit(g.qubit, n_qubits, "RZ"); },
                 [&](const gate::ControlledPhase& g) {
                   check_pair(g.control, g.target, n_qubits, "ControlledPhase");
                 },
                 [&](const gate::CNOT& g) { check_pair(g.control, g.target, n_qubits, "CNOT"); },
                 [&](const gate::Swap& g) { check_pair(g.a, g.b, n_qubits, "Swap"); },
                 [&](const gate::PartialSwap& g) {
                   check_pair(g.a, g.b, n_qubits, "PartialSwap");
                 },
                 [&](const gate::TwoQubitUnitary& g) {
                   check_pair(g.first, g.second, n_qubits, "TwoQubitUnitary");
                   const double dev =
                       (g.matrix.adjoint() * g.matrix - Matrix4c::Identity()).norm();
                   if (!(dev < kUnitarityTol)) {
                     throw std::invalid_argument(
                         "TwoQubitUnitary: payload is not unitary (||U^dag U - I||_F = " +
                         std::to_string(dev) + ")");
                   }
                 },
             },
             op);
}

GateOp adjoint(const GateOp& op) {
  return std::visit(
      Overloaded{
          [](const gate::Hadamard& g) -> GateOp { return g; },
          [](const gate::CNOT& g) -> GateOp { return g; },
          [](const gate::Swap& g) -> GateOp { return g; },
          [](const gate::PartialSwap& g) -> GateOp {
            return gate::PartialSwap{g.a, g.b, -g.angle};
          },
          [](const gate::RX& g) -> GateOp { return gate::RX{g.qubit, -g.angle}; },
          [](const gate::RZ& g) -> GateOp { return gate::RZ{g.qubit, -g.angle}; },
          [](const gate::ControlledPhase& g) -> GateOp {
            return gate::ControlledPhase{g.control, g.target, -g.angle};
          },
          [](const gate::TwoQubitUnitary& g) -> GateOp {
            return gate::TwoQubitUnitary{g.first, g.second, g.matrix.adjoint()};
          },
      },
      op);
}

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("Circuit: n_qubits must be in [1, " +
                                std::to_string(kMaxQubits) + "]");
  }
}

Circuit& Circuit::add(GateOp op) {
  validate_gate(op, n_qubits_);
  gates_.push_back(std::move(op));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.n_qubits_ != n_qubits_) {
    throw std::invalid_argument("Circuit::append: qubit-count mismatch");
  }
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  return *this;
}

void apply_unchecked(std::span<Complex> a, int n, const GateOp& op) {
  std::visit(Overloaded{
                 [&](const gate::Hadamard& g) { kernel_hadamard(a, bit_of(n, g.qubit)); },
                 [&](const gate::RX& g) { kernel_rx(a, bit_of(n, g.qubit), g.angle); },
                 [&](const gate::RZ& g) { kernel_rz(a, bit_of(n, g.qubit), g.angle); },
                 [&](const gate::ControlledPhase& g) {
                   kernel_cphase(a, bit_of(n, g.control), bit_of(n, g.target), g.angle);
                 },
                 [&](const gate::CNOT& g) {
                   kernel_cnot(a, bit_of(n, g.control), bit_of(n, g.target));
                 },
                 [&](const gate::Swap& g) { kernel_swap(a, bit_of(n, g.a), bit_of(n, g.b)); },
                 [&](const gate::PartialSwap& g) {
                   kernel_partial_swap(a, bit_of(n, g.a), bit_of(n, g.b), g.angle);
                 },
                 [&](const gate::TwoQubitUnitary& g) {
                   kernel_two_qubit(a, bit_of(n, g.first), bit_of(n, g.second), g.matrix);
                 },
             },
             op);
}

void apply_gate(PureState& state, const GateOp& op) {
  validate_gate(op, state.n_qubits());
  apply_unchecked(state.amplitudes(), state.n_qubits(), op);
}

void apply_circuit(PureState& state, const Circuit& circuit) {
  if (circuit.n_qubits() != state.n_qubits()) {
    throw std::invalid_argument("apply_circuit: circuit has " +
                                std::to_string(circuit.n_qubits()) + " qubits, state has " +
                                std::to_string(state.n_qubits()));
  }
  // Gates were validated when added to the circuit.
  for (const auto& op : circuit.gates()) {
    apply_unchecked(state.amplitudes(), state.n_qubits(), op);
  }
}

PureState applied(PureState state, const GateOp& op) {
  apply_gate(state, op);
  return state;
}

PureState applied(PureState state, const Circuit& circuit) {
  apply_circuit(state, circuit);
  return state;
}

MatrixXc circuit_to_dense_unitary(const Circuit& circuit) {
  const int n = circuit.n_qubits();
  if (n > 12) {
    throw std::invalid_argument("circuit_to_dense_unitary: " + std::to_string(n) +
                                " qubits exceeds the 12-qubit limit");
  }
  const std::size_t dim = std::size_t{1} << n;
  MatrixXc u(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    PureState col = basis_state(n, j);
    apply_circuit(col, circuit);
    for (std::size_t i = 0; i < dim; ++i) u(i, j) = col[i];
  }
  return u;
}

void validate_targets(int n_qubits, std::span<const int> targets) {
  if (targets.empty()) throw std::invalid_argument("target qubit list is empty");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    check_qubit(targets[i], n_qubits, "target qubits");
    for (std::size_t j = 0; j < i; ++j) {
      if (targets[i] == targets[j]) {
        throw std::invalid_argument("target qubits: duplicate index " +
                                    std::to_string(targets[i]));
      }
    }
  }
}

std::vector<double> marginal_probabilities(std::span<const Complex> amps, int n_qubits,
                                           std::span<const int> targets) {
  validate_targets(n_qubits, targets);
  const int m = static_cast<int>(targets.size());
  std::vector<double> probs(std::size_t{1} << m, 0.0);
  std::vector<int> bits(targets.size());
  for (int t = 0; t < m; ++t) bits[t] = bit_of(n_qubits, targets[t]);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    std::size_t outcome = 0;
    for (int t = 0; t < m; ++t) outcome = (outcome << 1) | ((i >> bits[t]) & 1U);
    probs[outcome] += std::norm(amps[i]);
  }
  return probs;
}

std::vector<double> marginal_probabilities(const PureState& state,
                                           std::span<const int> targets) {
  return marginal_probabilities(state.amplitudes(), state.n_qubits(), targets);
}

}  // namespace aiqt
