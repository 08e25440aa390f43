#include "aiqt/transforms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace aiqt {
namespace {

void check_width(int n_qubits, const char* who) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument(std::string(who) + ": n_qubits must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(n_qubits));
  }
}

Circuit to_circuit(int n_qubits, const std::vector<TapeGate>& tape) {
  Circuit c(n_qubits);
  for (const auto& t : tape) c.add(t.op);
  return c;
}

}  // namespace

void validate(const AiqtSpec& spec) {
  if (const auto* q = std::get_if<QftInterp>(&spec)) {
    if (!std::isfinite(q->theta)) throw std::invalid_argument("QftInterp: theta is not finite");
    return;
  }
  const auto& te = std::get<TfimTimeEvolution>(spec);
  if (!std::isfinite(te.theta) || !std::isfinite(te.coupling_j) || !std::isfinite(te.field_g)) {
    throw std::invalid_argument("TfimTimeEvolution: parameters must be finite");
  }
  if (te.n_steps < 1) {
    throw std::invalid_argument("TfimTimeEvolution: n_steps must be >= 1, got " +
                                std::to_string(te.n_steps));
  }
}

int parameter_count(const AiqtSpec& spec) {
  return std::holds_alternative<QftInterp>(spec) ? 1 : 3;
}

std::vector<TapeGate> qft_interp_tape(int n_qubits, double theta) {
  check_width(n_qubits, "build_qft_interp");
  if (!std::isfinite(theta)) throw std::invalid_argument("build_qft_interp: theta is not finite");
  std::vector<TapeGate> tape;
  for (int q = 0; q < n_qubits; ++q) {
    tape.push_back({gate::Hadamard{q}});
    for (int j = q + 1; j < n_qubits; ++j) {
      const double scale = std::ldexp(1.0, -(j - q + 1));  // 1 / 2^k, k = distance + 1
      TapeGate t{gate::ControlledPhase{j, q, theta * scale}};
      t.slopes[0] = {AiqtParam::Theta, scale};
      t.n_slopes = 1;
      tape.push_back(t);
    }
  }
  // Bit reversal as fractional swaps at angle theta / 2: no-op at theta = 0,
  // the full reversal at theta = 2 pi.
  for (int q = 0; q < n_qubits / 2; ++q) {
    TapeGate t{gate::PartialSwap{q, n_qubits - 1 - q, 0.5 * theta}};
    t.slopes[0] = {AiqtParam::Theta, 0.5};
    t.n_slopes = 1;
    tape.push_back(t);
  }
  return tape;
}

std::vector<TapeGate> tfim_te_tape(int n_qubits, double theta, double coupling_j,
                                   double field_g, int n_steps) {
  check_width(n_qubits, "build_tfim_te");
  validate(AiqtSpec{TfimTimeEvolution{theta, coupling_j, field_g, n_steps}});
  const double dt = theta / n_steps;
  const double inv_steps = 1.0 / n_steps;
  std::vector<TapeGate> tape;
  tape.reserve(static_cast<std::size_t>(n_steps) * (4 * n_qubits));
  for (int step = 0; step < n_steps; ++step) {
    for (int q = 0; q < n_qubits; ++q) {
      TapeGate t{gate::RX{q, -2.0 * field_g * dt}};
      t.slopes[0] = {AiqtParam::Theta, -2.0 * field_g * inv_steps};
      t.slopes[1] = {AiqtParam::FieldG, -2.0 * dt};
      t.n_slopes = 2;
      tape.push_back(t);
    }
    for (int q = 0; q + 1 < n_qubits; ++q) {
      tape.push_back({gate::CNOT{q, q + 1}});
      TapeGate t{gate::RZ{q + 1, -2.0 * coupling_j * dt}};
      t.slopes[0] = {AiqtParam::Theta, -2.0 * coupling_j * inv_steps};
      t.slopes[1] = {AiqtParam::CouplingJ, -2.0 * dt};
      t.n_slopes = 2;
      tape.push_back(t);
      tape.push_back({gate::CNOT{q, q + 1}});
    }
  }
  return tape;
}

std::vector<TapeGate> aiqt_tape(int n_qubits, const AiqtSpec& spec) {
  if (const auto* q = std::get_if<QftInterp>(&spec)) return qft_interp_tape(n_qubits, q->theta);
  const auto& te = std::get<TfimTimeEvolution>(spec);
  return tfim_te_tape(n_qubits, te.theta, te.coupling_j, te.field_g, te.n_steps);
}

Circuit build_qft_interp(int n_qubits, double theta) {
  return to_circuit(n_qubits, qft_interp_tape(n_qubits, theta));
}

Circuit build_fixed_qft(int n_qubits) { return build_qft_interp(n_qubits, 2 * std::numbers::pi); }

Circuit build_tfim_te(int n_qubits, double theta, double coupling_j, double field_g,
                      int n_steps) {
  return to_circuit(n_qubits, tfim_te_tape(n_qubits, theta, coupling_j, field_g, n_steps));
}

Circuit build_aiqt(int n_qubits, const AiqtSpec& spec) {
  return to_circuit(n_qubits, aiqt_tape(n_qubits, spec));
}

MatrixXc tfim_hamiltonian_dense(int n_qubits, double coupling_j, double field_g) {
  if (n_qubits < 1 || n_qubits > 12) {
    throw std::invalid_argument("tfim_hamiltonian_dense: n_qubits must be in [1, 12]");
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  MatrixXc h = MatrixXc::Zero(dim, dim);
  for (std::size_t s = 0; s < dim; ++s) {
    for (int q = 0; q + 1 < n_qubits; ++q) {
      const int za = ((s >> bit_of(n_qubits, q)) & 1U) ? -1 : 1;
      const int zb = ((s >> bit_of(n_qubits, q + 1)) & 1U) ? -1 : 1;
      h(s, s) -= coupling_j * za * zb;
    }
    for (int q = 0; q < n_qubits; ++q) {
      h(s ^ (std::size_t{1} << bit_of(n_qubits, q)), s) -= field_g;
    }
  }
  return h;
}

MatrixXc exact_te_unitary(int n_qubits, double theta, double coupling_j, double field_g) {
  if (n_qubits < 1 || n_qubits > 6) {
    throw std::invalid_argument("exact_te_unitary: n_qubits must be in [1, 6], got " +
                                std::to_string(n_qubits));
  }
  const MatrixXc h = tfim_hamiltonian_dense(n_qubits, coupling_j, field_g);
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(h);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("exact_te_unitary: eigendecomposition failed");
  }
  Eigen::VectorXcd phases(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    phases(i) = std::polar(1.0, -theta * es.eigenvalues()(i));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace aiqt
