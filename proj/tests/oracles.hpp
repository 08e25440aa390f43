#pragma once

// Test-only reference constructions, written independently of the library's
// kernels: operators are built from Kronecker products of 2x2 matrices and
// exponentials by Taylor series with scaling and squaring.

#include "aiqt/statevec.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using aiqt::Complex;
using Mat = Eigen::MatrixXcd;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Mat eye(int dim) { return Mat::Identity(dim, dim); }
inline Mat pauli_x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Mat pauli_z() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
inline Mat hadamard() {
  Mat m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}
inline Mat proj(int bit) {
  Mat m = Mat::Zero(2, 2);
  m(bit, bit) = 1;
  return m;
}

/// Single-qubit operator on `q` of an n-qubit register; the first Kronecker
/// factor is qubit 0.
inline Mat on_qubit(int n, int q, const Mat& op) {
  Mat out = Mat::Identity(1, 1);
  for (int k = 0; k < n; ++k) out = kron(out, k == q ? op : eye(2));
  return out;
}

/// Product of single-qubit operators on distinct qubits.
inline Mat on_qubits(int n, const std::vector<std::pair<int, Mat>>& ops) {
  Mat out = Mat::Identity(1, 1);
  for (int k = 0; k < n; ++k) {
    Mat f = eye(2);
    for (const auto& [q, op] : ops) {
      if (q == k) f = op;
    }
    out = kron(out, f);
  }
  return out;
}

inline Mat hadamard_n(int n) {
  Mat out = Mat::Identity(1, 1);
  for (int k = 0; k < n; ++k) out = kron(out, hadamard());
  return out;
}

/// DFT_n[j][k] = exp(2 pi i j k / 2^n) / 2^{n/2}.
inline Mat dft(int n) {
  const int dim = 1 << n;
  Mat m(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k < dim; ++k) {
      const double ang = 2.0 * std::numbers::pi * static_cast<double>((j * k) % dim) / dim;
      m(j, k) = std::polar(1.0 / std::sqrt(static_cast<double>(dim)), ang);
    }
  }
  return m;
}

/// exp(A) by scaling and squaring around a 30-term Taylor series.
inline Mat expm(const Mat& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (std::ldexp(norm, -squarings) > 0.5) ++squarings;
  const Mat x = a * std::ldexp(1.0, -squarings);
  Mat term = Mat::Identity(a.rows(), a.cols());
  Mat sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = (term * x) / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

/// -J sum Z_i Z_{i+1} - g sum X_i from Kronecker products.
inline Mat tfim(int n, double j, double g) {
  const int dim = 1 << n;
  Mat h = Mat::Zero(dim, dim);
  for (int q = 0; q + 1 < n; ++q) h -= j * on_qubits(n, {{q, pauli_z()}, {q + 1, pauli_z()}});
  for (int q = 0; q < n; ++q) h -= g * on_qubit(n, q, pauli_x());
  return h;
}

/// Cluster-Ising Hamiltonian from Kronecker products (sites numbered from 0).
inline Mat cluster_ising(int n, double g_zxz, double g_x, double g_zz) {
  const int dim = 1 << n;
  Mat h = Mat::Zero(dim, dim);
  for (int i = 1; i + 1 < n; ++i) {
    h += g_zxz * on_qubits(n, {{i - 1, pauli_z()}, {i, pauli_x()}, {i + 1, pauli_z()}});
  }
  for (int i = 0; i < n; ++i) h -= g_x * on_qubit(n, i, pauli_x());
  for (int i = 0; i + 1 < n; ++i) h -= g_zz * on_qubits(n, {{i, pauli_z()}, {i + 1, pauli_z()}});
  return h;
}

inline std::vector<Complex> random_amplitudes(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> nd;
  std::vector<Complex> v(std::size_t{1} << n);
  double s = 0.0;
  for (auto& z : v) {
    z = Complex(nd(rng), nd(rng));
    s += std::norm(z);
  }
  for (auto& z : v) z /= std::sqrt(s);
  return v;
}

inline aiqt::PureState random_state(std::mt19937_64& rng, int n) {
  return aiqt::PureState(n, random_amplitudes(rng, n));
}

inline double frob(const Mat& a) { return a.norm(); }

}  // namespace oracle
