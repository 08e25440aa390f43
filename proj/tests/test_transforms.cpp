#include "aiqt/transforms.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace aiqt;
using oracle::Mat;

namespace {

constexpr double kPi = std::numbers::pi;

int count_hadamards(const Circuit& c) {
  int k = 0;
  for (const auto& g : c.gates()) k += std::holds_alternative<gate::Hadamard>(g) ? 1 : 0;
  return k;
}

double unitarity_defect(const Mat& u) {
  return (u.adjoint() * u - Mat::Identity(u.rows(), u.cols())).norm();
}

}  // namespace

TEST_CASE("single-qubit QFT interpolation is one Hadamard") {
  for (double theta : {0.0, 1.0, 2 * kPi}) {
    const Circuit c = build_qft_interp(1, theta);
    CHECK(c.size() == 1);
    CHECK(count_hadamards(c) == 1);
  }
  CHECK(build_fixed_qft(1).size() == 1);
  CHECK_THROWS_AS(build_qft_interp(0, 1.0), std::invalid_argument);
}

TEST_CASE("theta = 0 recovers the Hadamard transform") {
  const Mat u = circuit_to_dense_unitary(build_qft_interp(3, 0.0));
  CHECK((u - oracle::hadamard_n(3)).norm() < 1e-12);
}

TEST_CASE("theta = 2 pi recovers the DFT") {
  Mat expected(4, 4);
  const Complex i(0, 1);
  expected << 1, 1, 1, 1, 1, i, -1, -i, 1, -1, 1, -1, 1, -i, -1, i;
  expected /= 2.0;
  CHECK((circuit_to_dense_unitary(build_qft_interp(2, 2 * kPi)) - expected).norm() < 1e-12);
  CHECK((circuit_to_dense_unitary(build_fixed_qft(2)) - expected).norm() < 1e-12);
  CHECK((circuit_to_dense_unitary(build_fixed_qft(4)) - oracle::dft(4)).norm() < 1e-12);
}

TEST_CASE("fixed QFT equals the interpolation at 2 pi gate for gate") {
  for (int n = 1; n <= 5; ++n) {
    const Circuit a = build_fixed_qft(n);
    const Circuit b = build_qft_interp(n, 2 * kPi);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a.gates()[k].index() == b.gates()[k].index());
      if (auto* p = std::get_if<gate::ControlledPhase>(&a.gates()[k])) {
        CHECK(p->angle == std::get<gate::ControlledPhase>(b.gates()[k]).angle);
      }
      if (auto* p = std::get_if<gate::PartialSwap>(&a.gates()[k])) {
        CHECK(p->angle == std::get<gate::PartialSwap>(b.gates()[k]).angle);
      }
    }
  }
}

TEST_CASE("property: interpolated QFT is unitary, hits both limits and is continuous") {
  for (int n = 1; n <= 5; ++n) {
    for (double theta : {0.0, 0.1, kPi, 2 * kPi, -1.3}) {
      CHECK(unitarity_defect(circuit_to_dense_unitary(build_qft_interp(n, theta))) < 1e-10);
    }
    CHECK((circuit_to_dense_unitary(build_qft_interp(n, 0.0)) - oracle::hadamard_n(n)).norm() <
          1e-12);
    CHECK((circuit_to_dense_unitary(build_qft_interp(n, 2 * kPi)) - oracle::dft(n)).norm() <
          1e-12);
  }
  // ||U(theta + eps) - U(theta)|| is linear in eps.
  const Mat base = circuit_to_dense_unitary(build_qft_interp(4, 1.0));
  std::vector<double> ratios;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const double d = (circuit_to_dense_unitary(build_qft_interp(4, 1.0 + eps)) - base).norm();
    ratios.push_back(d / eps);
  }
  CHECK(ratios[0] > 0.0);
  CHECK(std::abs(ratios[1] / ratios[0] - 1.0) < 0.05);
  CHECK(std::abs(ratios[2] / ratios[1] - 1.0) < 0.005);
}

TEST_CASE("QFT tape slopes match the gate angles") {
  const double theta = 0.77;
  int swaps = 0;
  for (const auto& t : qft_interp_tape(5, theta)) {
    if (auto* p = std::get_if<gate::ControlledPhase>(&t.op)) {
      REQUIRE(t.n_slopes == 1);
      CHECK(t.slopes[0].param == AiqtParam::Theta);
      CHECK(p->angle == doctest::Approx(theta * t.slopes[0].slope).epsilon(1e-15));
      CHECK(t.slopes[0].slope == std::ldexp(1.0, -(std::abs(p->control - p->target) + 1)));
    } else if (auto* s = std::get_if<gate::PartialSwap>(&t.op)) {
      REQUIRE(t.n_slopes == 1);
      CHECK(s->a + s->b == 4);
      CHECK(s->angle == theta * t.slopes[0].slope);
      ++swaps;
    } else {
      CHECK(t.n_slopes == 0);
    }
  }
  CHECK(swaps == 2);
}

TEST_CASE("TFIM time evolution: identity at theta = 0") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int n = 1; n <= 5; ++n) {
    const Mat d = circuit_to_dense_unitary(build_tfim_te(n, 0.0, u(rng), u(rng), 10));
    CHECK((d - Mat::Identity(d.rows(), d.cols())).norm() == 0.0);
  }
}

TEST_CASE("TFIM time evolution with J = 0 is a product of X exponentials") {
  const Mat d = circuit_to_dense_unitary(build_tfim_te(2, 0.3, 0.0, 1.0, 1));
  const Mat x_sum = oracle::on_qubit(2, 0, oracle::pauli_x()) +
                    oracle::on_qubit(2, 1, oracle::pauli_x());
  const Mat expected = oracle::expm(Complex(0, 0.3) * x_sum);
  CHECK((d - expected).norm() < 1e-12);
}

TEST_CASE("TFIM Trotter error decreases with step count") {
  const Mat exact = exact_te_unitary(3, 0.5, 0.7, 1.1);
  double prev = 1e9;
  for (int steps : {10, 20, 40}) {
    const double err =
        (circuit_to_dense_unitary(build_tfim_te(3, 0.5, 0.7, 1.1, steps)) - exact).norm();
    CHECK(err < prev);
    prev = err;
  }
  for (int m : {5, 10, 20}) {
    const double e1 =
        (circuit_to_dense_unitary(build_tfim_te(3, 0.5, 0.7, 1.1, m)) - exact).norm();
    const double e2 =
        (circuit_to_dense_unitary(build_tfim_te(3, 0.5, 0.7, 1.1, 2 * m)) - exact).norm();
    CHECK(e2 < e1);
  }
  CHECK_THROWS_AS(build_tfim_te(3, 0.5, 0.7, 1.1, 0), std::invalid_argument);
}

TEST_CASE("TFIM circuit structure") {
  const Circuit c = build_tfim_te(3, 1.0, 0.5, 2.0, 2);
  // per step: 3 RX + 2 bonds * (CNOT, RZ, CNOT)
  REQUIRE(c.size() == 2 * (3 + 6));
  const auto& rx = std::get<gate::RX>(c.gates()[0]);
  CHECK(rx.angle == doctest::Approx(-2.0 * 2.0 * 0.5));
  const auto& rz = std::get<gate::RZ>(c.gates()[4]);
  CHECK(rz.qubit == 1);
  CHECK(rz.angle == doctest::Approx(-2.0 * 0.5 * 0.5));
  CHECK(std::holds_alternative<gate::CNOT>(c.gates()[3]));
  CHECK(std::holds_alternative<gate::CNOT>(c.gates()[5]));
}

TEST_CASE("exact_te_unitary examples") {
  CHECK((exact_te_unitary(3, 0.0, 0.4, 0.9) - Mat::Identity(8, 8)).norm() < 1e-12);
  CHECK((exact_te_unitary(3, 1.7, 0.0, 0.0) - Mat::Identity(8, 8)).norm() < 1e-12);
  // H = -Z1 Z2: eigenvalue -1 on |00>,|11>, +1 on |01>,|10>.
  const Mat u = exact_te_unitary(2, kPi / 2, 1.0, 0.0);
  const Complex plus = std::polar(1.0, kPi / 2);
  const Complex minus = std::polar(1.0, -kPi / 2);
  Mat expected = Mat::Zero(4, 4);
  expected(0, 0) = plus;
  expected(1, 1) = minus;
  expected(2, 2) = minus;
  expected(3, 3) = plus;
  CHECK((u - expected).norm() < 1e-12);
  // Against the Taylor-series oracle.
  const Mat h = oracle::tfim(4, 0.7, 1.1);
  CHECK((exact_te_unitary(4, 0.5, 0.7, 1.1) - oracle::expm(Complex(0, -0.5) * h)).norm() < 1e-11);
  CHECK((tfim_hamiltonian_dense(4, 0.7, 1.1) - h).norm() == 0.0);
  CHECK_THROWS_AS(exact_te_unitary(7, 0.1, 1, 1), std::invalid_argument);
}

TEST_CASE("AiqtSpec validation") {
  CHECK_NOTHROW(validate(AiqtSpec{QftInterp{1.0}}));
  CHECK_THROWS_AS(validate(AiqtSpec{QftInterp{std::nan("")}}), std::invalid_argument);
  CHECK_THROWS_AS(validate(AiqtSpec{TfimTimeEvolution{1.0, 1.0, 1.0, 0}}), std::invalid_argument);
  CHECK(parameter_count(AiqtSpec{QftInterp{}}) == 1);
  CHECK(parameter_count(AiqtSpec{TfimTimeEvolution{}}) == 3);
}
