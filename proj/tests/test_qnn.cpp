#include "aiqt/qnn.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace aiqt;
using oracle::Mat;

namespace {

LayerParams random_params(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  LayerParams p;
  for (auto& x : p) x = u(rng);
  return p;
}

}  // namespace

TEST_CASE("Gell-Mann basis: count, trace, Hermiticity and Gram matrix") {
  const auto& g = gellmann_basis();
  CHECK(g.size() == 15);
  for (int i = 0; i < 15; ++i) {
    CHECK(std::abs(g[i].trace()) < 1e-15);
    CHECK((g[i] - g[i].adjoint()).norm() == 0.0);
    for (int j = 0; j < 15; ++j) {
      const Complex t = (g[i] * g[j]).trace();
      CHECK(std::abs(t - Complex(i == j ? 2.0 : 0.0)) < 1e-14);
    }
  }
  // Spot-check the layout.
  CHECK(g[0](0, 1) == Complex(1));
  CHECK(g[0](1, 0) == Complex(1));
  CHECK(g[6](0, 1) == Complex(0, -1));
  CHECK(g[6](1, 0) == Complex(0, 1));
  CHECK(g[12](0, 0) == Complex(1));
  CHECK(g[12](1, 1) == Complex(-1));
  CHECK(std::abs(g[14](3, 3) - Complex(-3 / std::sqrt(6.0))) < 1e-15);
}

TEST_CASE("layer_unitary examples") {
  CHECK((layer_unitary(LayerParams{}) - Matrix4c::Identity()).norm() == 0.0);

  LayerParams p{};
  p[0] = std::numbers::pi / 2;
  Matrix4c expected = Matrix4c::Identity();
  expected(0, 0) = expected(1, 1) = 0.0;
  expected(0, 1) = expected(1, 0) = Complex(0, -1);
  CHECK((layer_unitary(p) - expected).norm() < 1e-12);

  LayerParams bad{};
  bad[3] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(layer_unitary(bad), std::invalid_argument);
}

TEST_CASE("property: layer unitaries are unitary, invert under negation and match expm") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const LayerParams p = random_params(rng, 5.0 / std::sqrt(15.0));
    LayerParams neg;
    for (int i = 0; i < 15; ++i) neg[i] = -p[i];
    const Matrix4c u = layer_unitary(p);
    CHECK((u.adjoint() * u - Matrix4c::Identity()).norm() < 1e-12);
    CHECK((layer_unitary(neg) - u.adjoint()).norm() < 1e-12);
    CHECK((u * layer_unitary(neg) - Matrix4c::Identity()).norm() < 1e-12);
    const Mat h = layer_generator(p);
    CHECK((Mat(u) - oracle::expm(Complex(0, -1) * h)).norm() < 1e-11);
  }
}

TEST_CASE("pairing examples") {
  using P = std::vector<std::pair<int, int>>;
  CHECK(pairing(4, 1) == P{{0, 1}, {2, 3}});
  CHECK(pairing(4, 2) == P{{1, 2}});
  CHECK(pairing(5, 2) == P{{1, 2}, {3, 4}});
  CHECK(pairing(5, 3) == P{{0, 1}, {2, 3}});
  CHECK(pairing(2, 2).empty());
  const P ten = pairing(10, 1);
  CHECK(ten.size() == 5);
  std::vector<int> seen(10, 0);
  for (auto [a, b] : ten) {
    ++seen[a];
    ++seen[b];
  }
  for (int s : seen) CHECK(s == 1);
  CHECK_THROWS_AS(pairing(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(pairing(4, 0), std::invalid_argument);
}

TEST_CASE("apply_qnn examples") {
  std::mt19937_64 rng(22);
  const PureState s = oracle::random_state(rng, 4);

  QnnParams zero{{LayerParams{}, LayerParams{}}};
  PureState same = s;
  apply_qnn(same, zero);
  for (std::size_t i = 0; i < s.dim(); ++i) CHECK(std::abs(same[i] - s[i]) < 1e-15);

  QnnParams one{{random_params(rng, 1.0)}};
  const PureState two = oracle::random_state(rng, 2);
  PureState out = two;
  apply_qnn(out, one);
  Eigen::Vector4cd v;
  for (int i = 0; i < 4; ++i) v(i) = two[i];
  const Eigen::Vector4cd expected = layer_unitary(one.layers[0]) * v;
  for (int i = 0; i < 4; ++i) CHECK(std::abs(out[i] - expected(i)) < 1e-14);

  QnnParams deep{{random_params(rng, 1.0), random_params(rng, 1.0), random_params(rng, 1.0)}};
  PureState r = oracle::random_state(rng, 5);
  apply_qnn(r, deep);
  CHECK(std::abs(r.norm_squared() - 1.0) < 1e-10);
}

TEST_CASE("QNN layer equals the Kronecker product of its pair unitaries") {
  std::mt19937_64 rng(23);
  const QnnParams p{{random_params(rng, 1.0)}};
  const Mat u = layer_unitary(p.layers[0]);
  const Mat expected = oracle::kron(u, u);
  CHECK((circuit_to_dense_unitary(build_qnn(4, p)) - expected).norm() < 1e-12);
}

TEST_CASE("property: disjoint pairs in a layer commute") {
  std::mt19937_64 rng(24);
  const Matrix4c u = layer_unitary(random_params(rng, 1.0));
  Circuit a(6);
  Circuit b(6);
  for (auto [x, y] : pairing(6, 1)) a.add(gate::TwoQubitUnitary{x, y, u});
  const auto pairs = pairing(6, 1);
  for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
    b.add(gate::TwoQubitUnitary{it->first, it->second, u});
  }
  CHECK((circuit_to_dense_unitary(a) - circuit_to_dense_unitary(b)).norm() < 1e-12);
}
