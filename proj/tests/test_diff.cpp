#include "aiqt/diff.hpp"

#include "samples.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace aiqt;
using testing_support::random_batch;
using testing_support::random_model;

namespace {

constexpr ModelKind kKinds[] = {ModelKind::Qnn, ModelKind::QftQnn, ModelKind::AiqtQft,
                                ModelKind::AiqtTe};

double max_rel_error(const std::vector<double>& a, const std::vector<double>& fd) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - fd[i]) / std::max(1.0, std::abs(fd[i])));
  }
  return worst;
}

Matrix4c random_hermitian(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  LayerParams p;
  for (auto& x : p) x = u(rng);
  return layer_generator(p);
}

}  // namespace

TEST_CASE("analytic gradient matches central differences on random instances") {
  std::mt19937_64 rng(31);
  int instances = 0;
  for (int n = 3; n <= 5; ++n) {
    for (ModelKind kind : kKinds) {
      for (int rep = 0; rep < 2; ++rep) {
        const ModelParams m = random_model(rng, kind, n, 1 + rep);
        const auto batch = random_batch(rng, n, 4);
        const auto lg = loss_and_gradient(m, batch);
        const auto fd = finite_diff_gradient(m, batch, 1e-4);
        CHECK(lg.loss == doctest::Approx(batch_loss(m, batch)).epsilon(1e-12));
        const auto a = lg.grad.flat();
        REQUIRE(a.size() == m.parameter_count());
        CHECK(max_rel_error(a, fd.flat()) < 1e-5);
        ++instances;
      }
    }
  }
  CHECK(instances >= 20);
}

TEST_CASE("gradient shape follows the model kind") {
  std::mt19937_64 rng(32);
  const auto batch = random_batch(rng, 3, 2);
  const auto qnn = loss_and_gradient(random_model(rng, ModelKind::Qnn, 3, 2), batch).grad;
  CHECK_FALSE(qnn.d_theta);
  CHECK(qnn.d_phi.size() == 2);
  const auto fixed = loss_and_gradient(random_model(rng, ModelKind::QftQnn, 3, 2), batch).grad;
  CHECK_FALSE(fixed.d_theta);
  const auto qft = loss_and_gradient(random_model(rng, ModelKind::AiqtQft, 3, 2), batch).grad;
  CHECK(qft.d_theta);
  CHECK_FALSE(qft.d_coupling_j);
  const auto te = loss_and_gradient(random_model(rng, ModelKind::AiqtTe, 3, 2), batch).grad;
  CHECK(te.d_theta);
  CHECK(te.d_coupling_j);
  CHECK(te.d_field_g);
}

TEST_CASE("TE gradient at theta = 0 and the flat J direction") {
  std::mt19937_64 rng(33);
  ModelParams m = random_model(rng, ModelKind::AiqtTe, 4, 2);
  auto& te = std::get<TfimTimeEvolution>(*m.aiqt);
  te.theta = 0.0;
  const auto batch = random_batch(rng, 4, 3);
  const auto lg = loss_and_gradient(m, batch);
  const auto fd = finite_diff_gradient(m, batch, 1e-4);
  CHECK(max_rel_error(lg.grad.flat(), fd.flat()) < 1e-5);
  // theta = 0 makes every rotation angle vanish regardless of J and g.
  CHECK(std::abs(*lg.grad.d_coupling_j) < 1e-9);
  CHECK(std::abs(*lg.grad.d_field_g) < 1e-9);
  CHECK(std::abs(*fd.d_coupling_j) < 1e-9);
}

TEST_CASE("perfect fit gives zero loss and a finite gradient") {
  // theta = 0 TE transform and zero QNN: |0000> always reads outcome 00.
  ModelParams m = make_model(ModelKind::AiqtTe, 4, 1, 0.0, TfimTimeEvolution{0.0, 1.0, 1.0, 2});
  std::vector<LabeledSample> batch{
      {{}, PureState(4), PhaseLabel::Trivial, 0.0, one_hot(PhaseLabel::Trivial)},
      {{}, basis_state(4, 1), PhaseLabel::Trivial, 0.0, one_hot(PhaseLabel::Trivial)}};
  const auto lg = loss_and_gradient(m, batch);
  CHECK(lg.loss == 0.0);
  for (double g : lg.grad.flat()) CHECK(std::isfinite(g));
}

TEST_CASE("theta gradient vanishes when every controlled phase sees no |11> amplitude") {
  // n = 2 on |00>: the only controlled phase runs before qubit 1 leaves |0>.
  ModelParams m = make_model(ModelKind::AiqtQft, 2, 0, 1.3, TfimTimeEvolution{});
  std::vector<LabeledSample> batch{
      {{}, PureState(2), PhaseLabel::SB, 0.0, one_hot(PhaseLabel::SB)}};
  const auto lg = loss_and_gradient(m, batch);
  CHECK(std::abs(*lg.grad.d_theta) < 1e-15);
}

TEST_CASE("shared layer gradient is the sum over its pairs") {
  // At n = 4 the first layer acts on (0,1) and (2,3) with the same unitary.
  std::mt19937_64 rng(34);
  const ModelParams m4 = random_model(rng, ModelKind::Qnn, 4, 1);
  const auto batch4 = random_batch(rng, 4, 3);
  const auto a4 = loss_and_gradient(m4, batch4).grad.flat();
  CHECK(max_rel_error(a4, finite_diff_gradient(m4, batch4, 1e-4).flat()) < 1e-5);
  // A product input makes the loss additive in the pair readout: with targets
  // (0,1) on a product state only the first pair matters, so the n = 4 and
  // n = 2 gradients coincide.
  std::vector<Complex> left = oracle::random_amplitudes(rng, 2);
  std::vector<Complex> right = oracle::random_amplitudes(rng, 2);
  std::vector<Complex> prod;
  for (auto l : left) {
    for (auto r : right) prod.push_back(l * r);
  }
  ModelParams m2 = m4;
  m2.n_qubits = 2;
  const std::vector<LabeledSample> b2{{{}, PureState(2, left), PhaseLabel::SPT, 0.0,
                                       one_hot(PhaseLabel::SPT)}};
  const std::vector<LabeledSample> b4{{{}, PureState(4, prod), PhaseLabel::SPT, 0.0,
                                       one_hot(PhaseLabel::SPT)}};
  const auto g2 = loss_and_gradient(m2, b2).grad.flat();
  const auto g4 = loss_and_gradient(m4, b4).grad.flat();
  for (std::size_t i = 0; i < g2.size(); ++i) CHECK(std::abs(g2[i] - g4[i]) < 1e-12);
}

TEST_CASE("finite differences converge at second order") {
  std::mt19937_64 rng(35);
  const ModelParams m = random_model(rng, ModelKind::AiqtQft, 3, 1);
  const auto batch = random_batch(rng, 3, 2);
  const auto a = loss_and_gradient(m, batch).grad.flat();
  auto err = [&](double h) {
    const auto fd = finite_diff_gradient(m, batch, h).flat();
    double e = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - fd[i]));
    return e;
  };
  const double ratio = err(1e-3) / err(1e-4);
  CHECK(ratio > 50.0);
  CHECK(ratio < 200.0);
  const auto f1 = finite_diff_gradient(m, batch, 1e-4).flat();
  const auto f2 = finite_diff_gradient(m, batch, 1e-4).flat();
  CHECK(f1 == f2);
  CHECK_THROWS_AS(finite_diff_gradient(m, batch, 0.0), std::invalid_argument);
}

TEST_CASE("loss_and_gradient rejects bad batches") {
  std::mt19937_64 rng(36);
  const ModelParams m = random_model(rng, ModelKind::Qnn, 3, 1);
  CHECK_THROWS_AS(loss_and_gradient(m, std::vector<LabeledSample>{}), std::invalid_argument);
  CHECK_THROWS_AS(loss_and_gradient(m, random_batch(rng, 4, 1)), std::invalid_argument);
}

TEST_CASE("frechet_exp examples and cross-checks") {
  std::mt19937_64 rng(37);
  const Matrix4c h = random_hermitian(rng, 1.0);
  CHECK(frechet_exp(h, Matrix4c::Zero()).norm() == 0.0);
  const Matrix4c dh = random_hermitian(rng, 1.0);
  CHECK((frechet_exp(Matrix4c::Zero(), dh) - Complex(0, -1) * dh).norm() < 1e-14);

  for (int trial = 0; trial < 20; ++trial) {
    const Matrix4c a = random_hermitian(rng, 1.0);
    const Matrix4c da = random_hermitian(rng, 1.0);
    const double step = 1e-5;
    const Matrix4c fd = (oracle::expm(Complex(0, -1) * oracle::Mat(a + step * da)) -
                         oracle::expm(Complex(0, -1) * oracle::Mat(a - step * da))) /
                        (2 * step);
    const Matrix4c block = frechet_exp(a, da);
    CHECK((block - fd).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((block - frechet_exp_loewner(a, da)).cwiseAbs().maxCoeff() < 1e-12);
  }
  // Degenerate spectrum exercises the divided-difference limit.
  Matrix4c deg = Matrix4c::Identity();
  const Matrix4c d2 = random_hermitian(rng, 1.0);
  CHECK((frechet_exp(deg, d2) - frechet_exp_loewner(deg, d2)).cwiseAbs().maxCoeff() < 1e-12);

  Matrix4c bad = Matrix4c::Zero();
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(frechet_exp(bad, dh), std::invalid_argument);
  CHECK_THROWS_AS(frechet_exp_loewner(h, bad), std::invalid_argument);
}
