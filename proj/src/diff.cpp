#include "aiqt/diff.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>
#include <string>

namespace aiqt {
namespace {

using Matrix8c = Eigen::Matrix<Complex, 8, 8>;

void check_hermitian(const Matrix4c& m, const char* what) {
  if (!((m - m.adjoint()).norm() < 1e-10)) {
    throw std::invalid_argument(std::string("frechet_exp: ") + what + " is not Hermitian");
  }
}

void check_batch(const CompiledModel& model, std::span<const LabeledSample> batch) {
  if (batch.empty()) throw std::invalid_argument("empty batch");
  const std::size_t outcomes = std::size_t{1} << model.params().target_qubits.size();
  for (const auto& s : batch) {
    if (s.state.n_qubits() != model.params().n_qubits) {
      throw std::invalid_argument("sample has " + std::to_string(s.state.n_qubits()) +
                                  " qubits, model expects " +
                                  std::to_string(model.params().n_qubits));
    }
    if (s.one_hot.size() != outcomes) {
      throw std::invalid_argument("label length does not match the number of readout outcomes");
    }
  }
}

// Outcome index of basis state i for the given target bit positions.
inline std::size_t outcome_of(std::size_t i, std::span<const int> bits) {
  std::size_t o = 0;
  for (int b : bits) o = (o << 1) | ((i >> b) & 1U);
  return o;
}

// Per-batch derived data shared by every sample.
struct AdjointPlan {
  std::vector<GateOp> inverse;                  // adjoint of every gate
  std::vector<std::array<Matrix4c, kGenerators>> layer_derivs;  // dU/dphi_i per layer
  std::vector<int> target_bits;
};

AdjointPlan make_plan(const CompiledModel& model) {
  AdjointPlan plan;
  const int n = model.params().n_qubits;
  for (const auto& g : model.gates()) plan.inverse.push_back(adjoint(g.op));
  const auto& basis = gellmann_basis();
  for (int l = 0; l < model.params().qnn.n_layers(); ++l) {
    const Matrix4c h = layer_generator(model.params().qnn.layers[l]);
    std::array<Matrix4c, kGenerators> d;
    for (int i = 0; i < kGenerators; ++i) d[i] = frechet_exp(h, basis[i]);
    plan.layer_derivs.push_back(d);
  }
  for (int q : model.params().target_qubits) plan.target_bits.push_back(bit_of(n, q));
  return plan;
}

// Accumulators for one batch, in flat AIQT order plus one sensitivity matrix
// M_l(a, b) = sum conj(lambda_a) psi_b per QNN layer.
struct Accumulator {
  double loss = 0.0;
  std::array<double, 3> aiqt{};
  std::vector<Matrix4c> layer_m;
};

// <lambda| d U / d angle |psi_before> contributions, written in terms of the
// state after the gate.
double angle_derivative(const GateOp& op, int n, std::span<const Complex> lambda,
                        std::span<const Complex> after) {
  if (const auto* g = std::get_if<gate::ControlledPhase>(&op)) {
    // dU/da = i P_11 U
    const std::size_t both =
        (std::size_t{1} << bit_of(n, g->control)) | (std::size_t{1} << bit_of(n, g->target));
    Complex s = 0.0;
    for (std::size_t i = 0; i < after.size(); ++i) {
      if ((i & both) == both) s += std::conj(lambda[i]) * after[i];
    }
    return -2.0 * s.imag();
  }
  if (const auto* g = std::get_if<gate::PartialSwap>(&op)) {
    // dU/da = i P_anti U; P_anti maps (u, v) on |..1..0..>, |..0..1..> to
    // ((u - v) / 2, (v - u) / 2).
    const std::size_t x = std::size_t{1} << bit_of(n, g->a);
    const std::size_t y = std::size_t{1} << bit_of(n, g->b);
    Complex s = 0.0;
    for (std::size_t i = 0; i < after.size(); ++i) {
      if ((i & (x | y)) != x) continue;
      const std::size_t j = (i & ~x) | y;
      const Complex d = 0.5 * (after[i] - after[j]);
      s += std::conj(lambda[i]) * d - std::conj(lambda[j]) * d;
    }
    return -2.0 * s.imag();
  }
  if (const auto* g = std::get_if<gate::RX>(&op)) {
    // dU/da = -(i/2) X U
    const std::size_t flip = std::size_t{1} << bit_of(n, g->qubit);
    Complex s = 0.0;
    for (std::size_t i = 0; i < after.size(); ++i) s += std::conj(lambda[i]) * after[i ^ flip];
    return s.imag();
  }
  if (const auto* g = std::get_if<gate::RZ>(&op)) {
    // dU/da = -(i/2) Z U
    const std::size_t mask = std::size_t{1} << bit_of(n, g->qubit);
    Complex s = 0.0;
    for (std::size_t i = 0; i < after.size(); ++i) {
      const Complex t = std::conj(lambda[i]) * after[i];
      s += (i & mask) ? -t : t;
    }
    return s.imag();
  }
  throw std::logic_error("angle_derivative: gate kind carries no angle");
}

void accumulate_layer(const gate::TwoQubitUnitary& g, int n, std::span<const Complex> lambda,
                      std::span<const Complex> before, Matrix4c& m) {
  const std::size_t f = std::size_t{1} << bit_of(n, g.first);
  const std::size_t s = std::size_t{1} << bit_of(n, g.second);
  for (std::size_t i0 = 0; i0 < before.size(); ++i0) {
    if (i0 & (f | s)) continue;
    const std::size_t idx[4] = {i0, i0 | s, i0 | f, i0 | f | s};
    for (int a = 0; a < 4; ++a) {
      const Complex la = std::conj(lambda[idx[a]]);
      for (int b = 0; b < 4; ++b) m(a, b) += la * before[idx[b]];
    }
  }
}

// Forward with a cached state after every gate, loss, then the reverse sweep.
void sample_adjoint(const CompiledModel& model, const AdjointPlan& plan,
                    const LabeledSample& sample, std::vector<std::vector<Complex>>& cache,
                    std::vector<Complex>& lambda, Accumulator& acc) {
  const int n = model.params().n_qubits;
  const auto gates = model.gates();
  const std::size_t dim = sample.state.dim();
  cache.resize(gates.size() + 1);
  cache[0].assign(sample.state.amplitudes().begin(), sample.state.amplitudes().end());
  for (std::size_t k = 0; k < gates.size(); ++k) {
    cache[k + 1] = cache[k];
    apply_unchecked(cache[k + 1], n, gates[k].op);
  }
  const auto& out = cache.back();

  std::vector<double> p(std::size_t{1} << plan.target_bits.size(), 0.0);
  for (std::size_t i = 0; i < dim; ++i) p[outcome_of(i, plan.target_bits)] += std::norm(out[i]);
  acc.loss += cross_entropy(p, sample.one_hot);

  // lambda = dL / d conj(psi_out) = sum_o (dL/dp_o) P_o psi_out
  std::vector<double> dl_dp(p.size(), 0.0);
  for (std::size_t o = 0; o < p.size(); ++o) {
    if (sample.one_hot[o] != 0.0 && p[o] > kProbabilityFloor) dl_dp[o] = -sample.one_hot[o] / p[o];
  }
  lambda.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) lambda[i] = dl_dp[outcome_of(i, plan.target_bits)] * out[i];

  for (std::size_t k = gates.size(); k-- > 0;) {
    const ModelGate& g = gates[k];
    if (g.n_slopes > 0) {
      const double d = angle_derivative(g.op, n, lambda, cache[k + 1]);
      for (int s = 0; s < g.n_slopes; ++s) {
        acc.aiqt[static_cast<int>(g.slopes[s].param)] += g.slopes[s].slope * d;
      }
    }
    if (g.layer >= 0) {
      accumulate_layer(std::get<gate::TwoQubitUnitary>(g.op), n, lambda, cache[k],
                       acc.layer_m[g.layer]);
    }
    apply_unchecked(lambda, n, plan.inverse[k]);
  }
}

}  // namespace

std::vector<double> GradientVector::flat() const {
  std::vector<double> v;
  if (d_theta) v.push_back(*d_theta);
  if (d_coupling_j) v.push_back(*d_coupling_j);
  if (d_field_g) v.push_back(*d_field_g);
  for (const auto& l : d_phi) v.insert(v.end(), l.begin(), l.end());
  return v;
}

GradientVector GradientVector::from_flat(const ModelParams& model,
                                         std::span<const double> values) {
  if (values.size() != model.parameter_count()) {
    throw std::invalid_argument("GradientVector::from_flat: shape mismatch");
  }
  GradientVector g;
  std::size_t k = 0;
  const int globals = model.aiqt_parameter_count();
  if (globals >= 1) g.d_theta = values[k++];
  if (globals == 3) {
    g.d_coupling_j = values[k++];
    g.d_field_g = values[k++];
  }
  g.d_phi.resize(model.qnn.layers.size());
  for (auto& l : g.d_phi) {
    for (auto& x : l) x = values[k++];
  }
  return g;
}

double batch_loss(const CompiledModel& model, std::span<const LabeledSample> batch) {
  check_batch(model, batch);
  double total = 0.0;
  for (const auto& s : batch) total += cross_entropy(model.probabilities(s.state), s.one_hot);
  return total / static_cast<double>(batch.size());
}

double batch_loss(const ModelParams& model, std::span<const LabeledSample> batch) {
  return batch_loss(CompiledModel(model), batch);
}

LossAndGradient loss_and_gradient(const CompiledModel& model,
                                  std::span<const LabeledSample> batch) {
  check_batch(model, batch);
  const ModelParams& params = model.params();
  const AdjointPlan plan = make_plan(model);
  Accumulator acc;
  acc.layer_m.assign(params.qnn.layers.size(), Matrix4c::Zero());
  std::vector<std::vector<Complex>> cache;
  std::vector<Complex> lambda;
  for (const auto& s : batch) sample_adjoint(model, plan, s, cache, lambda, acc);

  const double inv_m = 1.0 / static_cast<double>(batch.size());
  std::vector<double> flat;
  flat.reserve(params.parameter_count());
  for (int i = 0; i < params.aiqt_parameter_count(); ++i) flat.push_back(acc.aiqt[i] * inv_m);
  for (std::size_t l = 0; l < acc.layer_m.size(); ++l) {
    for (int i = 0; i < kGenerators; ++i) {
      // 2 Re sum_ab (dU_i)_ab M_ab
      const Complex t = (plan.layer_derivs[l][i].array() * acc.layer_m[l].array()).sum();
      flat.push_back(2.0 * t.real() * inv_m);
    }
  }
  return {acc.loss * inv_m, GradientVector::from_flat(params, flat)};
}

LossAndGradient loss_and_gradient(const ModelParams& model, std::span<const LabeledSample> batch) {
  return loss_and_gradient(CompiledModel(model), batch);
}

GradientVector finite_diff_gradient(const ModelParams& model,
                                    std::span<const LabeledSample> batch, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite_diff_gradient: step must be positive");
  const std::vector<double> x0 = model.flat();
  std::vector<double> grad(x0.size());
  ModelParams probe = model;
  for (std::size_t i = 0; i < x0.size(); ++i) {
    std::vector<double> x = x0;
    x[i] = x0[i] + h;
    probe.set_flat(x);
    const double up = batch_loss(probe, batch);
    x[i] = x0[i] - h;
    probe.set_flat(x);
    const double down = batch_loss(probe, batch);
    grad[i] = (up - down) / (2.0 * h);
  }
  return GradientVector::from_flat(model, grad);
}

Matrix4c frechet_exp(const Matrix4c& h, const Matrix4c& dh) {
  check_hermitian(h, "H");
  check_hermitian(dh, "dH");
  const Complex mi(0.0, -1.0);
  Matrix8c block = Matrix8c::Zero();
  block.topLeftCorner<4, 4>() = mi * h;
  block.bottomRightCorner<4, 4>() = mi * h;
  block.topRightCorner<4, 4>() = mi * dh;
  const Matrix8c e = block.exp();
  return e.topRightCorner<4, 4>();
}

Matrix4c frechet_exp_loewner(const Matrix4c& h, const Matrix4c& dh) {
  check_hermitian(h, "H");
  check_hermitian(dh, "dH");
  const LayerSpectrum spec = layer_spectrum(h);
  const Complex mi(0.0, -1.0);
  const Matrix4c e = spec.vectors.adjoint() * (mi * dh) * spec.vectors;
  Matrix4c d;
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) {
      // Divided difference of exp at x_j = -i lambda_j, x_k = -i lambda_k:
      // exp((x_j + x_k) / 2) * sinh(delta) / delta with delta = (x_j - x_k) / 2.
      const Complex mid = mi * (0.5 * (spec.values(j) + spec.values(k)));
      const Complex delta = mi * (0.5 * (spec.values(j) - spec.values(k)));
      const Complex ratio = std::abs(delta) < 1e-8 ? Complex(1.0) + delta * delta / 6.0
                                                   : std::sinh(delta) / delta;
      d(j, k) = e(j, k) * std::exp(mid) * ratio;
    }
  }
  return spec.vectors * d * spec.vectors.adjoint();
}

}  // namespace aiqt
