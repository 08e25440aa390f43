#include "aiqt/spinchain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace aiqt {
namespace {

inline int z_of(std::size_t s, int n, int site) {
  return ((s >> bit_of(n, site)) & 1U) ? -1 : 1;
}

// Sign so that the largest-magnitude amplitude is positive. Magnitudes within
// a relative 1e-9 of the maximum count as ties and the lowest index wins.
PureState phase_fixed(int n, const Eigen::VectorXd& v) {
  const double vmax = v.cwiseAbs().maxCoeff();
  Eigen::Index pick = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= vmax * (1.0 - 1e-9)) {
      pick = i;
      break;
    }
  }
  const double sign = v(pick) < 0 ? -1.0 : 1.0;
  const double scale = sign / v.norm();
  std::vector<Complex> amps(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) amps[i] = Complex(scale * v(i), 0.0);
  return PureState(n, std::move(amps));
}

}  // namespace

void validate_simplex(const CouplingPoint& c) {
  for (double g : {c.g_zxz, c.g_x, c.g_zz}) {
    if (!std::isfinite(g) || g < 0.0) {
      throw std::invalid_argument("coupling point: couplings must be finite and non-negative");
    }
  }
  const double sum = c.g_zxz + c.g_x + c.g_zz;
  if (std::abs(sum - kCouplingSum) > 1e-9) {
    throw std::invalid_argument("coupling point: couplings sum to " + std::to_string(sum) +
                                ", expected 4");
  }
}

int outcome_index(PhaseLabel label) { return static_cast<int>(label); }

PhaseLabel label_from_outcome(int outcome) {
  if (outcome < 0 || outcome >= kOutcomes) {
    throw std::invalid_argument("outcome index " + std::to_string(outcome) + " out of range");
  }
  return static_cast<PhaseLabel>(outcome);
}

std::string_view label_name(PhaseLabel label) {
  switch (label) {
    case PhaseLabel::Trivial:
      return "Trivial";
    case PhaseLabel::SB:
      return "SB";
    case PhaseLabel::SPT:
      return "SPT";
    case PhaseLabel::Fail:
      return "Fail";
  }
  return "?";
}

PhaseLabel parse_label(std::string_view name) {
  for (auto l : {PhaseLabel::Trivial, PhaseLabel::SB, PhaseLabel::SPT, PhaseLabel::Fail}) {
    if (label_name(l) == name) return l;
  }
  throw std::invalid_argument("unknown phase label '" + std::string(name) + "'");
}

std::array<double, kOutcomes> one_hot(PhaseLabel label) {
  std::array<double, kOutcomes> v{};
  v[outcome_index(label)] = 1.0;
  return v;
}

ClusterIsingHamiltonian::ClusterIsingHamiltonian(int n_sites, CouplingPoint couplings)
    : n_(n_sites), c_(couplings) {
  if (n_sites < 2 || n_sites > kMaxQubits) {
    throw std::invalid_argument("build_hamiltonian: need 2 <= N <= " +
                                std::to_string(kMaxQubits) + ", got " +
                                std::to_string(n_sites));
  }
  for (double g : {c_.g_zxz, c_.g_x, c_.g_zz}) {
    if (!std::isfinite(g)) throw std::invalid_argument("build_hamiltonian: non-finite coupling");
  }
  diag_.resize(dim());
  for (std::size_t s = 0; s < dim(); ++s) {
    int zz = 0;
    for (int i = 0; i + 1 < n_; ++i) zz += z_of(s, n_, i) * z_of(s, n_, i + 1);
    diag_[s] = -c_.g_zz * zz;
  }
}

void ClusterIsingHamiltonian::apply(std::span<const double> in, std::span<double> out) const {
  if (in.size() != dim() || out.size() != dim()) {
    throw std::invalid_argument("ClusterIsingHamiltonian::apply: length mismatch");
  }
  for (std::size_t s = 0; s < dim(); ++s) out[s] = diag_[s] * in[s];
  // Off-diagonal terms: <s ^ flip_i| X_i |s> = 1, ZXZ picks up z_{i-1} z_{i+1}
  // of |s> (the flipped site is not one of the Z sites).
  for (int i = 0; i < n_; ++i) {
    const std::size_t flip = std::size_t{1} << bit_of(n_, i);
    const bool interior = i > 0 && i + 1 < n_;
    for (std::size_t s = 0; s < dim(); ++s) {
      double amp = -c_.g_x;
      if (interior) amp += c_.g_zxz * z_of(s, n_, i - 1) * z_of(s, n_, i + 1);
      out[s ^ flip] += amp * in[s];
    }
  }
}

Eigen::MatrixXd ClusterIsingHamiltonian::dense() const {
  if (n_ > 12) throw std::invalid_argument("dense Hamiltonian limited to 12 sites");
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim(), dim());
  for (std::size_t s = 0; s < dim(); ++s) {
    h(s, s) = diag_[s];
    for (int i = 0; i < n_; ++i) {
      const std::size_t t = s ^ (std::size_t{1} << bit_of(n_, i));
      double amp = -c_.g_x;
      if (i > 0 && i + 1 < n_) amp += c_.g_zxz * z_of(s, n_, i - 1) * z_of(s, n_, i + 1);
      h(t, s) += amp;
    }
  }
  return h;
}

ClusterIsingHamiltonian build_hamiltonian(int n_sites, CouplingPoint couplings) {
  return ClusterIsingHamiltonian(n_sites, couplings);
}

GroundState ground_state_dense(const ClusterIsingHamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.dense());
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("ground_state_dense: eigensolver did not converge for N=" +
                             std::to_string(h.n_sites()));
  }
  return {es.eigenvalues()(0), phase_fixed(h.n_sites(), es.eigenvectors().col(0))};
}

GroundState ground_state_lanczos(const ClusterIsingHamiltonian& h, double tol,
                                 int max_iterations) {
  const auto dim = static_cast<Eigen::Index>(h.dim());
  const int m_max = static_cast<int>(std::min<Eigen::Index>(dim, max_iterations));

  // Fixed pseudo-random start so the result is a deterministic function of H.
  Rng rng(0x5eed1a2c2b1dULL);
  Eigen::VectorXd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = rng.uniform(-1.0, 1.0);
  v.normalize();

  Eigen::MatrixXd basis(dim, m_max);
  std::vector<double> alpha;
  std::vector<double> beta;
  Eigen::VectorXd w(dim);
  double ritz = 0.0;
  Eigen::VectorXd ritz_vec;
  double residual_estimate = std::numeric_limits<double>::infinity();

  for (int j = 0; j < m_max; ++j) {
    basis.col(j) = v;
    h.apply({basis.col(j).data(), static_cast<std::size_t>(dim)},
            {w.data(), static_cast<std::size_t>(dim)});
    const double a = v.dot(w);
    alpha.push_back(a);
    // Full reorthogonalization, two passes.
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXd proj = basis.leftCols(j + 1).transpose() * w;
      w.noalias() -= basis.leftCols(j + 1) * proj;
    }
    const double b = w.norm();

    const bool check = (j + 1) % 5 == 0 || j + 1 == m_max || b < 1e-13;
    if (check) {
      const int m = j + 1;
      Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
      Eigen::VectorXd sub = Eigen::VectorXd::Zero(std::max(m - 1, 0));
      for (int k = 0; k + 1 < m; ++k) sub(k) = beta[k];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      ritz = tri.eigenvalues()(0);
      ritz_vec = tri.eigenvectors().col(0);
      residual_estimate = b * std::abs(ritz_vec(m - 1));
      if (residual_estimate < 0.1 * tol * std::max(1.0, std::abs(ritz)) || b < 1e-13) break;
    }
    beta.push_back(b);
    v = w / b;
  }

  const auto m = ritz_vec.size();
  Eigen::VectorXd x = basis.leftCols(m) * ritz_vec;
  x.normalize();
  Eigen::VectorXd hx(dim);
  h.apply({x.data(), static_cast<std::size_t>(dim)}, {hx.data(), static_cast<std::size_t>(dim)});
  const double energy = x.dot(hx);
  const double residual = (hx - energy * x).norm();
  if (!(residual < tol * std::max(1.0, std::abs(energy)))) {
    throw std::runtime_error("ground_state_lanczos: not converged after " + std::to_string(m) +
                             " iterations (N=" + std::to_string(h.n_sites()) +
                             ", residual=" + std::to_string(residual) +
                             ", energy=" + std::to_string(energy) + ")");
  }
  return {energy, phase_fixed(h.n_sites(), x)};
}

GroundState ground_state(const ClusterIsingHamiltonian& h) {
  return h.n_sites() <= kDenseEdMaxSites ? ground_state_dense(h) : ground_state_lanczos(h);
}

std::optional<PhaseLabel> label_point(const CouplingPoint& c, double tie_band) {
  validate_simplex(c);
  const std::array<std::pair<double, PhaseLabel>, 3> ranked_init{
      {{c.g_zxz, PhaseLabel::SPT}, {c.g_x, PhaseLabel::Trivial}, {c.g_zz, PhaseLabel::SB}}};
  auto ranked = ranked_init;
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  if (ranked[0].first - ranked[1].first < tie_band) return std::nullopt;
  return ranked[0].second;
}

CouplingPoint sample_simplex(Rng& rng) {
  double e[3];
  for (double& x : e) x = -std::log1p(-rng.uniform());
  const double total = e[0] + e[1] + e[2];
  return {kCouplingSum * e[0] / total, kCouplingSum * e[1] / total,
          kCouplingSum * e[2] / total};
}

LabeledSample make_sample(int n_sites, const CouplingPoint& c, PhaseLabel label) {
  GroundState gs = ground_state(build_hamiltonian(n_sites, c));
  return LabeledSample{c, std::move(gs.state), label, gs.energy, one_hot(label)};
}

std::vector<LabeledSample> sample_dataset(int n_sites, int total, std::uint64_t seed) {
  if (total <= 0 || total % 3 != 0) {
    throw std::invalid_argument("sample_dataset: total must be a positive multiple of 3, got " +
                                std::to_string(total));
  }
  const int quota = total / 3;
  const long long max_draws = 1000LL * total + 1000;
  Rng rng(seed);
  std::array<int, 3> counts{};
  std::vector<std::pair<CouplingPoint, PhaseLabel>> accepted;
  accepted.reserve(total);
  long long draws = 0;
  while (static_cast<int>(accepted.size()) < total) {
    if (++draws > max_draws) {
      throw std::runtime_error("sample_dataset: class quotas not met after " +
                               std::to_string(max_draws) + " draws");
    }
    const CouplingPoint c = sample_simplex(rng);
    const auto label = label_point(c);
    if (!label) continue;
    int& count = counts[outcome_index(*label)];
    if (count >= quota) continue;
    ++count;
    accepted.emplace_back(c, *label);
  }
  std::vector<LabeledSample> out;
  out.reserve(accepted.size());
  for (const auto& [c, label] : accepted) out.push_back(make_sample(n_sites, c, label));
  return out;
}

Split stratified_split(std::span<const LabeledSample> dataset, double train_fraction,
                       std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("stratified_split: train fraction must be in (0, 1)");
  }
  std::array<std::vector<std::size_t>, kOutcomes> by_class;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    by_class[outcome_index(dataset[i].label)].push_back(i);
  }
  Rng rng(seed);
  std::vector<char> in_train(dataset.size(), 0);
  for (auto& idx : by_class) {
    rng.shuffle(idx);
    const auto n_train = static_cast<std::size_t>(std::lround(train_fraction * idx.size()));
    for (std::size_t k = 0; k < n_train; ++k) in_train[idx[k]] = 1;
  }
  Split split;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    (in_train[i] ? split.train : split.test).push_back(dataset[i]);
  }
  return split;
}

}  // namespace aiqt
