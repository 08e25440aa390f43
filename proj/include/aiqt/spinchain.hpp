#pragma once

// Cluster-Ising chain with open boundaries,
//
//   H = g_zxz sum_{i=2}^{N-1} Z_{i-1} X_i Z_{i+1} - g_x sum_i X_i - g_zz sum_i Z_i Z_{i+1},
//
// its ground states, phase labels and the labeled dataset built from them.
// The Hamiltonian is real in the computational basis, so everything here
// works in real arithmetic and only the final state is complexified.

#include "aiqt/rng.hpp"
#include "aiqt/statevec.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace aiqt {

inline constexpr double kCouplingSum = 4.0;

struct CouplingPoint {
  double g_zxz = 0.0;
  double g_x = 0.0;
  double g_zz = 0.0;
};

/// Throws unless all couplings are finite and non-negative and sum to 4
/// within 1e-9.
void validate_simplex(const CouplingPoint& c);

/// Readout outcome index equals the enum value (Trivial -> 00, SB -> 01,
/// SPT -> 10). Fail (11) is only ever a model output.
enum class PhaseLabel : int { Trivial = 0, SB = 1, SPT = 2, Fail = 3 };

inline constexpr int kOutcomes = 4;

int outcome_index(PhaseLabel label);
PhaseLabel label_from_outcome(int outcome);
std::string_view label_name(PhaseLabel label);
PhaseLabel parse_label(std::string_view name);
std::array<double, kOutcomes> one_hot(PhaseLabel label);

struct LabeledSample {
  CouplingPoint couplings;
  PureState state;
  PhaseLabel label;
  double energy;
  std::array<double, kOutcomes> one_hot;
};

class ClusterIsingHamiltonian {
 public:
  ClusterIsingHamiltonian(int n_sites, CouplingPoint couplings);

  int n_sites() const { return n_; }
  std::size_t dim() const { return std::size_t{1} << n_; }
  const CouplingPoint& couplings() const { return c_; }

  /// out = H in. Spans must have length dim().
  void apply(std::span<const double> in, std::span<double> out) const;

  /// Dense matrix, n_sites <= 12.
  Eigen::MatrixXd dense() const;

 private:
  int n_;
  CouplingPoint c_;
  std::vector<double> diag_;  // -g_zz sum z_i z_{i+1}
};

ClusterIsingHamiltonian build_hamiltonian(int n_sites, CouplingPoint couplings);

struct GroundState {
  double energy;
  PureState state;
};

/// Sizes up to this use the dense solver in ground_state().
inline constexpr int kDenseEdMaxSites = 8;

/// Lowest eigenpair, phase-fixed so that the largest-magnitude amplitude (lowest
/// index among ties) is real and positive.
GroundState ground_state(const ClusterIsingHamiltonian& h);
GroundState ground_state_dense(const ClusterIsingHamiltonian& h);
GroundState ground_state_lanczos(const ClusterIsingHamiltonian& h, double tol = 1e-10,
                                 int max_iterations = 400);

inline constexpr double kTieBand = 0.05;

/// Coupling-dominance label; nullopt when the two largest couplings are within
/// `tie_band` of each other.
std::optional<PhaseLabel> label_point(const CouplingPoint& c, double tie_band = kTieBand);

/// Uniform point on {g >= 0, sum g = 4} from normalized exponential spacings.
CouplingPoint sample_simplex(Rng& rng);

LabeledSample make_sample(int n_sites, const CouplingPoint& c, PhaseLabel label);

/// Balanced dataset of `total` samples (total divisible by 3), in draw order.
std::vector<LabeledSample> sample_dataset(int n_sites, int total, std::uint64_t seed);

struct Split {
  std::vector<LabeledSample> train;
  std::vector<LabeledSample> test;
};

/// Per-class split; both partitions keep the dataset's relative order.
Split stratified_split(std::span<const LabeledSample> dataset, double train_fraction,
                       std::uint64_t seed);

}  // namespace aiqt
