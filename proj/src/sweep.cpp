#include "aiqt/sweep.hpp"

#include "aiqt/io.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

namespace aiqt {

std::vector<CouplingPoint> line_points(double g_zz, int resolution) {
  if (resolution < 2) throw std::invalid_argument("line sweep: resolution must be >= 2");
  if (!(g_zz >= 0.0 && g_zz <= kCouplingSum)) {
    throw std::invalid_argument("line sweep: g_zz must be in [0, 4]");
  }
  const double span = kCouplingSum - g_zz;
  std::vector<CouplingPoint> pts;
  for (int t = 0; t < resolution; ++t) {
    const double g_zxz = span * t / (resolution - 1);
    // Last point pinned so the endpoint is exact.
    const double g_x = t == resolution - 1 ? 0.0 : span - g_zxz;
    pts.push_back({t == resolution - 1 ? span : g_zxz, g_x, g_zz});
  }
  return pts;
}

std::vector<CouplingPoint> grid_points(int resolution) {
  if (resolution < 2) throw std::invalid_argument("grid sweep: resolution must be >= 2");
  const int steps = resolution - 1;
  std::vector<CouplingPoint> pts;
  pts.reserve(static_cast<std::size_t>(resolution) * (resolution + 1) / 2);
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; j + i <= steps; ++j) {
      const int k = steps - i - j;
      pts.push_back({kCouplingSum * i / steps, kCouplingSum * j / steps,
                     kCouplingSum * k / steps});
    }
  }
  return pts;
}

SweepPoint evaluate_point(const CompiledModel& model, const CouplingPoint& c) {
  const GroundState gs = ground_state(build_hamiltonian(model.params().n_qubits, c));
  const std::vector<double> p = model.probabilities(gs.state);
  if (p.size() != kOutcomes) throw std::invalid_argument("sweep: model must read out 4 outcomes");
  SweepPoint out{c, {}, predicted_outcome(p)};
  std::copy(p.begin(), p.end(), out.probs.begin());
  return out;
}

std::vector<SweepPoint> sweep(const ModelParams& model, const std::vector<CouplingPoint>& points) {
  const CompiledModel compiled(model);
  std::vector<SweepPoint> rows;
  rows.reserve(points.size());
  for (const auto& c : points) rows.push_back(evaluate_point(compiled, c));
  return rows;
}

const char* outcome_code(int outcome) {
  static const char* codes[] = {"00", "01", "10", "11"};
  if (outcome < 0 || outcome >= kOutcomes) throw std::invalid_argument("outcome out of range");
  return codes[outcome];
}

void write_line_csv(std::ostream& os, const std::vector<SweepPoint>& rows) {
  os << kLineHeader << '\n';
  for (const auto& r : rows) {
    os << format_double(r.couplings.g_zxz) << ',' << format_double(r.couplings.g_x) << ','
       << format_double(r.probs[outcome_index(PhaseLabel::Trivial)]) << ','
       << format_double(r.probs[outcome_index(PhaseLabel::SB)]) << ','
       << format_double(r.probs[outcome_index(PhaseLabel::SPT)]) << ','
       << format_double(r.probs[outcome_index(PhaseLabel::Fail)]) << '\n';
  }
}

void write_grid_csv(std::ostream& os, const std::vector<SweepPoint>& rows) {
  os << kGridHeader << '\n';
  for (const auto& r : rows) {
    os << format_double(r.couplings.g_zxz) << ',' << format_double(r.couplings.g_x) << ','
       << format_double(r.couplings.g_zz) << ',' << outcome_code(r.predicted);
    for (double p : r.probs) os << ',' << format_double(p);
    os << '\n';
  }
}

}  // namespace aiqt
