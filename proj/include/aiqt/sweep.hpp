#pragma once

// Phase-diagram sweeps of a trained model. Ground states are recomputed for
// every point.

#include "aiqt/model.hpp"
#include "aiqt/spinchain.hpp"

#include <array>
#include <iosfwd>
#include <vector>

namespace aiqt {

struct SweepPoint {
  CouplingPoint couplings;
  std::array<double, kOutcomes> probs;
  int predicted;
};

/// `resolution` evenly spaced points on g_zxz + g_x = 4 - g_zz, from
/// g_zxz = 0 to g_zxz = 4 - g_zz inclusive.
std::vector<CouplingPoint> line_points(double g_zz, int resolution);

/// Triangular grid with `resolution` points per edge, r(r+1)/2 points in
/// total: (i, j, k) * 4 / (r - 1) for i + j + k = r - 1, ordered by i then j.
std::vector<CouplingPoint> grid_points(int resolution);

SweepPoint evaluate_point(const CompiledModel& model, const CouplingPoint& c);
std::vector<SweepPoint> sweep(const ModelParams& model, const std::vector<CouplingPoint>& points);

inline constexpr const char* kLineHeader = "g_zxz,g_x,P_Trivial,P_SB,P_SPT,P_fail";
inline constexpr const char* kGridHeader =
    "g_zxz,g_x,g_zz,predicted_class,p00,p01,p10,p11";

void write_line_csv(std::ostream& os, const std::vector<SweepPoint>& rows);
void write_grid_csv(std::ostream& os, const std::vector<SweepPoint>& rows);

/// Two-character outcome code, e.g. 2 -> "10".
const char* outcome_code(int outcome);

}  // namespace aiqt
