#pragma once

#include <string>
#include <vector>

#include "vrvw/run_config.hpp"

namespace vrvw {

struct ScanRow {
  double t = 0.0;
  double sup_b = 0.0;
  double l2_dastarb = 0.0;
  double c_upper = 0.0;
  double k_upper = 0.0;
  double residual = 0.0;
  bool converged = false;
};

/// Homogeneous solves over a log-spaced t grid (ascending, steps >= 2); each
/// row also carries the closed-form bounds at that t.
std::vector<ScanRow> scan_t(const RunConfig& cfg, double t_min, double t_max, int steps);

/// CSV with header t,sup_B,l2_dAstarB,c_upper,k_upper,residual,converged and
/// 17-significant-digit columns; byte-stable across reruns.
std::string scan_csv(const std::vector<ScanRow>& rows);

}  // namespace vrvw
