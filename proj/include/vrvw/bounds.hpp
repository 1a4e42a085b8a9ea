#pragma once

#include <string>
#include <vector>

#include "vrvw/solver.hpp"

namespace vrvw {

/// Data feeding the a priori bounds: equation strength t, quintic majorant
/// constant lambda_tau, curvature-term constant lambda_x (0 on the flat
/// torus), manifold volume, and characteristic number m.
struct BoundsParams {
  double t = 1.0;
  double lambda_tau = 0.0;
  double lambda_x = 0.0;
  double vol = 1.0;
  double m = 0.0;
};

void require_valid(const BoundsParams& bp);

/// Supremum bound C for |B|: the unique positive root of
/// 4 t x^4 - 4 lambda_tau x^3 - lambda_x = 0 when lambda_x > 0, and
/// lambda_tau / t when lambda_x = 0.  Every x with
/// -4 t x^4 + 4 lambda_tau x^3 + lambda_x >= 0 satisfies x <= c_upper.
double c_upper(const BoundsParams& bp);

/// 2 (4 lambda_tau^4 / lambda_x)^{1/3}; above this t the sharp cap applies.
/// Requires lambda_x > 0.
double t_threshold(const BoundsParams& bp);

/// (lambda_x / 2t)^{1/4}; dominates c_upper for all t > t_threshold.
/// Requires lambda_x > 0.
double sharp_cap(const BoundsParams& bp);

/// L^2 bound K = sqrt(lambda_tau c_upper^5 vol) for the covariant derivative.
double k_upper(const BoundsParams& bp);

/// Largest bubble count: floor(m + vol c_upper^4 / 48 pi^2).  Requires the
/// hypothesis m >= -vol c_upper^4 / 48 pi^2.
long long bubble_bound(const BoundsParams& bp);

/// Cap on |F_A|^2_{L^2} after l bubbles: 8 pi^2 (m - l) + vol c_upper^4 / 3.
/// Requires l <= bubble_bound.
double curvature_energy_cap(const BoundsParams& bp, long long l);

/// Cap on |F_A^+|^2_{L^2}: vol c_upper^4 / 6.
double f_plus_energy_cap(const BoundsParams& bp);

struct BoundCheck {
  std::string name;
  double measured = 0.0;
  double cap = 0.0;     ///< cap including the discretization slack
  double margin = 0.0;  ///< cap - measured
  bool pass = false;
};

struct SolutionReport {
  double residual_l2 = 0.0;
  double slack = 0.0;
  double c_upper = 0.0;
  double k_upper = 0.0;
  std::vector<BoundCheck> checks;
  bool all_pass = false;
};

struct VerifyOptions {
  double lambda_x = 0.0;
  double slack = 0.05;         ///< discretization allowance on every cap
  double residual_tol = 1e-6;  ///< gate: input must solve the equation this well
  double m = 0.0;
  long long l = 0;
};

/// Checks the a priori bounds on a solved configuration: sup|B| against
/// c_upper, |d_A^* B|_{L^2} against k_upper, and the curvature energy caps.
/// Rejects inputs whose homogeneous residual exceeds residual_tol.
SolutionReport verify_solution(const PerturbationParams& p, const Configuration& c,
                               const VerifyOptions& opts);

}  // namespace vrvw
