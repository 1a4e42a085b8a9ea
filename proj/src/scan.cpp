#include "vrvw/scan.hpp"

#include <cmath>
#include <cstdio>

namespace vrvw {

std::vector<ScanRow> scan_t(const RunConfig& cfg, double t_min, double t_max, int steps)
{
  if (steps < 2)
    throw config_error("scan: steps must be >= 2");
  if (!(t_min > 0.0) || !(t_max > t_min))
    throw config_error("scan: need 0 < t_min < t_max");

  std::vector<ScanRow> rows;
  rows.reserve(steps);
  const double ratio = std::log(t_max / t_min);
  for (int i = 0; i < steps; ++i) {
    PerturbationParams p = cfg.params;
    p.t = t_min * std::exp(ratio * double(i) / double(steps - 1));

    BoundsParams bp;
    bp.t = p.t;
    bp.lambda_tau = lambda_tau(p.tau);
    bp.lambda_x = cfg.lambda_x;
    bp.vol = cfg.grid.volume();

    ScanRow row;
    row.t = p.t;
    row.c_upper = c_upper(bp);
    row.k_upper = k_upper(bp);

    const Configuration init =
        random_configuration(cfg.grid, cfg.init_amplitude, cfg.solver.seed + std::uint64_t(i));
    SolveOptions opts = cfg.solver;
    opts.seed = cfg.solver.seed + std::uint64_t(i);
    const auto [sol, rep] = solve(p, init, nullptr, opts);

    row.converged = rep.reason == "converged";
    row.residual = rep.residual_l2;
    row.sup_b = linf_norm(sol.B);
    row.l2_dastarb = l2_norm(d_a_star_plus(sol.A, sol.B));
    rows.push_back(row);
  }
  return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows)
{
  std::string out = "t,sup_B,l2_dAstarB,c_upper,k_upper,residual,converged\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", r.t, r.sup_b,
                  r.l2_dastarb, r.c_upper, r.k_upper, r.residual, r.converged ? 1 : 0);
    out += buf;
  }
  return out;
}

}  // namespace vrvw
