#include "vrvw/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vrvw {

namespace {
constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
}

void require_valid(const BoundsParams& bp)
{
  if (!(bp.t > 0.0))
    throw std::invalid_argument("bounds: t must be > 0");
  if (!(bp.lambda_tau >= 0.0))
    throw std::invalid_argument("bounds: lambda_tau must be >= 0");
  if (!(bp.lambda_x >= 0.0))
    throw std::invalid_argument("bounds: lambda_x must be >= 0");
  if (!(bp.vol > 0.0))
    throw std::invalid_argument("bounds: vol must be > 0");
}

double c_upper(const BoundsParams& bp)
{
  require_valid(bp);
  if (bp.lambda_x == 0.0)
    return bp.lambda_tau / bp.t;

  // q(x) = 4 t x^4 - 4 lambda_tau x^3 - lambda_x has exactly one sign change
  // for x > 0 (Descartes), q(0) < 0, and is positive at the bracket top.
  const double t = bp.t, lt = bp.lambda_tau, lx = bp.lambda_x;
  auto q = [&](double x) { return ((4.0 * t * x - 4.0 * lt) * x * x) * x - lx; };
  auto dq = [&](double x) { return (16.0 * t * x - 12.0 * lt) * x * x; };

  double lo = 0.0;
  double hi = lt / t + std::pow(lx / t, 0.25) + 1.0;
  double x = hi;
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
    const double qx = q(x);
    if (qx == 0.0)
      return x;
    (qx > 0.0 ? hi : lo) = x;
    const double d = dq(x);
    double xn = d != 0.0 ? x - qx / d : 0.5 * (lo + hi);
    if (!(xn > lo && xn < hi))
      xn = 0.5 * (lo + hi);
    x = xn;
  }
  return x;
}

double t_threshold(const BoundsParams& bp)
{
  require_valid(bp);
  if (!(bp.lambda_x > 0.0))
    throw std::invalid_argument("t_threshold: undefined for lambda_x = 0");
  return 2.0 * std::cbrt(4.0 * std::pow(bp.lambda_tau, 4) / bp.lambda_x);
}

double sharp_cap(const BoundsParams& bp)
{
  require_valid(bp);
  if (!(bp.lambda_x > 0.0))
    throw std::invalid_argument("sharp_cap: undefined for lambda_x = 0");
  return std::pow(bp.lambda_x / (2.0 * bp.t), 0.25);
}

double k_upper(const BoundsParams& bp)
{
  const double c = c_upper(bp);
  return std::sqrt(bp.lambda_tau * std::pow(c, 5) * bp.vol);
}

long long bubble_bound(const BoundsParams& bp)
{
  const double c = c_upper(bp);
  const double gain = bp.vol * std::pow(c, 4) / (48.0 * kPi2);
  if (bp.m < -gain - 1e-12)
    throw std::invalid_argument("bubble_bound: hypothesis m >= -vol c^4 / 48 pi^2 violated");
  return static_cast<long long>(std::floor(bp.m + gain + 1e-9));
}

double curvature_energy_cap(const BoundsParams& bp, long long l)
{
  if (l > bubble_bound(bp))
    throw std::invalid_argument("curvature_energy_cap: l exceeds the bubble bound");
  const double c = c_upper(bp);
  return 8.0 * kPi2 * (bp.m - double(l)) + bp.vol * std::pow(c, 4) / 3.0;
}

double f_plus_energy_cap(const BoundsParams& bp)
{
  const double c = c_upper(bp);
  return bp.vol * std::pow(c, 4) / 6.0;
}

SolutionReport verify_solution(const PerturbationParams& p, const Configuration& c,
                               const VerifyOptions& opts)
{
  const Residual r = residual(p, c);
  const double rl2 = l2_norm(r);
  if (rl2 > opts.residual_tol)
    throw std::invalid_argument("verify_solution: input is not a solution (residual " +
                                std::to_string(rl2) + " exceeds tolerance)");

  BoundsParams bp;
  bp.t = p.t;
  bp.lambda_tau = lambda_tau(p.tau);
  bp.lambda_x = opts.lambda_x;
  bp.vol = c.A.grid.volume();
  bp.m = opts.m;

  SolutionReport rep;
  rep.residual_l2 = rl2;
  rep.slack = opts.slack;
  rep.c_upper = c_upper(bp);
  rep.k_upper = k_upper(bp);

  auto push = [&](const std::string& name, double measured, double cap) {
    BoundCheck chk;
    chk.name = name;
    chk.measured = measured;
    chk.cap = cap * (1.0 + opts.slack);
    chk.margin = chk.cap - measured;
    chk.pass = measured <= chk.cap;
    rep.checks.push_back(chk);
  };

  push("sup_B", linf_norm(c.B), rep.c_upper);
  push("l2_dAstarB", l2_norm(d_a_star_plus(c.A, c.B)), rep.k_upper);

  const PlusFormField fp = f_plus(c.A);
  push("l2sq_f_plus", l2_inner(fp, fp), f_plus_energy_cap(bp));

  const TwoFormField F = curvature(c.A);
  push("l2sq_f", l2_inner(F, F), curvature_energy_cap(bp, opts.l));

  rep.all_pass = true;
  for (const auto& chk : rep.checks)
    rep.all_pass = rep.all_pass && chk.pass;
  return rep;
}

}  // namespace vrvw
