#pragma once

#include <Eigen/Sparse>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vrvw/lattice_ops.hpp"

namespace vrvw {

/// A point of the configuration space: connection plus self-dual 2-form field.
struct Configuration {
  ConnectionField A;
  PlusFormField B;

  Configuration() = default;
  explicit Configuration(const TorusGrid& g) : A(g), B(g) {}
};

/// Value of the perturbed equation map: r1 is the second-order row, r2 the
/// curvature row.
struct Residual {
  PlusFormField r1;
  PlusFormField r2;

  Residual() = default;
  explicit Residual(const TorusGrid& g) : r1(g), r2(g) {}
};

/// Tangent direction (a, b) to the configuration space.
struct TangentPair {
  OneFormField a;
  PlusFormField b;

  TangentPair() = default;
  explicit TangentPair(const TorusGrid& g) : a(g), b(g) {}
};

inline double inner(const TangentPair& x, const TangentPair& y)
{
  return l2_inner(x.a, y.a) + l2_inner(x.b, y.b);
}
inline double inner(const Residual& x, const Residual& y)
{
  return l2_inner(x.r1, y.r1) + l2_inner(x.r2, y.r2);
}
inline double l2_norm(const TangentPair& x) { return std::sqrt(inner(x, x)); }
inline double l2_norm(const Residual& x) { return std::sqrt(inner(x, x)); }

/// Perturbed equation map
///   r1 = d_A^+ d_A^* B + t <B,B>^2 B + tau [[B.B].[B.B]] - target.r1
///   r2 = F_A^+ + (1/8)[B.B] - target.r2
/// (target defaults to zero).
Residual residual(const PerturbationParams& p, const Configuration& c,
                  const Residual* target = nullptr);

/// Exact linearization of the residual at c.  Its continuum limit is
///   ( d_A^+ d_A^* b + [d_A^* a, B] + 4t<B,B><B,b>B + t<B,B>^2 b + 4 tau [[b.B].[B.B]],
///     d_A^+ a + (1/4)[b.B] );
/// discretely the [d_A^* a, B] term is realized by the exact chain-rule pieces
/// so that residual(c + s v) - residual(c) - s d1_apply(v) = O(s^2) to rounding.
Residual d1_apply(const PerturbationParams& p, const Configuration& c, const TangentPair& v);

/// L^2 adjoint of d1_apply: <d1_apply(v), (phi,psi)> = <v, d1_adjoint(phi,psi)>.
TangentPair d1_adjoint(const PerturbationParams& p, const Configuration& c,
                       const PlusFormField& phi, const PlusFormField& psi);

/// Infinitesimal gauge action d^0_{(A,B)}(xi) = (d_A xi, [B, xi]).
TangentPair d0_apply(const Configuration& c, const ScalarLieField& xi);

/// L^2 norm of d1(d0(xi)) - ([r1, xi], [r2, xi]); zero in the continuum, O(h)
/// on the lattice for smooth data, and zero to rounding for constant xi.
double kuranishi_defect(const PerturbationParams& p, const Configuration& c,
                        const ScalarLieField& xi);

/// Sparse matrix of the combined operator v -> (d1_apply(v), d0_star(v)),
/// rows ordered (r1, r2, gauge slice), columns (a, b).  Guarded to n <= 6.
Eigen::SparseMatrix<double> assemble_operator(const PerturbationParams& p, const Configuration& c);

/// 8 kappa - 3 (1 - b1 + b2plus).
long long index_formula(double kappa, int b1, int b2plus);

/// Least-squares energy (1/2)|residual|^2 and its gradient d1_adjoint(residual).
double energy(const PerturbationParams& p, const Configuration& c,
              const Residual* target = nullptr);
TangentPair energy_gradient(const PerturbationParams& p, const Configuration& c,
                            const Residual* target = nullptr);

/// Orthogonal projection of v onto the complement of the gauge directions
/// range(d0) at c, computed by conjugate gradients on d0* d0.
TangentPair coulomb_slice_project(const Configuration& c, const TangentPair& v,
                                  double tol = 1e-10, int max_iters = 500);

struct SolveOptions {
  int max_iters = 500;
  double tol = 1e-8;           ///< stop when the residual L^2 norm falls below
  std::uint64_t seed = 0;      ///< recorded in the report; used by callers for inits
  double armijo_c = 1e-4;
  double armijo_shrink = 0.5;
  double initial_step = 1.0;
  int cg_max_iters = 600;
};

struct SolveReport {
  int iterations = 0;
  double residual_l2 = 0.0;
  std::vector<double> energy;  ///< trajectory, one entry per accepted state
  bool monotone = true;
  double wall_time_s = 0.0;    ///< not serialized (reruns stay byte-identical)
  std::string reason;          ///< "converged" | "stalled" | "budget"
  std::uint64_t seed = 0;
};

/// Damped Gauss-Newton on the least-squares energy with updates projected onto
/// the Coulomb slice and Armijo backtracking; deterministic.
std::pair<Configuration, SolveReport> solve(const PerturbationParams& p,
                                            const Configuration& init,
                                            const Residual* target,
                                            const SolveOptions& opts);

/// Gaussian random configuration with i.i.d. N(0, amplitude^2) components.
Configuration random_configuration(const TorusGrid& g, double amplitude, std::uint64_t seed);
TangentPair random_tangent(const TorusGrid& g, double amplitude, std::uint64_t seed);
ScalarLieField random_scalar_field(const TorusGrid& g, double amplitude, std::uint64_t seed);

}  // namespace vrvw
