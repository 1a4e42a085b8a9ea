#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace vrvw {

// Pointwise algebra of su(2)-valued self-dual 2-forms on R^4.
//
// Everything is expressed in fixed coordinates:
//   eta_1, eta_2, eta_3      basis of su(2) with [eta_1,eta_2] = 2 eta_3 (cyclic)
//                            and <eta_a,eta_b> = delta_ab (= -tr(eta_a eta_b)/2),
//   sigma^1 = e^12 + e^34,   sigma^2 = e^13 + e^42,   sigma^3 = e^14 + e^23,
//                            sigma^j . sigma^k = 2 delta_jk (form inner product),
//                            sigma^1 dot sigma^2 = -2 sigma^3 (cyclic, antisymmetric).
//
// A LieVector u stands for sum_a u(a) eta_a, a SelfDual2Form w for sum_j w(j) sigma^j,
// and a GaugedForm M for sum_{a,j} M(a,j) eta_a (x) sigma^j.  In these coordinates
// both structure products are scaled cross products, which is what the functions
// below reduce to.

using LieVector = Eigen::Vector3d;
using SelfDual2Form = Eigen::Vector3d;
using GaugedForm = Eigen::Matrix3d;
using Vector9 = Eigen::Matrix<double, 9, 1>;
using Matrix9 = Eigen::Matrix<double, 9, 9>;

/// [u, v] on su(2) in eta-coordinates.
template <typename DU, typename DV>
inline LieVector lie_bracket(const Eigen::MatrixBase<DU>& u, const Eigen::MatrixBase<DV>& v)
{
  return 2.0 * LieVector(u.derived()).cross(LieVector(v.derived()));
}

/// Degree-lowering product of two self-dual 2-forms (contraction-then-wedge),
/// expressed in sigma-coordinates.  Bilinear and antisymmetric.
template <typename DU, typename DV>
inline SelfDual2Form dot_forms(const Eigen::MatrixBase<DU>& alpha, const Eigen::MatrixBase<DV>& beta)
{
  return -2.0 * SelfDual2Form(alpha.derived()).cross(SelfDual2Form(beta.derived()));
}

/// [B dot Psi]: bracket on the Lie index combined with the dot product on the
/// form index.  Coefficients: [B dot Psi](c,l) = -4 eps_abc eps_jkl B(a,j) Psi(b,k).
/// Symmetric in (B, Psi) since both factors are antisymmetric.
template <typename DB, typename DP>
inline GaugedForm dot_bracket(const Eigen::MatrixBase<DB>& B_, const Eigen::MatrixBase<DP>& Psi_)
{
  const GaugedForm B = B_.derived();
  const GaugedForm P = Psi_.derived();
  GaugedForm out;
  for (int l = 0; l < 3; ++l) {
    const int j = (l + 1) % 3, k = (l + 2) % 3;
    out.col(l) = -4.0 * (B.col(j).cross(P.col(k)) - B.col(k).cross(P.col(j)));
  }
  return out;
}

/// [B dot B].  Equals -8 times the cofactor matrix of B; vanishes iff rank(B) <= 1.
template <typename DB>
inline GaugedForm self_dot_bracket(const Eigen::MatrixBase<DB>& B_)
{
  const GaugedForm B = B_.derived();
  GaugedForm out;
  for (int l = 0; l < 3; ++l) {
    const int j = (l + 1) % 3, k = (l + 2) % 3;
    out.col(l) = -8.0 * B.col(j).cross(B.col(k));
  }
  return out;
}

/// [[B dot B] dot [B dot B]].  Degree-4 homogeneous; vanishes whenever rank(B) <= 2.
template <typename DB>
inline GaugedForm double_bracket(const Eigen::MatrixBase<DB>& B)
{
  const GaugedForm s = self_dot_bracket(B);
  return dot_bracket(s, s);
}

/// <B, Psi> = 2 sum_{a,j} B(a,j) Psi(a,j), the tensor-product inner product
/// (the factor 2 is |sigma^j|^2).
template <typename DB, typename DP>
inline double inner(const Eigen::MatrixBase<DB>& B, const Eigen::MatrixBase<DP>& Psi)
{
  return 2.0 * B.derived().cwiseProduct(Psi.derived()).sum();
}

/// [b . B] in su(2): bracket on the Lie index, form inner product on the form
/// index.  Antisymmetric in (b, B); this is the zeroth-order piece of the
/// adjoint of the infinitesimal gauge action on plus-forms.
template <typename DB, typename DP>
inline LieVector scalar_dot_pair(const Eigen::MatrixBase<DB>& b_, const Eigen::MatrixBase<DP>& B_)
{
  const GaugedForm b = b_.derived();
  const GaugedForm B = B_.derived();
  LieVector out = LieVector::Zero();
  for (int j = 0; j < 3; ++j)
    out += 4.0 * b.col(j).cross(B.col(j));
  return out;
}

/// Pointwise Lie bracket of a gauged form with a Lie vector, [M, xi], acting on
/// the Lie index column by column.
template <typename DM, typename DX>
inline GaugedForm form_lie_bracket(const Eigen::MatrixBase<DM>& M_, const Eigen::MatrixBase<DX>& xi_)
{
  const GaugedForm M = M_.derived();
  const LieVector xi = xi_.derived();
  GaugedForm out;
  for (int j = 0; j < 3; ++j)
    out.col(j) = 2.0 * M.col(j).cross(xi);
  return out;
}

/// tau acting on the form index (identity on the Lie index):
/// (tau Psi)(a,l) = sum_j Psi(a,j) tau(j,l).
template <typename DT, typename DP>
inline GaugedForm tau_apply(const Eigen::MatrixBase<DT>& tau, const Eigen::MatrixBase<DP>& Psi)
{
  return Psi.derived() * tau.derived();
}

/// vec in the (a,j) row-major convention used by the 9x9 operator matrices and
/// by the on-disk layout.
inline Vector9 vec_rowmajor(const GaugedForm& M)
{
  Vector9 v;
  for (int a = 0; a < 3; ++a)
    for (int j = 0; j < 3; ++j)
      v(3 * a + j) = M(a, j);
  return v;
}

inline GaugedForm unvec_rowmajor(const Vector9& v)
{
  GaugedForm M;
  for (int a = 0; a < 3; ++a)
    for (int j = 0; j < 3; ++j)
      M(a, j) = v(3 * a + j);
  return M;
}

/// Matrix of psi -> [B dot psi] in the eta_a (x) sigma^j basis (row-major vec
/// convention).  Linear in B, symmetric, and singular exactly when rank(B) <= 2.
inline Matrix9 m_b_matrix(const GaugedForm& B)
{
  Matrix9 M;
  for (int b = 0; b < 3; ++b)
    for (int k = 0; k < 3; ++k) {
      GaugedForm basis = GaugedForm::Zero();
      basis(b, k) = 1.0;
      M.col(3 * b + k) = vec_rowmajor(dot_bracket(B, basis));
    }
  return M;
}

/// Determinant of the diagonal-psi subsystem of [B dot psi] = 0 for diagonal B:
/// 2 B11 B22 B33.  Only defined on the diagonal normal form.
inline double lemma_a1_determinant(const GaugedForm& B)
{
  const double scale = std::max(1.0, B.cwiseAbs().maxCoeff());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && std::abs(B(i, j)) > 1e-12 * scale)
        throw std::invalid_argument("lemma_a1_determinant: input must be diagonal");
  return 2.0 * B(0, 0) * B(1, 1) * B(2, 2);
}

/// Rotation-pair normal form B = R diag(d) S^T with R, S in SO(3).  A sign may
/// be absorbed into d, so entries of d can be negative; |d| are the singular
/// values in decreasing order.
struct SvdNormalForm {
  Eigen::Matrix3d lie_rotation;   ///< R, acts on the eta index
  Eigen::Matrix3d form_rotation;  ///< S, acts on the sigma index
  Eigen::Vector3d diag;           ///< d, signed
};

inline SvdNormalForm svd_normal_form(const GaugedForm& B)
{
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(B, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d R = svd.matrixU();
  Eigen::Matrix3d S = svd.matrixV();
  Eigen::Vector3d d = svd.singularValues();
  if (R.determinant() < 0.0) {
    R.col(2) = -R.col(2);
    d(2) = -d(2);
  }
  if (S.determinant() < 0.0) {
    S.col(2) = -S.col(2);
    d(2) = -d(2);
  }
  return {R, S, d};
}

/// Pointwise rank: number of singular values above tol times the largest.
inline int rank_of(const GaugedForm& B, double tol = 1e-10)
{
  if (tol < 0.0)
    throw std::invalid_argument("rank_of: tolerance must be >= 0");
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(B);
  const Eigen::Vector3d sv = svd.singularValues();
  if (sv(0) == 0.0)
    return 0;
  int r = 0;
  for (int i = 0; i < 3; ++i)
    if (sv(i) > tol * sv(0))
      ++r;
  return r;
}

/// Prefactor of the quintic majorant:
///   -<B, tau [[B dot B] dot [B dot B]]> <= lambda_tau(tau) |B|^5  for all B.
/// In a normal form B = diag(B1,B2,B3) the left side is
/// 1024 B1 B2 B3 (tau'_11 B1^2 + tau'_22 B2^2 + tau'_33 B3^2) with tau'
/// conjugated into the same basis; AM-GM on |B1 B2 B3| and |tau'_jj| <= ||tau||_2
/// give the constant (128 sqrt(6) / 9) ||tau||_2.  The spectral norm dominates
/// every diagonal entry in every orthonormal basis, so the bound is
/// basis-independent, and for tau = identity it is attained at B = diag(s,s,s).
inline double lambda_tau(const Eigen::Matrix3d& tau)
{
  const double spectral = Eigen::JacobiSVD<Eigen::Matrix3d>(tau).singularValues()(0);
  return (128.0 * std::sqrt(6.0) / 9.0) * spectral;
}

/// Perturbation parameters (t, tau); t strictly positive, tau acting on the
/// sigma index.  Tangent perturbations delta-tau need not be invertible.
struct PerturbationParams {
  double t = 1.0;
  Eigen::Matrix3d tau = Eigen::Matrix3d::Identity();
};

inline void require_valid(const PerturbationParams& p)
{
  if (!(p.t > 0.0))
    throw std::invalid_argument("perturbation parameter t must be > 0");
}

/// |det tau| test used when tau models an element of GL(Lambda^{2,+}).
inline bool tau_invertible(const Eigen::Matrix3d& tau, double det_tol = 1e-12)
{
  return std::abs(tau.determinant()) > det_tol;
}

}  // namespace vrvw
