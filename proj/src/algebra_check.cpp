#include "vrvw/algebra_check.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "vrvw/form_algebra.hpp"

namespace vrvw {

namespace {

double rel_err(const GaugedForm& got, const GaugedForm& want)
{
  const double scale = std::max(1.0, want.norm());
  return (got - want).norm() / scale;
}

GaugedForm cofactor(const GaugedForm& M)
{
  GaugedForm C;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
      const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      C(i, j) = M(i1, j1) * M(i2, j2) - M(i1, j2) * M(i2, j1);
    }
  return C;
}

Eigen::Matrix3d random_rotation(std::mt19937_64& rng)
{
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::Matrix3d M;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      M(i, j) = dist(rng);
  const Eigen::HouseholderQR<Eigen::Matrix3d> qr(M);
  Eigen::Matrix3d Q = qr.householderQ();
  if (Q.determinant() < 0.0)
    Q.col(2) = -Q.col(2);
  return Q;
}

}  // namespace

std::vector<IdentityResult> run_algebra_checks(int trials, std::uint64_t seed,
                                               const std::string& inject_bug)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  auto rand_form = [&]() {
    GaugedForm M;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        M(i, j) = dist(rng);
    return M;
  };

  const double bracket_bug = inject_bug == "dot_bracket_sign" ? -1.0 : 1.0;

  std::vector<IdentityResult> out;
  auto record = [&](const std::string& name, double err, double threshold) {
    out.push_back({name, err, threshold, err <= threshold});
  };

  double e_sym = 0, e_cof = 0, e_diag = 0, e_ddiag = 0, e_norm = 0, e_closed = 0, e_homog = 0,
         e_ineq = 0, e_lam = 0, e_pair = 0, e_svd = 0, e_mb2 = 0, e_mb3 = 0, e_rot = 0;

  for (int trial = 0; trial < trials; ++trial) {
    const GaugedForm B = rand_form();
    const GaugedForm P = rand_form();

    e_sym = std::max(e_sym, rel_err(dot_bracket(B, P), bracket_bug * dot_bracket(P, B)));
    e_cof = std::max(e_cof, rel_err(self_dot_bracket(B), GaugedForm(-8.0 * cofactor(B))));

    const Eigen::Vector3d d(dist(rng), dist(rng), dist(rng));
    const GaugedForm D = d.asDiagonal();
    GaugedForm want = GaugedForm::Zero();
    want(0, 0) = -8.0 * d(1) * d(2);
    want(1, 1) = -8.0 * d(2) * d(0);
    want(2, 2) = -8.0 * d(0) * d(1);
    e_diag = std::max(e_diag, rel_err(self_dot_bracket(D), want));

    GaugedForm want2 = GaugedForm::Zero();
    const double prod = d(0) * d(1) * d(2);
    want2(0, 0) = -512.0 * d(0) * prod;
    want2(1, 1) = -512.0 * d(1) * prod;
    want2(2, 2) = -512.0 * d(2) * prod;
    e_ddiag = std::max(e_ddiag, rel_err(double_bracket(D), want2));

    double sq = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        sq += B(i, j) * B(i, j);
    e_norm = std::max(e_norm, std::abs(inner(B, B) - 2.0 * sq) / std::max(1.0, 2.0 * sq));

    e_closed = std::max(
        e_closed, rel_err(double_bracket(B), GaugedForm(-512.0 * B.determinant() * B)));

    const double s = 0.25 + std::abs(dist(rng));
    e_homog = std::max(e_homog, rel_err(self_dot_bracket((s * B).eval()),
                                        GaugedForm(s * s * self_dot_bracket(B))));
    e_homog = std::max(e_homog, rel_err(double_bracket((s * B).eval()),
                                        GaugedForm(s * s * s * s * double_bracket(B))));

    const GaugedForm sdb = self_dot_bracket(B);
    const double q = inner(B, B);
    const double lhs = inner(sdb, sdb) / 64.0;
    const double rhs = q * q / 6.0;
    e_ineq = std::max(e_ineq, std::max(0.0, lhs - rhs) / std::max(1.0, rhs));

    const Eigen::Matrix3d tau = rand_form();
    const double lam = lambda_tau(tau);
    const double pair = -inner(B, tau_apply(tau, double_bracket(B)));
    const double cap = lam * std::pow(q, 2.5);
    e_lam = std::max(e_lam, std::max(0.0, pair - cap) / std::max(1.0, cap));

    e_pair = std::max(e_pair, (scalar_dot_pair(B, P) + scalar_dot_pair(P, B)).norm() /
                                  std::max(1.0, scalar_dot_pair(B, P).norm()));

    const SvdNormalForm nf = svd_normal_form(B);
    const GaugedForm rec = nf.lie_rotation * nf.diag.asDiagonal() * nf.form_rotation.transpose();
    double svd_err = (rec - B).norm() / std::max(1.0, B.norm());
    svd_err = std::max(svd_err, std::abs(nf.lie_rotation.determinant() - 1.0));
    svd_err = std::max(svd_err, std::abs(nf.form_rotation.determinant() - 1.0));
    e_svd = std::max(e_svd, svd_err);

    // rank-deficient B: kill the smallest singular value
    const GaugedForm B2 = nf.lie_rotation *
                          Eigen::Vector3d(nf.diag(0), nf.diag(1), 0.0).asDiagonal() *
                          nf.form_rotation.transpose();
    {
      const Eigen::JacobiSVD<Matrix9> msvd(m_b_matrix(B2));
      const auto& sv = msvd.singularValues();
      e_mb2 = std::max(e_mb2, sv(8) / std::max(1.0, sv(0)));
    }

    // well-conditioned rank-3 B: singular values in [0.3, 1.3]
    {
      std::uniform_real_distribution<double> u(0.3, 1.3);
      const Eigen::Vector3d dd(u(rng), u(rng), u(rng));
      const GaugedForm B3 =
          random_rotation(rng) * dd.asDiagonal() * random_rotation(rng).transpose();
      const Eigen::JacobiSVD<Matrix9> msvd(m_b_matrix(B3));
      e_mb3 = std::max(e_mb3, msvd.singularValues()(8) > 0.0 ? 0.0 : 1.0);
    }

    // gauge equivariance of the pointwise data
    {
      const Eigen::Matrix3d R = random_rotation(rng);
      const Eigen::Matrix3d S = random_rotation(rng);
      const GaugedForm Br = R * B * S.transpose();
      e_rot = std::max(e_rot, std::abs(inner(Br, Br) - q) / std::max(1.0, q));
      e_rot = std::max(e_rot, rank_of(Br) == rank_of(B) ? 0.0 : 1.0);
    }
  }

  record("dot_bracket_symmetry", e_sym, 1e-12);
  record("self_dot_bracket_cofactor", e_cof, 1e-12);
  record("diagonal_bracket_formula", e_diag, 1e-12);
  record("diagonal_double_bracket_formula", e_ddiag, 1e-12);
  record("inner_norm_formula", e_norm, 1e-12);
  record("double_bracket_closed_form", e_closed, 1e-12);
  record("bracket_homogeneity", e_homog, 1e-12);
  record("pointwise_quartic_inequality", e_ineq, 0.0);
  record("lambda_tau_majorant", e_lam, 0.0);
  record("scalar_dot_pair_antisymmetry", e_pair, 1e-12);
  record("svd_normal_form_reconstruction", e_svd, 1e-12);
  record("m_b_singular_at_rank2", e_mb2, 1e-12);
  record("m_b_invertible_at_rank3", e_mb3, 0.0);
  record("rotation_invariance", e_rot, 1e-12);
  return out;
}

}  // namespace vrvw
