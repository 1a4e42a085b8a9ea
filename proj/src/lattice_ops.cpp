#include "vrvw/lattice_ops.hpp"

#include <Eigen/Geometry>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vrvw {

namespace {

// sigma^j as two ordered index pairs.
constexpr int kSigmaPairs[3][2][2] = {{{0, 1}, {2, 3}}, {{0, 2}, {3, 1}}, {{0, 3}, {1, 2}}};

// Two-form slot of an ordered pair (mu < nu).
constexpr int kSlot[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};

// Slot and sign of an arbitrary ordered pair: F_{mu nu} = sign * slot value.
inline int slot_sign(int mu, int nu) { return mu < nu ? 1 : -1; }

void require_grid(const TorusGrid& a, const TorusGrid& b)
{
  if (!(a == b))
    throw std::invalid_argument("lattice fields live on different grids");
}

}  // namespace

OneFormField cov_d_scalar(const ConnectionField& A, const ScalarLieField& xi)
{
  require_grid(A.grid, xi.grid);
  const TorusGrid& g = A.grid;
  OneFormField out(g);
  const double inv_h = 1.0 / g.h;
  for (int s = 0; s < g.sites(); ++s) {
    const LieVector x = lie_at(xi, s);
    for (int mu = 0; mu < 4; ++mu) {
      const LieVector xf = lie_at(xi, g.forward(s, mu));
      dir_at(out, s, mu) = (xf - x) * inv_h + 2.0 * dir_at(A, s, mu).cross(x);
    }
  }
  return out;
}

ScalarLieField cov_d_scalar_adjoint(const ConnectionField& A, const OneFormField& a)
{
  require_grid(A.grid, a.grid);
  const TorusGrid& g = A.grid;
  ScalarLieField out(g);
  const double inv_h = 1.0 / g.h;
  for (int s = 0; s < g.sites(); ++s) {
    LieVector acc = LieVector::Zero();
    for (int mu = 0; mu < 4; ++mu) {
      const LieVector am = dir_at(a, s, mu);
      acc -= (am - LieVector(dir_at(a, g.backward(s, mu), mu))) * inv_h;
      acc += 2.0 * am.cross(dir_at(A, s, mu));
    }
    lie_at(out, s) = acc;
  }
  return out;
}

TwoFormField forward_d(const OneFormField& a)
{
  const TorusGrid& g = a.grid;
  TwoFormField out(g);
  const double inv_h = 1.0 / g.h;
  for (int s = 0; s < g.sites(); ++s) {
    for (int mu = 0; mu < 4; ++mu) {
      const int sf = g.forward(s, mu);
      for (int nu = mu + 1; nu < 4; ++nu) {
        const LieVector dmu_anu = (LieVector(dir_at(a, sf, nu)) - LieVector(dir_at(a, s, nu))) * inv_h;
        const LieVector dnu_amu =
            (LieVector(dir_at(a, g.forward(s, nu), mu)) - LieVector(dir_at(a, s, mu))) * inv_h;
        slot_at(out, s, kSlot[mu][nu]) = dmu_anu - dnu_amu;
      }
    }
  }
  return out;
}

PlusFormField project_plus(const TwoFormField& F)
{
  const TorusGrid& g = F.grid;
  PlusFormField out(g);
  for (int s = 0; s < g.sites(); ++s) {
    auto M = form_at(out, s);
    for (int j = 0; j < 3; ++j) {
      LieVector acc = LieVector::Zero();
      for (int p = 0; p < 2; ++p) {
        const int mu = kSigmaPairs[j][p][0], nu = kSigmaPairs[j][p][1];
        acc += slot_sign(mu, nu) *
               LieVector(slot_at(F, s, kSlot[mu][nu]));
      }
      M.col(j) = 0.5 * acc;
    }
  }
  return out;
}

PlusFormField project_minus(const TwoFormField& F)
{
  const TorusGrid& g = F.grid;
  PlusFormField out(g);
  for (int s = 0; s < g.sites(); ++s) {
    auto M = form_at(out, s);
    for (int j = 0; j < 3; ++j) {
      // sigma-bar^j = first pair minus second pair
      const int mu0 = kSigmaPairs[j][0][0], nu0 = kSigmaPairs[j][0][1];
      const int mu1 = kSigmaPairs[j][1][0], nu1 = kSigmaPairs[j][1][1];
      M.col(j) = 0.5 * (slot_sign(mu0, nu0) * LieVector(slot_at(F, s, kSlot[mu0][nu0])) -
                        slot_sign(mu1, nu1) * LieVector(slot_at(F, s, kSlot[mu1][nu1])));
    }
  }
  return out;
}

TwoFormField embed_plus(const PlusFormField& B)
{
  const TorusGrid& g = B.grid;
  TwoFormField out(g);
  for (int s = 0; s < g.sites(); ++s) {
    const auto M = form_at(B, s);
    for (int j = 0; j < 3; ++j)
      for (int p = 0; p < 2; ++p) {
        const int mu = kSigmaPairs[j][p][0], nu = kSigmaPairs[j][p][1];
        slot_at(out, s, kSlot[mu][nu]) = slot_sign(mu, nu) * LieVector(M.col(j));
      }
  }
  return out;
}

PlusFormField plus_bracket(const OneFormField& c, const OneFormField& s_field)
{
  require_grid(c.grid, s_field.grid);
  const TorusGrid& g = c.grid;
  PlusFormField out(g);
  for (int s = 0; s < g.sites(); ++s) {
    auto M = form_at(out, s);
    for (int j = 0; j < 3; ++j) {
      LieVector acc = LieVector::Zero();
      for (int p = 0; p < 2; ++p) {
        const int mu = kSigmaPairs[j][p][0], nu = kSigmaPairs[j][p][1];
        acc += 2.0 * LieVector(dir_at(c, s, mu)).cross(dir_at(s_field, s, nu)) -
               2.0 * LieVector(dir_at(c, s, nu)).cross(dir_at(s_field, s, mu));
      }
      M.col(j) = 0.5 * acc;
    }
  }
  return out;
}

OneFormField plus_bracket_adjoint(const OneFormField& s_field, const PlusFormField& phi)
{
  require_grid(s_field.grid, phi.grid);
  const TorusGrid& g = s_field.grid;
  const TwoFormField phit = embed_plus(phi);
  OneFormField out(g);
  for (int s = 0; s < g.sites(); ++s)
    for (int nu = 0; nu < 4; ++nu) {
      LieVector acc = LieVector::Zero();
      for (int mu = 0; mu < 4; ++mu) {
        if (mu == nu)
          continue;
        const LieVector f = slot_sign(mu, nu) * LieVector(slot_at(phit, s, kSlot[mu][nu]));
        acc += 2.0 * f.cross(dir_at(s_field, s, mu));
      }
      dir_at(out, s, nu) = acc;
    }
  return out;
}

PlusFormField d_a_plus(const ConnectionField& A, const OneFormField& a)
{
  require_grid(A.grid, a.grid);
  PlusFormField out = project_plus(forward_d(a));
  const PlusFormField br = plus_bracket(A, a);
  out.data += br.data;
  return out;
}

OneFormField d_a_star_plus(const ConnectionField& A, const PlusFormField& B)
{
  require_grid(A.grid, B.grid);
  const TorusGrid& g = A.grid;
  const TwoFormField F = embed_plus(B);
  OneFormField out = plus_bracket_adjoint(A, B);
  const double inv_h = 1.0 / g.h;
  for (int s = 0; s < g.sites(); ++s)
    for (int nu = 0; nu < 4; ++nu) {
      LieVector acc = LieVector::Zero();
      for (int mu = 0; mu < 4; ++mu) {
        if (mu == nu)
          continue;
        const int sign = slot_sign(mu, nu);
        const LieVector here = sign * LieVector(slot_at(F, s, kSlot[mu][nu]));
        const LieVector back = sign * LieVector(slot_at(F, g.backward(s, mu), kSlot[mu][nu]));
        acc -= (here - back) * inv_h;
      }
      dir_at(out, s, nu) += acc;
    }
  return out;
}

TwoFormField curvature(const ConnectionField& A)
{
  const TorusGrid& g = A.grid;
  TwoFormField out = forward_d(A);
  for (int s = 0; s < g.sites(); ++s)
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = mu + 1; nu < 4; ++nu)
        slot_at(out, s, kSlot[mu][nu]) += 2.0 * LieVector(dir_at(A, s, mu)).cross(dir_at(A, s, nu));
  return out;
}

TwoFormField curvature_clover(const ConnectionField& A)
{
  const TorusGrid& g = A.grid;
  const double inv_h = 1.0 / g.h;

  // plaquette estimate: forward differences plus the bracket of
  // midpoint-averaged legs; second-order accurate at the plaquette center
  TwoFormField P(g);
  for (int s = 0; s < g.sites(); ++s)
    for (int mu = 0; mu < 4; ++mu) {
      const int sf_mu = g.forward(s, mu);
      for (int nu = mu + 1; nu < 4; ++nu) {
        const int sf_nu = g.forward(s, nu);
        const LieVector dmu =
            (LieVector(dir_at(A, sf_mu, nu)) - LieVector(dir_at(A, s, nu))) * inv_h;
        const LieVector dnu =
            (LieVector(dir_at(A, sf_nu, mu)) - LieVector(dir_at(A, s, mu))) * inv_h;
        const LieVector amu =
            0.5 * (LieVector(dir_at(A, s, mu)) + LieVector(dir_at(A, sf_nu, mu)));
        const LieVector anu =
            0.5 * (LieVector(dir_at(A, s, nu)) + LieVector(dir_at(A, sf_mu, nu)));
        slot_at(P, s, kSlot[mu][nu]) = dmu - dnu + 2.0 * amu.cross(anu);
      }
    }

  // average the four plaquettes around each site; centers the estimate at x
  TwoFormField out(g);
  for (int s = 0; s < g.sites(); ++s)
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = mu + 1; nu < 4; ++nu) {
        const int slot = kSlot[mu][nu];
        const int sm = g.backward(s, mu), sn = g.backward(s, nu), smn = g.backward(sm, nu);
        slot_at(out, s, slot) =
            0.25 * (LieVector(slot_at(P, s, slot)) + LieVector(slot_at(P, sm, slot)) +
                    LieVector(slot_at(P, sn, slot)) + LieVector(slot_at(P, smn, slot)));
      }
  return out;
}

PlusFormField f_plus(const ConnectionField& A)
{
  return project_plus(curvature(A));
}

ScalarLieField d0_star(const ConnectionField& A, const PlusFormField& B,
                       const OneFormField& a, const PlusFormField& b)
{
  require_grid(A.grid, B.grid);
  require_grid(a.grid, b.grid);
  require_grid(A.grid, a.grid);
  ScalarLieField out = cov_d_scalar_adjoint(A, a);
  for (int s = 0; s < A.grid.sites(); ++s)
    lie_at(out, s) += scalar_dot_pair(GaugedForm(form_at(b, s)), GaugedForm(form_at(B, s)));
  return out;
}

OneFormField coulomb_project(const OneFormField& a, double tol, int max_iters)
{
  const TorusGrid& g = a.grid;
  const ConnectionField flat(g);

  auto remove_mean = [&](ScalarLieField& f) {
    const LieVector mean = f.data.rowwise().mean();
    f.data.colwise() -= mean;
  };
  auto laplace = [&](const ScalarLieField& phi) {
    return cov_d_scalar_adjoint(flat, cov_d_scalar(flat, phi));
  };

  ScalarLieField rhs = cov_d_scalar_adjoint(flat, a);
  remove_mean(rhs);
  const double rhs_norm = l2_norm(rhs);
  ScalarLieField phi(g);
  if (rhs_norm > 0.0) {
    ScalarLieField r = rhs;
    ScalarLieField p = r;
    double rr = l2_inner(r, r);
    const double stop = tol * rhs_norm;
    bool converged = false;
    for (int it = 0; it < max_iters; ++it) {
      if (std::sqrt(rr) <= stop) {
        converged = true;
        break;
      }
      ScalarLieField Ap = laplace(p);
      remove_mean(Ap);
      const double alpha = rr / l2_inner(p, Ap);
      phi.data += alpha * p.data;
      r.data -= alpha * Ap.data;
      const double rr_new = l2_inner(r, r);
      p.data = r.data + (rr_new / rr) * p.data;
      rr = rr_new;
    }
    if (!converged && std::sqrt(rr) > stop)
      throw std::runtime_error("coulomb_project: Poisson solve stalled at relative residual " +
                               std::to_string(std::sqrt(rr) / rhs_norm));
  }

  OneFormField out = a;
  out.data -= cov_d_scalar(flat, phi).data;
  return out;
}

std::pair<ConnectionField, PlusFormField>
gauge_transform_finite(const RotationField& R, const ConnectionField& A, const PlusFormField& B)
{
  require_grid(R.grid, A.grid);
  require_grid(A.grid, B.grid);
  const TorusGrid& g = A.grid;

  for (int s = 0; s < g.sites(); ++s) {
    const Eigen::Matrix3d Rx = rot_at(R, s);
    if ((Rx.transpose() * Rx - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-8 ||
        Rx.determinant() < 0.0)
      throw std::invalid_argument("gauge_transform_finite: rotation field is not special orthogonal");
  }

  ConnectionField A_out(g);
  PlusFormField B_out(g);
  const double inv_2h = 1.0 / (2.0 * g.h);
  for (int s = 0; s < g.sites(); ++s) {
    const Eigen::Matrix3d Rx = rot_at(R, s);
    form_at(B_out, s) = Rx.transpose() * Eigen::Matrix3d(form_at(B, s));
    for (int mu = 0; mu < 4; ++mu) {
      const Eigen::Matrix3d Rf = rot_at(R, g.forward(s, mu));
      const Eigen::Matrix3d Q = Rx.transpose() * Rf;
      // adjoint logarithm: Q = exp(2 [u]_x) for the Maurer-Cartan Lie vector u
      const Eigen::AngleAxisd aa(Q);
      const LieVector mc = (aa.angle() * inv_2h) * aa.axis();
      dir_at(A_out, s, mu) = Rx.transpose() * LieVector(dir_at(A, s, mu)) + mc;
    }
  }
  return {std::move(A_out), std::move(B_out)};
}

double chern_weil(const ConnectionField& A)
{
  const TorusGrid& g = A.grid;
  const TwoFormField F = curvature_clover(A);
  // tr(F ^ F) density with tr(xi eta) = -2 <xi, eta>, each complementary pair
  // counted once: -2 (F01.F23 - F02.F13 + F03.F12).
  double total = 0.0;
  for (int s = 0; s < g.sites(); ++s) {
    const double x = LieVector(slot_at(F, s, 0)).dot(slot_at(F, s, 5)) -
                     LieVector(slot_at(F, s, 1)).dot(slot_at(F, s, 4)) +
                     LieVector(slot_at(F, s, 2)).dot(slot_at(F, s, 3));
    total += -2.0 * x;
  }
  return total * g.cell_volume() / (8.0 * std::numbers::pi * std::numbers::pi);
}

}  // namespace vrvw
