#pragma once

#include "vrvw/fields.hpp"

namespace vrvw {

// First-order gauge operators on the periodic lattice.  All derivatives are
// forward differences; every starred operator is the exact algebraic adjoint
// of its partner with respect to the h^4-weighted L^2 inner products, so the
// adjointness identities hold to rounding (the continuum Leibniz identities
// hold only up to O(h) and are tested by mesh refinement instead).
//
// Index conventions: directions mu in {0,1,2,3} stand for e^1..e^4.  The
// sigma pairs are sigma^1 ~ (0,1)+(2,3), sigma^2 ~ (0,2)+(3,1),
// sigma^3 ~ (0,3)+(1,2).  Two-form slots are ordered
// (0,1),(0,2),(0,3),(1,2),(1,3),(2,3).

/// d_A xi = forward difference of xi plus [A_mu, xi].
OneFormField cov_d_scalar(const ConnectionField& A, const ScalarLieField& xi);

/// Exact adjoint of cov_d_scalar; the discrete d_A^* on 1-forms.
ScalarLieField cov_d_scalar_adjoint(const ConnectionField& A, const OneFormField& a);

/// Forward-difference exterior derivative (no connection): G_{mu nu} = D_mu a_nu - D_nu a_mu.
TwoFormField forward_d(const OneFormField& a);

/// Self-dual projection of a full 2-form field into sigma-coordinates.
PlusFormField project_plus(const TwoFormField& F);

/// Anti-self-dual projection, in sigma-bar coordinates ((0,1)-(2,3), ...).
PlusFormField project_minus(const TwoFormField& F);

/// Embeds a plus-form back into a full (antisymmetric) 2-form; the adjoint of
/// project_plus under the field inner products.
TwoFormField embed_plus(const PlusFormField& B);

/// Pointwise bracket of two 1-forms projected to the self-dual part:
/// the self-dual projection of {[c_mu, s_nu] - [c_nu, s_mu]}.  Symmetric in (c, s).
PlusFormField plus_bracket(const OneFormField& c, const OneFormField& s);

/// Adjoint of plus_bracket in either slot: pairs with a plus-form phi,
/// out_nu = sum_{mu != nu} [phi~_{mu nu}, s_mu] with phi~ = embed_plus(phi).
OneFormField plus_bracket_adjoint(const OneFormField& s, const PlusFormField& phi);

/// d_A^+ a: covariant exterior derivative projected to the self-dual part.
PlusFormField d_a_plus(const ConnectionField& A, const OneFormField& a);

/// Exact adjoint of d_a_plus; the discrete d_A^* on plus-forms.
OneFormField d_a_star_plus(const ConnectionField& A, const PlusFormField& B);

/// Full curvature F_{mu nu} = D_mu A_nu - D_nu A_mu + [A_mu, A_nu].
TwoFormField curvature(const ConnectionField& A);

/// Second-order-accurate curvature: the average of the four plaquette
/// estimates around each site, each built from forward differences and the
/// bracket of midpoint-averaged legs.  Used by the topological-charge
/// estimate, where O(h^2) consistency matters and exact adjointness does not.
TwoFormField curvature_clover(const ConnectionField& A);

/// Self-dual part of the curvature.
PlusFormField f_plus(const ConnectionField& A);

/// d^{0,*}_{(A,B)}(a,b) = d_A^* a + [b . B]: the adjoint of the infinitesimal
/// gauge action; its kernel is the Coulomb slice.
ScalarLieField d0_star(const ConnectionField& A, const PlusFormField& B,
                       const OneFormField& a, const PlusFormField& b);

/// Linear Coulomb projection at A0 = 0: returns a - d phi where phi solves the
/// discrete Poisson equation d^* d phi = d^* a (mean-zero phi).  Throws if the
/// conjugate-gradient Poisson solve does not reach tol.
OneFormField coulomb_project(const OneFormField& a, double tol = 1e-12, int max_iters = 10000);

/// Finite gauge transformation by a per-site rotation field acting on the Lie
/// index: B -> R^T B, A_mu -> R^T A_mu plus the discrete Maurer-Cartan term
/// log(R(x)^T R(x+mu))/(2h).  R must be special orthogonal at every site
/// (tolerance 1e-8).
std::pair<ConnectionField, PlusFormField>
gauge_transform_finite(const RotationField& R, const ConnectionField& A, const PlusFormField& B);

/// Characteristic-number estimate (1/8 pi^2) h^4 sum tr(F ^ F), with the trace
/// normalization tr(xi eta) = -2 <xi, eta> and each complementary wedge pair
/// counted once, so that 8 pi^2 chern_weil(A) = |F^-|^2 - |F^+|^2 exactly for
/// the same discrete F (= curvature_clover(A)).
double chern_weil(const ConnectionField& A);

}  // namespace vrvw
