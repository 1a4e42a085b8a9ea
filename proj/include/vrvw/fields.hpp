#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "vrvw/form_algebra.hpp"

namespace vrvw {

/// Uniform periodic grid on the flat 4-torus: n sites per dimension, spacing h.
/// Sites are indexed lexicographically with x1 fastest and x4 slowest.
struct TorusGrid {
  int n = 2;
  double h = 1.0;

  int sites() const { return n * n * n * n; }
  double cell_volume() const { return h * h * h * h; }
  double volume() const
  {
    const double side = n * h;
    return side * side * side * side;
  }

  int stride(int mu) const
  {
    int s = 1;
    for (int i = 0; i < mu; ++i)
      s *= n;
    return s;
  }

  int coordinate(int site, int mu) const { return (site / stride(mu)) % n; }

  int forward(int site, int mu) const
  {
    const int s = stride(mu);
    return coordinate(site, mu) == n - 1 ? site - (n - 1) * s : site + s;
  }

  int backward(int site, int mu) const
  {
    const int s = stride(mu);
    return coordinate(site, mu) == 0 ? site + (n - 1) * s : site - s;
  }

  int site_of(int x1, int x2, int x3, int x4) const
  {
    return x1 + n * (x2 + n * (x3 + n * x4));
  }

  friend bool operator==(const TorusGrid& a, const TorusGrid& b)
  {
    return a.n == b.n && a.h == b.h;
  }
};

inline void require_valid(const TorusGrid& g)
{
  if (g.n < 2)
    throw std::invalid_argument("grid: n must be >= 2");
  if (!(g.h > 0.0))
    throw std::invalid_argument("grid: h must be > 0");
}

// Field kinds: number of doubles per site and the pointwise inner-product
// weight (2 for plus-forms since |sigma^j|^2 = 2, 1 otherwise).
struct ScalarLieKind   { static constexpr int components = 3;  static constexpr double weight = 1.0; };
struct OneFormKind     { static constexpr int components = 12; static constexpr double weight = 1.0; };
struct PlusFormKind    { static constexpr int components = 9;  static constexpr double weight = 2.0; };
struct TwoFormKind     { static constexpr int components = 18; static constexpr double weight = 1.0; };
struct RotationKind    { static constexpr int components = 9;  static constexpr double weight = 1.0; };

/// Lattice field with Kind::components doubles per site, stored one column per
/// site so a site's components are contiguous in the on-disk component order.
template <class Kind>
struct LatticeField {
  static constexpr int K = Kind::components;

  TorusGrid grid;
  Eigen::Matrix<double, K, Eigen::Dynamic> data;

  LatticeField() = default;
  explicit LatticeField(const TorusGrid& g)
    : grid(g), data(Eigen::Matrix<double, K, Eigen::Dynamic>::Zero(K, g.sites()))
  {}

  static LatticeField Zero(const TorusGrid& g) { return LatticeField(g); }

  int sites() const { return grid.sites(); }
};

/// Lie-algebra-valued 0-form: component order per site is (a).
using ScalarLieField = LatticeField<ScalarLieKind>;

/// Lie-algebra-valued 1-form: component order per site is (3*mu + a).
using OneFormField = LatticeField<OneFormKind>;

/// A connection is represented by its 1-form part on the trivial bundle.
using ConnectionField = OneFormField;

/// Self-dual-2-form field of GaugedForm values: component order (3*a + j).
using PlusFormField = LatticeField<PlusFormKind>;

/// Full 2-form field; the six (mu,nu) slots are ordered
/// (0,1),(0,2),(0,3),(1,2),(1,3),(2,3), component order (3*slot + a).
using TwoFormField = LatticeField<TwoFormKind>;

/// Per-site 3x3 matrix field (row-major), used for finite gauge rotations.
using RotationField = LatticeField<RotationKind>;

// --- site views ------------------------------------------------------------

inline Eigen::Map<LieVector> lie_at(ScalarLieField& f, int s)
{
  return Eigen::Map<LieVector>(f.data.col(s).data());
}
inline Eigen::Map<const LieVector> lie_at(const ScalarLieField& f, int s)
{
  return Eigen::Map<const LieVector>(f.data.col(s).data());
}

inline Eigen::Map<LieVector> dir_at(OneFormField& f, int s, int mu)
{
  return Eigen::Map<LieVector>(f.data.col(s).data() + 3 * mu);
}
inline Eigen::Map<const LieVector> dir_at(const OneFormField& f, int s, int mu)
{
  return Eigen::Map<const LieVector>(f.data.col(s).data() + 3 * mu);
}

using RowMajor3 = Eigen::Matrix<double, 3, 3, Eigen::RowMajor>;

inline Eigen::Map<RowMajor3> form_at(PlusFormField& f, int s)
{
  return Eigen::Map<RowMajor3>(f.data.col(s).data());
}
inline Eigen::Map<const RowMajor3> form_at(const PlusFormField& f, int s)
{
  return Eigen::Map<const RowMajor3>(f.data.col(s).data());
}

inline Eigen::Map<RowMajor3> rot_at(RotationField& f, int s)
{
  return Eigen::Map<RowMajor3>(f.data.col(s).data());
}
inline Eigen::Map<const RowMajor3> rot_at(const RotationField& f, int s)
{
  return Eigen::Map<const RowMajor3>(f.data.col(s).data());
}

inline Eigen::Map<LieVector> slot_at(TwoFormField& f, int s, int slot)
{
  return Eigen::Map<LieVector>(f.data.col(s).data() + 3 * slot);
}
inline Eigen::Map<const LieVector> slot_at(const TwoFormField& f, int s, int slot)
{
  return Eigen::Map<const LieVector>(f.data.col(s).data() + 3 * slot);
}

// --- inner products and norms ----------------------------------------------

template <class Kind>
inline void require_same_grid(const LatticeField<Kind>& f, const LatticeField<Kind>& g)
{
  if (!(f.grid == g.grid))
    throw std::invalid_argument("lattice fields live on different grids");
}

/// Discrete L^2 inner product: h^4-weighted sum of pointwise inner products.
template <class Kind>
inline double l2_inner(const LatticeField<Kind>& f, const LatticeField<Kind>& g)
{
  require_same_grid(f, g);
  return Kind::weight * f.grid.cell_volume() * f.data.cwiseProduct(g.data).sum();
}

template <class Kind>
inline double l2_norm(const LatticeField<Kind>& f)
{
  return std::sqrt(l2_inner(f, f));
}

/// Max over sites of the pointwise norm.
template <class Kind>
inline double linf_norm(const LatticeField<Kind>& f)
{
  if (f.data.cols() == 0)
    return 0.0;
  return std::sqrt(Kind::weight * f.data.colwise().squaredNorm().maxCoeff());
}

}  // namespace vrvw
