#pragma once

// Dense complex linear algebra with explicit rank tolerances, plus SL(2,C)
// and its adjoint action on sl(2,C).
//
// Vectors are rows and matrices act on the right. The sl(2,C) basis is
// fixed as (E, H, F) = ([[0,1],[0,0]], [[1,0],[0,-1]], [[0,0],[1,0]]).

#include <complex>

#include <Eigen/Dense>

namespace knotslope {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CRowVector = Eigen::RowVectorXcd;
using Matrix2c = Eigen::Matrix2cd;
using Matrix3c = Eigen::Matrix3cd;
using RowVector3c = Eigen::RowVector3cd;

inline constexpr double kDefaultRankTol = 1e-8;
inline constexpr double kDefaultDetTol = 1e-9;

/// Largest entry modulus.
double max_abs(const CMatrix& a);

/// An element of SL(2,C): |det - 1| <= det_tol at construction.
class SL2 {
 public:
  SL2() : m_(Matrix2c::Identity()) {}
  explicit SL2(const Matrix2c& m, double det_tol = kDefaultDetTol);

  /// Skips the determinant check. For products of already-checked elements.
  static SL2 unchecked(const Matrix2c& m);
  static SL2 identity() { return SL2(); }

  const Matrix2c& matrix() const { return m_; }
  Complex operator()(int r, int c) const { return m_(r, c); }
  Complex trace() const { return m_.trace(); }

  /// Exact adjugate inverse (valid because det = 1).
  SL2 inverse() const;
  SL2 operator*(const SL2& rhs) const { return unchecked(m_ * rhs.m_); }

 private:
  struct NoCheck {};
  SL2(const Matrix2c& m, NoCheck) : m_(m) {}
  Matrix2c m_;
};

/// A 3x3 automorphism of sl(2,C) in the (E, H, F) basis.
class Ad3 {
 public:
  Ad3() : m_(Matrix3c::Identity()) {}
  explicit Ad3(const Matrix3c& m, double det_tol = kDefaultDetTol);

  static Ad3 unchecked(const Matrix3c& m);

  const Matrix3c& matrix() const { return m_; }
  Ad3 operator*(const Ad3& rhs) const { return unchecked(m_ * rhs.m_); }

 private:
  struct NoCheck {};
  Ad3(const Matrix3c& m, NoCheck) : m_(m) {}
  Matrix3c m_;
};

/// Matrix of X -> A X A^-1 in the basis (E, H, F); column k holds the
/// coordinates of A B_k A^-1. The map A -> adjoint_of(A) is a homomorphism,
/// and a coordinate row vector v is acted on as v * adjoint_of(A).
Ad3 adjoint_of(const SL2& a);

/// Coordinates of a traceless 2x2 matrix in (E, H, F).
RowVector3c sl2_coordinates(const Matrix2c& x);
Matrix2c sl2_from_coordinates(const RowVector3c& v);

/// Gram matrix of K(X, Y) = 4 tr(XY) in (E, H, F): [[0,0,4],[0,8,0],[4,0,0]].
Matrix3c killing_gram();

/// Number of singular values above tol * sigma_max; 0 for the zero matrix.
int rank_with_tol(const CMatrix& a, double tol = kDefaultRankTol);

/// Orthonormal rows z with a * z^T = 0; cols - rank_with_tol(a, tol) rows.
CMatrix nullspace(const CMatrix& a, double tol = kDefaultRankTol);

/// Orthonormal rows spanning the row space {x * a}.
CMatrix row_space_basis(const CMatrix& a, double tol = kDefaultRankTol);

/// Orthonormal rows spanning the intersection of the row spaces of u and w.
/// Solved as the left nullspace of the stacked system [U; W].
CMatrix subspace_intersection(const CMatrix& u, const CMatrix& w,
                              double tol = kDefaultRankTol);

/// Dimension of the sum of the two row spaces.
int subspace_sum_dimension(const CMatrix& u, const CMatrix& w,
                           double tol = kDefaultRankTol);

}  // namespace knotslope
