#include "knotslope/numeric_linear.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "knotslope/error.hpp"

namespace knotslope {

double max_abs(const CMatrix& a) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

SL2::SL2(const Matrix2c& m, double det_tol) : m_(m) {
  if (!m.allFinite())
    throw Error(ErrorCode::kInvariantViolation, "SL2 entry is not finite");
  const double err = std::abs(m.determinant() - 1.0);
  if (err > det_tol)
    throw Error(ErrorCode::kInvariantViolation,
                "matrix is not in SL2: |det - 1| = " + std::to_string(err));
}

SL2 SL2::unchecked(const Matrix2c& m) { return SL2(m, NoCheck{}); }

SL2 SL2::inverse() const {
  Matrix2c inv;
  inv << m_(1, 1), -m_(0, 1), -m_(1, 0), m_(0, 0);
  return unchecked(inv);
}

Ad3::Ad3(const Matrix3c& m, double det_tol) : m_(m) {
  if (!m.allFinite())
    throw Error(ErrorCode::kInvariantViolation, "Ad3 entry is not finite");
  const double err = std::abs(m.determinant() - 1.0);
  if (err > det_tol * std::max(1.0, m.cwiseAbs().maxCoeff()))
    throw Error(ErrorCode::kInvariantViolation,
                "adjoint matrix determinant deviates from 1 by " +
                    std::to_string(err));
}

Ad3 Ad3::unchecked(const Matrix3c& m) { return Ad3(m, NoCheck{}); }

RowVector3c sl2_coordinates(const Matrix2c& x) {
  return RowVector3c(x(0, 1), x(0, 0), x(1, 0));
}

Matrix2c sl2_from_coordinates(const RowVector3c& v) {
  Matrix2c x;
  x << v(1), v(0), v(2), -v(1);
  return x;
}

// Closed form of the conjugation action for A = [[a,b],[c,d]], ad - bc = 1.
Ad3 adjoint_of(const SL2& g) {
  const Complex a = g(0, 0);
  const Complex b = g(0, 1);
  const Complex c = g(1, 0);
  const Complex d = g(1, 1);
  Matrix3c m;
  // A E A^-1, A H A^-1, A F A^-1 as columns.
  m << a * a, -2.0 * a * b, -b * b,
       -a * c, a * d + b * c, b * d,
       -c * c, 2.0 * c * d, d * d;
  return Ad3::unchecked(m);
}

Matrix3c killing_gram() {
  Matrix3c g = Matrix3c::Zero();
  g(0, 2) = 4.0;
  g(1, 1) = 8.0;
  g(2, 0) = 4.0;
  return g;
}

namespace {

int rank_from_singular_values(const Eigen::VectorXd& s, double tol) {
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++r;
  return r;
}

}  // namespace

int rank_with_tol(const CMatrix& a, double tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  return rank_from_singular_values(svd.singularValues(), tol);
}

CMatrix nullspace(const CMatrix& a, double tol) {
  const Eigen::Index n = a.cols();
  if (a.rows() == 0) return CMatrix::Identity(n, n);
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullV);
  const int r = rank_from_singular_values(svd.singularValues(), tol);
  const CMatrix& v = svd.matrixV();
  return v.rightCols(n - r).transpose();
}

CMatrix row_space_basis(const CMatrix& a, double tol) {
  if (a.rows() == 0) return CMatrix(0, a.cols());
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullV);
  const int r = rank_from_singular_values(svd.singularValues(), tol);
  // a = U S V^*, so {x a} is spanned by the first r rows of V^*.
  return svd.matrixV().leftCols(r).adjoint();
}

CMatrix subspace_intersection(const CMatrix& u, const CMatrix& w, double tol) {
  if (u.cols() != w.cols())
    throw Error(ErrorCode::kUsage, "subspace_intersection: ambient dimensions differ");
  const CMatrix ub = row_space_basis(u, tol);
  const CMatrix wb = row_space_basis(w, tol);
  const Eigen::Index n = u.cols();
  if (ub.rows() == 0 || wb.rows() == 0) return CMatrix(0, n);

  CMatrix stacked(ub.rows() + wb.rows(), n);
  stacked << ub, wb;
  // x * stacked = 0  <=>  stacked^T * x^T = 0
  const CMatrix coeffs = nullspace(stacked.transpose(), tol);
  if (coeffs.rows() == 0) return CMatrix(0, n);
  const CMatrix vectors = coeffs.leftCols(ub.rows()) * ub;
  return row_space_basis(vectors, tol);
}

int subspace_sum_dimension(const CMatrix& u, const CMatrix& w, double tol) {
  const CMatrix ub = row_space_basis(u, tol);
  const CMatrix wb = row_space_basis(w, tol);
  CMatrix stacked(ub.rows() + wb.rows(), u.cols());
  stacked << ub, wb;
  return rank_with_tol(stacked, tol);
}

}  // namespace knotslope
