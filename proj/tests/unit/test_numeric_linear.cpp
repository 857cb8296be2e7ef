#include <gtest/gtest.h>

#include <random>

#include "knotslope/error.hpp"
#include "knotslope/numeric_linear.hpp"
#include "support.hpp"

using namespace knotslope;
using knotslope::testing::C;
using knotslope::testing::random_complex;
using knotslope::testing::random_sl2;

namespace {

// Independent of the closed form: conjugate each basis matrix directly.
Matrix3c adjoint_by_conjugation(const SL2& a) {
  Matrix3c out;
  for (int k = 0; k < 3; ++k) {
    RowVector3c e = RowVector3c::Zero();
    e(k) = 1.0;
    const Matrix2c x = a.matrix() * sl2_from_coordinates(e) * a.inverse().matrix();
    out.col(k) = sl2_coordinates(x).transpose();
  }
  return out;
}

double killing(const RowVector3c& x, const RowVector3c& y) {
  return std::abs((x * killing_gram() * y.transpose())(0));
}

}  // namespace

TEST(SL2, DeterminantIsChecked) {
  Matrix2c m;
  m << 2.0, 0.0, 0.0, 2.0;
  EXPECT_THROW(SL2{m}, Error);
  m << 2.0, 1.0, 3.0, 2.0;
  EXPECT_NO_THROW(SL2{m});
  const SL2 g(m);
  EXPECT_LT(max_abs((g * g.inverse()).matrix() - Matrix2c::Identity()), 1e-15);
}

TEST(Adjoint, MatchesDirectConjugation) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 200; ++k) {
    const SL2 a = random_sl2(rng);
    EXPECT_LT(max_abs(adjoint_of(a).matrix() - adjoint_by_conjugation(a)), 1e-11);
  }
}

TEST(Adjoint, DiagonalElement) {
  // Ad(diag(l, 1/l)) scales E by l^2 and F by l^-2.
  Matrix2c d = Matrix2c::Zero();
  d(0, 0) = 2.0;
  d(1, 1) = 0.5;
  const Matrix3c ad = adjoint_of(SL2(d)).matrix();
  EXPECT_NEAR(std::abs(ad(0, 0) - 4.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(ad(1, 1) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(ad(2, 2) - 0.25), 0.0, 1e-15);
}

TEST(Adjoint, HomomorphismAndKillingFormOnRandomPairs) {
  std::mt19937_64 rng(4);
  const Matrix3c g = killing_gram();
  for (int k = 0; k < 500; ++k) {
    const SL2 a = random_sl2(rng);
    const SL2 b = random_sl2(rng);
    const Matrix3c ab = adjoint_of(a * b).matrix();
    const Matrix3c prod = adjoint_of(a).matrix() * adjoint_of(b).matrix();
    ASSERT_LT(max_abs(ab - prod), 1e-9 * std::max(1.0, max_abs(ab)));
    const Matrix3c ad = adjoint_of(a).matrix();
    ASSERT_LT(max_abs(ad.transpose() * g * ad - g), 1e-9 * std::max(1.0, max_abs(ad) * max_abs(ad)));
  }
}

TEST(Killing, GramMatchesTraceForm) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    RowVector3c x;
    RowVector3c y;
    for (int i = 0; i < 3; ++i) {
      x(i) = random_complex(rng, 1.0);
      y(i) = random_complex(rng, 1.0);
    }
    const C trace = 4.0 * (sl2_from_coordinates(x) * sl2_from_coordinates(y)).trace();
    EXPECT_NEAR(killing(x, y), std::abs(trace), 1e-12);
  }
}

TEST(Rank, RespectsTolerance) {
  CMatrix a(3, 3);
  a << 1, 0, 0, 0, 1e-6, 0, 0, 0, 1e-12;
  EXPECT_EQ(rank_with_tol(a, 1e-8), 2);
  EXPECT_EQ(rank_with_tol(a, 1e-4), 1);
  EXPECT_EQ(rank_with_tol(CMatrix::Zero(2, 2)), 0);
}

TEST(Nullspace, AnnihilatesAndHasRightDimension) {
  std::mt19937_64 rng(6);
  CMatrix a = CMatrix::Zero(4, 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 6; ++j) a(i, j) = random_complex(rng, 1.0);
  a.row(2) = a.row(0) * C(2.0, 1.0) - a.row(1);
  const CMatrix n = nullspace(a);
  ASSERT_EQ(n.rows(), 4);
  EXPECT_LT(max_abs(a * n.transpose()), 1e-12);
  EXPECT_EQ(rank_with_tol(n), 4);
}

TEST(RowSpace, SpansTheRows) {
  CMatrix a(3, 3);
  a << 1, 2, 3, 2, 4, 6, 0, 1, 1;
  const CMatrix b = row_space_basis(a);
  ASSERT_EQ(b.rows(), 2);
  CMatrix stacked(5, 3);
  stacked << b, a;
  EXPECT_EQ(rank_with_tol(stacked), 2);
}

TEST(Intersection, OfKnownSubspaces) {
  // span{e0, e1} and span{e1 + e2, e2} meet in span{e1}.
  CMatrix u(2, 3);
  u << 1, 0, 0, 0, 1, 0;
  CMatrix w(2, 3);
  w << 0, 1, 1, 0, 0, 1;
  const CMatrix x = subspace_intersection(u, w);
  ASSERT_EQ(x.rows(), 1);
  EXPECT_NEAR(std::abs(x(0, 1)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(x(0, 0)) + std::abs(x(0, 2)), 0.0, 1e-12);
  EXPECT_EQ(subspace_sum_dimension(u, w), 3);

  CMatrix v(1, 3);
  v << 0, 0, 1;
  EXPECT_EQ(subspace_intersection(u, v).rows(), 0);
  EXPECT_EQ(subspace_intersection(u, u).rows(), 2);
}

TEST(Intersection, RandomSubspacesWithPlantedCommonLine) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    CRowVector common(6);
    for (int j = 0; j < 6; ++j) common(j) = random_complex(rng, 1.0);
    CMatrix u(3, 6);
    CMatrix w(2, 6);
    for (int j = 0; j < 6; ++j) {
      u(0, j) = random_complex(rng, 1.0);
      u(1, j) = random_complex(rng, 1.0);
      w(0, j) = random_complex(rng, 1.0);
    }
    u.row(2) = common + u.row(0);
    w.row(1) = common * C(0.0, 3.0);
    const CMatrix x = subspace_intersection(u, w);
    ASSERT_EQ(x.rows(), 1);
    // x is parallel to common
    CMatrix pair(2, 6);
    pair << x, common;
    EXPECT_EQ(rank_with_tol(pair, 1e-8), 1);
  }
}
