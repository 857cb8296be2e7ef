#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "knotslope/error.hpp"
#include "knotslope/reference.hpp"
#include "knotslope/representation.hpp"
#include "knotslope/slope.hpp"
#include "support.hpp"

using namespace knotslope;
using knotslope::testing::C;
using knotslope::testing::random_sl2;
using knotslope::testing::relative_error;

namespace {

C reading(const Representation& rep) {
  const auto s = compute_slope(rep).reading();
  EXPECT_TRUE(s.has_value());
  return s.value_or(C(0.0));
}

C figure_eight_slope_squared(C m) {
  const C x = m + 1.0 / m;
  const C x2 = x * x;
  return 4.0 * (2.0 * x2 - 5.0) * (2.0 * x2 - 5.0) / ((x2 - 5.0) * (x2 - 1.0));
}

// In terms of x = tr u and y = tr uv on the curve; defined up to sign.
C figure_eight_slope_xy(C x, C y) {
  return 2.0 * (2.0 * x * x - 5.0) * (y - 2.0) / ((y - 1.0) * (y - 3.0));
}

}  // namespace

TEST(Augment, ShapeAndOrder) {
  for (const auto& p : {trefoil(), figure_eight()}) {
    const AugmentedPresentation aug = augment(p);
    EXPECT_EQ(aug.num_generators(), 3);
    EXPECT_EQ(aug.num_relators(), 3);
    EXPECT_EQ(aug.generator_names[0], "l");
    EXPECT_EQ(aug.generator_names[1], "u");
    EXPECT_EQ(aug.generator_names[2], "v");
    EXPECT_FALSE(aug.fresh_meridian);
  }
}

TEST(Augment, FreshMeridianGenerator) {
  auto p = std::make_shared<const KnotPresentation>(parse_presentation(
      "gens: l m; rel: l m l = m l m; meridian: l^-1 m l; longitude: m l m^-1 l m l^-3"));
  const AugmentedPresentation aug = augment(p);
  EXPECT_TRUE(aug.fresh_meridian);
  EXPECT_EQ(aug.num_generators(), 4);
  EXPECT_EQ(aug.num_relators(), 4);
  EXPECT_EQ(aug.generator_names[0], "l'");
  EXPECT_EQ(aug.generator_names[1], "m'");
}

TEST(TwistedAlexander, FoxBlocksAtTrefoil) {
  const auto roots = riley_family(trefoil(), C(2.0));
  const Representation& rep = roots[0].rep;
  const AugmentedPresentation aug = augment(trefoil());
  const TwistedAlexanderMatrix tam = build_twisted_alexander(aug, rep);
  ASSERT_EQ(tam.matrix.rows(), 9);
  ASSERT_EQ(tam.matrix.cols(), 9);
  // longitude relator l w^-1: d/dl = 1
  EXPECT_LT((tam.block(1, 0) - Matrix3c::Identity()).cwiseAbs().maxCoeff(), 1e-14);
  // commutator m l m^-1 l^-1: d/dm = 1 - m l m^-1, d/dl = m - m l m^-1 l^-1
  const SL2 m = rep.meridian_image();
  const SL2 l = rep.longitude_image();
  const Matrix3c expected_m = Matrix3c::Identity() - adjoint_of(m * l * m.inverse()).matrix();
  EXPECT_LT((tam.block(2, 1) - expected_m).cwiseAbs().maxCoeff(), 1e-8);
  const Matrix3c expected_l =
      adjoint_of(m).matrix() - adjoint_of(m * l * m.inverse() * l.inverse()).matrix();
  EXPECT_LT((tam.block(2, 0) - expected_l).cwiseAbs().maxCoeff(), 1e-8);
  // base relator does not involve l
  EXPECT_LT(tam.block(0, 0).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(TwistedAlexander, RowsKillTheFoxIdentity) {
  // sum_j (d r/d x_j)(x_j - 1) = r - 1 = 0 under rho: the block row times
  // the column of Ad(x_j) - I vanishes.
  const auto roots = riley_family(figure_eight(), C(1.3, 0.5));
  const Representation& rep = roots[0].rep;
  const AugmentedPresentation aug = augment(figure_eight());
  const TwistedAlexanderMatrix tam = build_twisted_alexander(aug, rep);
  const std::vector<SL2> images = augmented_images(aug, rep);
  for (int i = 0; i < tam.num_relators; ++i) {
    Matrix3c acc = Matrix3c::Zero();
    for (int j = 0; j < tam.num_generators; ++j)
      acc += tam.block(i, j) * (adjoint_of(images[static_cast<std::size_t>(j)]).matrix() -
                                Matrix3c::Identity());
    EXPECT_LT(acc.cwiseAbs().maxCoeff(), 1e-8 * std::max(1.0, tam.matrix.cwiseAbs().maxCoeff()));
  }
}

TEST(Slope, TrefoilIsMinusSixAtEverySample) {
  for (const C m : {C(2.0), C(3.0), C(1.0, 1.0), std::polar(1.0, 0.7), std::polar(1.7, 2.1)}) {
    const auto roots = riley_family(trefoil(), m);
    ASSERT_EQ(roots.size(), 1U);
    EXPECT_LT(std::abs(reading(roots[0].rep) - C(-6.0)), 1e-8) << m;
  }
}

TEST(Slope, AbelianRepresentationsVanish) {
  for (const C lambda : {C(2.0), C(3.0), C(1.0, 1.0)})
    for (const auto& p : {trefoil(), figure_eight()})
      EXPECT_LT(std::abs(reading(abelian_rep(p, lambda))), 1e-10);
}

TEST(Slope, FigureEightMatchesSquaredFormulaAndTraceFormula) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> r(1.1, 2.0);
  std::uniform_real_distribution<double> th(0.1, 1.0);
  for (int k = 0; k < 20; ++k) {
    const C m = std::polar(r(rng), th(rng));
    for (const auto& root : riley_family(figure_eight(), m)) {
      const C s = reading(root.rep);
      EXPECT_LT(relative_error(s * s, figure_eight_slope_squared(m)), 1e-6);
      const C x = root.rep.image(0).trace();
      const C y = (root.rep.image(0) * root.rep.image(1)).trace();
      // Recorded sign: + for this presentation and orientation.
      EXPECT_LT(relative_error(s, figure_eight_slope_xy(x, y)), 1e-6);
    }
  }
}

TEST(Slope, ConjugationInvariance) {
  std::mt19937_64 rng(32);
  for (const auto& p : {trefoil(), figure_eight()})
    for (const auto& root : riley_family(p, C(1.4, 0.6))) {
      const C s = reading(root.rep);
      for (int k = 0; k < 10; ++k) {
        const Matrix2c q = random_sl2(rng, 5.0).matrix();
        EXPECT_LT(std::abs(reading(conjugate_rep(root.rep, q)) - s), 1e-7);
      }
    }
}

TEST(Slope, NormalizationInvariance) {
  const auto roots = riley_family(figure_eight(), C(1.6, 0.3));
  const AugmentedPresentation aug = augment(figure_eight());
  for (const auto& root : roots) {
    const RowVector3c v = invariant_vector(root.rep).v;
    const C s = *compute_slope(aug, root.rep, v).reading();
    for (const C c : {C(1e-3), C(0.0, 7.0), C(-2.0, 5.0), C(1e4)})
      EXPECT_LT(std::abs(*compute_slope(aug, root.rep, RowVector3c(c * v)).reading() - s), 1e-10);
  }
}

TEST(Slope, SigmaInvariance) {
  // Conjugating by the Weyl element swaps the eigenlines, realizing (1/L, 1/M).
  Matrix2c w;
  w << 0.0, 1.0, -1.0, 0.0;
  for (const auto& p : {trefoil(), figure_eight()})
    for (const auto& root : riley_family(p, C(1.5, 0.5))) {
      const Representation swapped = conjugate_rep(root.rep, w);
      const BoundaryData a = boundary_data(root.rep);
      const BoundaryData b = boundary_data(swapped, 1e-8, EigenBranch::kSwapped);
      EXPECT_LT(std::abs(a.meridian_eigenvalue * b.meridian_eigenvalue - 1.0), 1e-10);
      EXPECT_LT(std::abs(reading(swapped) - reading(root.rep)), 1e-7);
    }
}

TEST(Slope, RealAtUnitaryFigureEightRoots) {
  int checked = 0;
  for (const double theta : {1.2, 1.4, M_PI / 2.0, 1.8, 1.95}) {
    for (const auto& root : riley_family(figure_eight(), std::polar(1.0, theta))) {
      if (!su2_conjugator(root.rep)) continue;
      ++checked;
      EXPECT_LT(std::abs(reading(root.rep).imag()), 1e-7) << theta;
    }
  }
  EXPECT_GE(checked, 5);
}

TEST(Slope, ConstantOnTheTrefoilComponent) {
  std::vector<C> values;
  for (int k = 0; k < 25; ++k) {
    const C m = std::polar(1.1 + 0.9 * k / 24.0, 0.1 + 0.9 * k / 24.0);
    values.push_back(reading(riley_family(trefoil(), m)[0].rep));
  }
  double var = 0.0;
  for (const C& s : values) var += std::norm(s + 6.0);
  var /= static_cast<double>(values.size());
  EXPECT_LE(var, 1e-14);
}

TEST(Slope, ParabolicInputIsRejected) {
  const auto roots = riley_family(trefoil(), C(1.0));
  try {
    compute_slope(roots[0].rep);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBoundaryParabolic);
  }
  EXPECT_LT(std::abs(*slope_of_character(roots[0].rep).reading() - C(-6.0)), 1e-9);
}

TEST(Slope, CharacterSlopeDelegatesAwayFromParabolic) {
  const auto roots = riley_family(trefoil(), C(2.0));
  EXPECT_LT(std::abs(*slope_of_character(roots[0].rep).reading() - C(-6.0)), 1e-8);
}

TEST(Slope, FigureEightParabolicLimit) {
  const auto at_one = riley_family(figure_eight(), C(1.0));
  ASSERT_EQ(at_one.size(), 2U);
  for (const auto& root : at_one) {
    ASSERT_TRUE(is_boundary_parabolic(root.rep));
    const C tau = *slope_of_character(root.rep).reading();
    // the branch through this root at M = 1 + 1e-3
    const auto near = riley_family(figure_eight(), C(1.001));
    const auto it = std::min_element(near.begin(), near.end(), [&](const auto& a, const auto& b) {
      return std::abs(a.t - root.t) < std::abs(b.t - root.t);
    });
    EXPECT_LT(std::abs(tau - reading(it->rep)), 1e-2);
    EXPECT_NEAR(std::abs(tau), std::sqrt(12.0), 1e-8);
  }
}

TEST(Slope, ValueHelpers) {
  const SlopeValue a = SlopeValue::from_reading(C(-6.0));
  EXPECT_LT(std::abs(*a.reading() + 6.0), 1e-15);
  EXPECT_NEAR(std::max(std::abs(a.a), std::abs(a.b)), 1.0, 1e-15);
  const SlopeValue b = SlopeValue::from_reading(C(0.25));
  EXPECT_LT(std::abs(*b.reading() - 0.25), 1e-15);
}

TEST(Admissibility, Verdicts) {
  const auto generic = riley_family(trefoil(), C(1.5, 0.5));
  const AdmissibilityReport ok = admissibility(generic[0].rep);
  EXPECT_EQ(ok.verdict, Verdict::kAdmissible);
  EXPECT_EQ(ok.dim_intersection, 1);
  EXPECT_EQ(ok.boundary_rank, 1);
  EXPECT_FALSE(ok.parabolic);

  const auto parabolic = riley_family(trefoil(), C(1.0));
  EXPECT_EQ(admissibility(parabolic[0].rep).verdict, Verdict::kParabolicPath);

  // Meridian mapped to -I: the representation u, v -> -I of the trefoil group.
  std::vector<SL2> minus(2, SL2(Matrix2c(-Matrix2c::Identity())));
  const Representation trivial(trefoil(), minus);
  const AdmissibilityReport bad = admissibility(trivial);
  EXPECT_EQ(bad.verdict, Verdict::kDegenerate);
  EXPECT_STREQ(to_string(bad.verdict), "degenerate");
}
