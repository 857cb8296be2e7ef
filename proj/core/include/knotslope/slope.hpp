#pragma once

// The slope of a representation: twisted Alexander matrix of the presentation
// augmented by the longitude, intersected with the boundary classes v (x) dl
// and v (x) dm.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "knotslope/numeric_linear.hpp"
#include "knotslope/presentation.hpp"
#include "knotslope/representation.hpp"

namespace knotslope {

/// Generators (l, m, others...) with relators: base relators rewritten, then
/// l * longitude^-1, then m l m^-1 l^-1. When the meridian word is not a
/// single generator, m is a fresh generator and m * meridian^-1 is inserted
/// before the longitude relator.
struct AugmentedPresentation {
  std::shared_ptr<const KnotPresentation> base;
  std::vector<std::string> generator_names;
  std::vector<Word> relators;
  /// base generator index -> augmented index
  std::vector<int> base_to_augmented;
  bool fresh_meridian = false;

  static constexpr int kLongitude = 0;
  static constexpr int kMeridian = 1;

  int num_generators() const { return static_cast<int>(generator_names.size()); }
  int num_relators() const { return static_cast<int>(relators.size()); }
};

/// Throws Error(kInvalidPresentation) for an empty longitude.
AugmentedPresentation augment(std::shared_ptr<const KnotPresentation> pres);

/// Images of the augmented generators under rep: rho(longitude), rho(meridian), ...
std::vector<SL2> augmented_images(const AugmentedPresentation& aug,
                                  const Representation& rep);

struct TwistedAlexanderMatrix {
  int num_relators = 0;    ///< q
  int num_generators = 0;  ///< p
  /// 3q x 3p; block (i, j) is Ad(rho)(d r_i / d x_j). Columns 0-2 are dl,
  /// columns 3-5 are dm.
  CMatrix matrix;

  Matrix3c block(int relator, int generator) const {
    return matrix.block<3, 3>(3 * relator, 3 * generator);
  }
};

TwistedAlexanderMatrix build_twisted_alexander(const AugmentedPresentation& aug,
                                               const Representation& rep);

struct SlopeOptions {
  double rank_tol = kDefaultRankTol;
  /// |a| <= infinity_tol (after max(|a|,|b|) = 1) reads as infinity.
  double infinity_tol = 1e-10;
  /// Relative residual of the least-squares (a, b) recovery.
  double coordinate_tol = 1e-7;
  double parabolic_tol = kDefaultEigTol;
};

/// Projective pair (a : b) with max(|a|, |b|) = 1; reading -b/a.
struct SlopeValue {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};
  bool infinite = false;
  double coordinate_residual = 0.0;

  /// -b/a, or nullopt for infinity.
  std::optional<Complex> reading() const {
    if (infinite) return std::nullopt;
    return -b / a;
  }

  static SlopeValue from_reading(Complex s);
};

/// Throws Error(kBoundaryParabolic) on boundary-parabolic input,
/// Error(kNotAdmissible) when W and the row space meet trivially and
/// Error(kDegenerate) when they meet in dimension 2 or v is not unique.
SlopeValue compute_slope(const Representation& rep, const SlopeOptions& options = {});

/// Same, reusing a prebuilt augmentation and a caller-supplied invariant vector.
SlopeValue compute_slope(const AugmentedPresentation& aug, const Representation& rep,
                         const RowVector3c& v, const SlopeOptions& options = {});

/// The modulus tau for boundary-parabolic reps, compute_slope otherwise.
/// Throws Error(kDegenerate) if rho(m) = +-I.
SlopeValue slope_of_character(const Representation& rep,
                              const SlopeOptions& options = {});

enum class Verdict { kAdmissible, kParabolicPath, kDegenerate };
const char* to_string(Verdict v) noexcept;

struct AdmissibilityReport {
  int dim_intersection = -1;
  /// dim(R + W) - dim R: rank of the boundary classes modulo the row space.
  int boundary_rank = -1;
  int alexander_rank = -1;
  double invariant_residual = 0.0;
  double commutator_residual = 0.0;
  bool parabolic = false;
  Verdict verdict = Verdict::kDegenerate;
  std::string detail;
};

/// Diagnostic; never throws on mathematical degeneracy.
AdmissibilityReport admissibility(const Representation& rep,
                                  const SlopeOptions& options = {});

}  // namespace knotslope
